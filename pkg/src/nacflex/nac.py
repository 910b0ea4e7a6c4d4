"""Decide, enumerate, count and classify NAC-colourings.

A NAC-colouring is a surjective red/blue edge colouring in which no cycle
carries exactly one red or exactly one blue edge.  The checker uses the
derived characterisation: a cycle with exactly one red edge exists precisely
when some red edge has its endpoints joined by an all-blue path, i.e. lies
inside a blue monochromatic component (and symmetrically).  The literal
cycle-enumeration semantics are kept alongside as a test oracle.

Enumeration and existence search work on the quotient by triangle classes
(edges sharing a triangle are monochromatic in every NAC-colouring), with
incremental union-find pruning and red/blue swap symmetry broken by fixing
the first class red.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import cached_property, lru_cache
from pathlib import Path

from .errors import BudgetExceeded, CycleSpaceTooLarge, PreconditionError
from .graphs import (
    ComponentLabelling,
    Graph,
    as_vertex_set,
    bipartition,
    graph_from_json_dict,
    graph_to_json_dict,
    is_stable,
    labelling_from_unionfind,
)
from .twosat import TwoSat
from .unionfind import RollbackUnionFind, UnionFind

__all__ = [
    "Colour",
    "EdgeColouring",
    "NacVerdict",
    "TriangleClasses",
    "NacEnumeration",
    "StableWitness",
    "CoverStats",
    "monochromatic_components",
    "nac_check",
    "is_nac_colouring",
    "nac_check_oracle",
    "simple_cycle_edge_masks",
    "triangle_classes",
    "nac_exists",
    "nac_enumerate",
    "nac_count",
    "stable_witnesses",
    "bipartite_stable_nac",
    "monochromatic_cover_stats",
    "DEFAULT_NODE_BUDGET",
    "MAX_ENUM_CLASSES",
]

DEFAULT_NODE_BUDGET = 2_000_000
MAX_ENUM_CLASSES = 26


class Colour(str, Enum):
    RED = "red"
    BLUE = "blue"

    @property
    def other(self) -> "Colour":
        return Colour.BLUE if self is Colour.RED else Colour.RED


@dataclass(frozen=True)
class EdgeColouring:
    """Total red/blue assignment over a graph's edge indices."""

    graph: Graph
    colours: tuple[Colour, ...]

    def __post_init__(self) -> None:
        if len(self.colours) != self.graph.m:
            raise ValueError(
                f"colouring has {len(self.colours)} entries for {self.graph.m} edges"
            )

    @classmethod
    def from_red_edges(cls, g: Graph, red: list[tuple[int, int]] | set) -> "EdgeColouring":
        red_ids = set()
        for u, v in red:
            if not g.has_edge(u, v):
                raise ValueError(f"({u}, {v}) is not an edge of the graph")
            red_ids.add(g.index_of(u, v))
        cols = tuple(
            Colour.RED if i in red_ids else Colour.BLUE for i in range(g.m)
        )
        return cls(g, cols)

    @cached_property
    def red_mask(self) -> int:
        mask = 0
        for i, col in enumerate(self.colours):
            if col is Colour.RED:
                mask |= 1 << i
        return mask

    def edges_of(self, colour: Colour) -> tuple[tuple[int, int], ...]:
        return tuple(
            e for e, col in zip(self.graph.edges, self.colours) if col is colour
        )

    def colour_of(self, u: int, v: int) -> Colour:
        return self.colours[self.graph.index_of(u, v)]

    def is_surjective(self) -> bool:
        return 0 < self.red_mask < (1 << self.graph.m) - 1 if self.graph.m else False

    def swapped(self) -> "EdgeColouring":
        return EdgeColouring(self.graph, tuple(c.other for c in self.colours))

    def to_json_dict(self) -> dict:
        return {
            "graph": graph_to_json_dict(self.graph),
            "red": [[u, v] for u, v in self.edges_of(Colour.RED)],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "EdgeColouring":
        try:
            g = graph_from_json_dict(d["graph"])
            red = [(int(u), int(v)) for u, v in d["red"]]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed colouring JSON: {exc!r}") from exc
        return cls.from_red_edges(g, red)


def load_colouring(path: str | Path) -> EdgeColouring:
    return EdgeColouring.from_json_dict(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class NacVerdict:
    """Outcome of a NAC check; on failure carries a certificate.

    failure is "not-surjective", or "almost-monochromatic-cycle" with `edge`
    the single off-colour edge and `path` a monochromatic vertex path joining
    its endpoints (path + edge is the offending cycle).
    """

    is_nac: bool
    failure: str | None = None
    edge: tuple[int, int] | None = None
    path: tuple[int, ...] | None = None


@dataclass(frozen=True)
class TriangleClasses:
    """Finest edge partition merging the three edges of every triangle."""

    class_of: tuple[int, ...]
    count: int

    def members(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.count)]
        for e, c in enumerate(self.class_of):
            out[c].append(e)
        return tuple(tuple(x) for x in out)


@dataclass(frozen=True)
class NacEnumeration:
    colourings: tuple[EdgeColouring, ...]
    complete: bool

    @property
    def count(self) -> int | None:
        return len(self.colourings) if self.complete else None


@dataclass(frozen=True)
class StableWitness:
    """Stable set s such that edges meeting s are exactly the `side` edges."""

    side: Colour
    vertices: tuple[int, ...]


@dataclass(frozen=True)
class CoverStats:
    largest_component: int
    red_sizes: dict[int, int]
    blue_sizes: dict[int, int]


def monochromatic_components(c: EdgeColouring, colour: Colour) -> ComponentLabelling:
    """Components of the subgraph of `colour` edges; untouched vertices are singletons."""
    g = c.graph
    uf = UnionFind(g.n)
    for (u, v), col in zip(g.edges, c.colours):
        if col is colour:
            uf.union(u, v)
    return labelling_from_unionfind(uf, g.n)


def nac_check(c: EdgeColouring) -> NacVerdict:
    """Linear-time NAC decision with failure certificate.

    is_nac iff the colouring is surjective and every edge joins two distinct
    monochromatic components of the opposite colour.
    """
    if not c.is_surjective():
        return NacVerdict(False, failure="not-surjective")
    g = c.graph
    labs = {
        Colour.RED: monochromatic_components(c, Colour.RED),
        Colour.BLUE: monochromatic_components(c, Colour.BLUE),
    }
    for (u, v), col in zip(g.edges, c.colours):
        other = labs[col.other]
        if other.labels[u] == other.labels[v]:
            path = _monochromatic_path(c, col.other, u, v)
            return NacVerdict(
                False, failure="almost-monochromatic-cycle", edge=(u, v), path=path
            )
    return NacVerdict(True)


def is_nac_colouring(c: EdgeColouring) -> bool:
    return nac_check(c).is_nac


def _monochromatic_path(
    c: EdgeColouring, colour: Colour, start: int, goal: int
) -> tuple[int, ...]:
    g = c.graph
    adj: dict[int, list[int]] = {}
    for (u, v), col in zip(g.edges, c.colours):
        if col is colour:
            adj.setdefault(u, []).append(v)
            adj.setdefault(v, []).append(u)
    parent = {start: -1}
    queue = [start]
    while queue:
        nxt = []
        for u in queue:
            for w in adj.get(u, ()):
                if w not in parent:
                    parent[w] = u
                    nxt.append(w)
        queue = nxt
    path = [goal]
    while path[-1] != start:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


# -- literal cycle-definition oracle -----------------------------------------


@lru_cache(maxsize=4096)
def simple_cycle_edge_masks(g: Graph, max_dim: int = 16) -> tuple[int, ...]:
    """Edge-index bitmasks of all simple cycles of g.

    Enumerates the cycle space from a fundamental basis (Gray-code iteration)
    and keeps the members that are single cycles: every touched vertex of
    degree exactly two, and connected.
    """
    basis = _fundamental_cycle_masks(g)
    dim = len(basis)
    if dim > max_dim:
        raise CycleSpaceTooLarge(
            f"cycle space dimension {dim} exceeds budget {max_dim}"
        )
    cycles = []
    mask = 0
    for k in range(1, 1 << dim):
        mask ^= basis[(k & -k).bit_length() - 1]
        if _is_simple_cycle(g, mask):
            cycles.append(mask)
    return tuple(cycles)


def _fundamental_cycle_masks(g: Graph) -> list[int]:
    parent = [-1] * g.n
    parent_edge = [-1] * g.n
    depth = [0] * g.n
    seen = [False] * g.n
    tree_edges = set()
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        stack = [root]
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = u
                    parent_edge[w] = g.index_of(u, w)
                    depth[w] = depth[u] + 1
                    tree_edges.add(parent_edge[w])
                    stack.append(w)
    basis = []
    for i, (u, v) in enumerate(g.edges):
        if i in tree_edges:
            continue
        mask = 1 << i
        a, b = u, v
        while depth[a] > depth[b]:
            mask ^= 1 << parent_edge[a]
            a = parent[a]
        while depth[b] > depth[a]:
            mask ^= 1 << parent_edge[b]
            b = parent[b]
        while a != b:
            mask ^= 1 << parent_edge[a]
            mask ^= 1 << parent_edge[b]
            a, b = parent[a], parent[b]
        basis.append(mask)
    return basis


def _is_simple_cycle(g: Graph, mask: int) -> bool:
    degree: dict[int, int] = {}
    n_edges = 0
    m = mask
    while m:
        i = (m & -m).bit_length() - 1
        m &= m - 1
        u, v = g.edges[i]
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
        n_edges += 1
    if n_edges < 3 or n_edges != len(degree):
        return False
    if any(d != 2 for d in degree.values()):
        return False
    # connected 2-regular with #edges == #vertices => a single cycle
    verts = list(degree)
    ids = {v: i for i, v in enumerate(verts)}
    uf = UnionFind(len(verts))
    m = mask
    while m:
        i = (m & -m).bit_length() - 1
        m &= m - 1
        u, v = g.edges[i]
        uf.union(ids[u], ids[v])
    return uf.count == 1


def nac_check_oracle(c: EdgeColouring, max_dim: int = 16) -> bool:
    """Apply the cycle definition literally: test only; small instances."""
    if not c.is_surjective():
        return False
    red = c.red_mask
    for cyc in simple_cycle_edge_masks(c.graph, max_dim):
        size = bin(cyc).count("1")
        reds = bin(cyc & red).count("1")
        if reds == 1 or size - reds == 1:
            return False
    return True


# -- triangle classes and search ---------------------------------------------


def triangle_classes(g: Graph) -> TriangleClasses:
    """Union-find over edges, merging the three edges of each triangle."""
    uf = UnionFind(g.m)
    adj = g.adjacency
    for i, (u, v) in enumerate(g.edges):
        a, b = adj[u], adj[v]
        ai = bi = 0
        while ai < len(a) and bi < len(b):
            x, y = a[ai], b[bi]
            if x == y:
                if x > v:
                    uf.union(i, g.index_of(u, x))
                    uf.union(i, g.index_of(v, x))
                ai += 1
                bi += 1
            elif x < y:
                ai += 1
            else:
                bi += 1
    ids: dict[int, int] = {}
    class_of = []
    for e in range(g.m):
        root = uf.find(e)
        if root not in ids:
            ids[root] = len(ids)
        class_of.append(ids[root])
    return TriangleClasses(tuple(class_of), len(ids))


def _iter_class_assignments(g: Graph, class_lists: list[list[int]], order: list[int],
                            node_budget: int):
    """DFS over class colourings with the first class in `order` fixed RED.

    Yields lists mapping class id -> Colour for every assignment in which no
    edge of one colour lies inside a monochromatic component of the other
    (checked incrementally; violations prune the subtree).  Includes the
    all-red assignment; callers wanting NAC-colourings must skip it.
    """
    edges = g.edges
    red_uf = RollbackUnionFind(g.n)
    blue_uf = RollbackUnionFind(g.n)
    colour_of_class: list[Colour | None] = [None] * len(class_lists)
    assigned: dict[Colour, list[int]] = {Colour.RED: [], Colour.BLUE: []}
    nodes = 0

    def try_assign(cid: int, col: Colour) -> bool:
        uf = red_uf if col is Colour.RED else blue_uf
        other_uf = blue_uf if col is Colour.RED else red_uf
        for e in class_lists[cid]:
            u, v = edges[e]
            if other_uf.connected(u, v):
                return False
        for e in class_lists[cid]:
            u, v = edges[e]
            uf.union(u, v)
        # merging components of `col` may engulf an earlier opposite edge
        for e in assigned[col.other]:
            u, v = edges[e]
            if uf.connected(u, v):
                return False
        return True

    def rec(i: int):
        nonlocal nodes
        if i == len(order):
            yield list(colour_of_class)
            return
        cid = order[i]
        options = (Colour.RED,) if i == 0 else (Colour.RED, Colour.BLUE)
        for col in options:
            nodes += 1
            if nodes > node_budget:
                raise BudgetExceeded(
                    f"class-colouring search exceeded {node_budget} nodes"
                )
            rm, bm = red_uf.mark(), blue_uf.mark()
            colour_of_class[cid] = col
            assigned[col].extend(class_lists[cid])
            if try_assign(cid, col):
                yield from rec(i + 1)
            del assigned[col][-len(class_lists[cid]):]
            colour_of_class[cid] = None
            red_uf.rollback(rm)
            blue_uf.rollback(bm)

    yield from rec(0)


def _search_setup(g: Graph) -> tuple[list[list[int]], list[int]]:
    tc = triangle_classes(g)
    class_lists = [list(members) for members in tc.members()]
    order = sorted(
        range(tc.count), key=lambda c: (-len(class_lists[c]), class_lists[c][0])
    )
    return class_lists, order


def _colouring_from_classes(
    g: Graph, class_lists: list[list[int]], assignment: list[Colour]
) -> EdgeColouring:
    cols: list[Colour] = [Colour.BLUE] * g.m
    for cid, col in enumerate(assignment):
        for e in class_lists[cid]:
            cols[e] = col
    return EdgeColouring(g, tuple(cols))


def nac_exists(
    g: Graph, *, node_budget: int = DEFAULT_NODE_BUDGET
) -> EdgeColouring | None:
    """First NAC-colouring found, None if provably none exists.

    Raises BudgetExceeded when the search space was not exhausted in time;
    that outcome is distinct from None.
    """
    if g.m < 2:
        return None
    class_lists, order = _search_setup(g)
    if len(class_lists) == 1:
        return None
    for assignment in _iter_class_assignments(g, class_lists, order, node_budget):
        if all(col is Colour.RED for col in assignment):
            continue
        return _colouring_from_classes(g, class_lists, assignment)
    return None


def nac_enumerate(
    g: Graph,
    *,
    cap: int | None = None,
    force: bool = False,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> NacEnumeration:
    """All NAC-colourings as colour maps (red/blue swaps count as distinct).

    The search fixes one class red and re-expands each hit by its swap.
    Output is sorted canonically.  With `cap`, a partial list is returned
    with complete=False once the cap is hit.
    """
    if g.m == 0:
        return NacEnumeration((), True)
    class_lists, order = _search_setup(g)
    if len(class_lists) > MAX_ENUM_CLASSES and not force:
        raise PreconditionError(
            f"{len(class_lists)} triangle classes exceed the enumeration ceiling "
            f"of {MAX_ENUM_CLASSES}; pass force=True to override"
        )
    found: list[EdgeColouring] = []
    complete = True
    for assignment in _iter_class_assignments(g, class_lists, order, node_budget):
        if all(col is Colour.RED for col in assignment):
            continue
        c = _colouring_from_classes(g, class_lists, assignment)
        found.append(c)
        found.append(c.swapped())
        if cap is not None and len(found) >= cap:
            complete = False
            del found[cap:]
            break
    found.sort(key=lambda c: tuple(col.value for col in c.colours))
    return NacEnumeration(tuple(found), complete)


def nac_count(g: Graph, *, force: bool = False) -> int:
    result = nac_enumerate(g, force=force)
    assert result.count is not None
    return result.count


# -- stable NAC-colourings ----------------------------------------------------


def stable_witnesses(
    c: EdgeColouring, mode: str = "first", size_cap: int | None = None
) -> list[StableWitness]:
    """Stable sets s with all edges meeting s one colour, all others the other.

    Candidates for side X are the vertices whose incident edges are all X;
    cover and stability constraints are solved as 2-SAT.  mode="first" gives
    at most one (lexicographically least) witness per side; mode="all"
    enumerates up to size_cap witnesses in total.  Isolated vertices never
    appear in witnesses (canonical minimal form).
    """
    if mode not in ("first", "all"):
        raise ValueError(f"mode must be 'first' or 'all', got {mode!r}")
    if not nac_check(c).is_nac:
        raise PreconditionError("colouring is not a NAC-colouring")
    g = c.graph
    out: list[StableWitness] = []
    for side in (Colour.RED, Colour.BLUE):
        cand = [
            v
            for v in range(g.n)
            if g.degree(v) > 0
            and all(c.colours[g.index_of(v, w)] is side for w in g.adjacency[v])
        ]
        var = {v: i for i, v in enumerate(cand)}
        sat = TwoSat(len(cand))
        feasible = True
        for (u, v), col in zip(g.edges, c.colours):
            if col is side:
                lits = [TwoSat.lit(var[x], True) for x in (u, v) if x in var]
                if not lits:
                    feasible = False
                    break
                if len(lits) == 1:
                    sat.add_unit(lits[0])
                else:
                    sat.add_clause(lits[0], lits[1])
        if not feasible:
            continue
        for u, v in g.edges:
            if u in var and v in var:
                sat.add_clause(TwoSat.lit(var[u], False), TwoSat.lit(var[v], False))
        limit = 1 if mode == "first" else None
        if mode == "all" and size_cap is not None:
            limit = max(size_cap - len(out), 0)
        for model in sat.enumerate_models(limit=limit):
            out.append(
                StableWitness(side, tuple(v for v in cand if model[var[v]]))
            )
            if size_cap is not None and len(out) >= size_cap:
                return out
    return out


def bipartite_stable_nac(g: Graph, s: list[int] | tuple[int, ...]) -> EdgeColouring:
    """Colour edges meeting the stable set s red, the rest blue.

    Requires g bipartite, s stable, s meeting at least one edge and not being
    a vertex cover; the result is a stable NAC-colouring witnessed by s.
    """
    if not bipartition(g).is_bipartite:
        raise PreconditionError("graph is not bipartite")
    s_t = as_vertex_set(g, s)
    if not is_stable(g, s_t):
        raise PreconditionError("set is not stable")
    s_set = set(s_t)
    meeting = [e for e in g.edges if e[0] in s_set or e[1] in s_set]
    if not meeting:
        raise PreconditionError("set meets no edge")
    if len(meeting) == g.m:
        raise PreconditionError("set is a vertex cover")
    return EdgeColouring.from_red_edges(g, meeting)


def monochromatic_cover_stats(c: EdgeColouring) -> CoverStats:
    """Largest monochromatic component vertex count and per-colour size histograms."""
    sizes = {}
    for colour in (Colour.RED, Colour.BLUE):
        lab = monochromatic_components(c, colour)
        sizes[colour] = Counter(Counter(lab.labels).values())
    largest = 0
    for hist in sizes.values():
        if hist:
            largest = max(largest, max(hist))
    return CoverStats(largest, dict(sizes[Colour.RED]), dict(sizes[Colour.BLUE]))
