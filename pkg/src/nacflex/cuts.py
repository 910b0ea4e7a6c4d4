"""Stable cuts, firm cuts, and the no-bad-cut property, with certificates.

A stable cut is a stable (independent) set whose removal disconnects the
graph; the empty set counts as a stable cut exactly when the graph is already
disconnected (this keeps "no stable cut" monotone under edge addition).  A
firm cut additionally leaves only components with at least two vertices.
`sprime_holds` decides the property of having no stable cut that leaves at
least three components, or exactly two components each of size at least two.

The exact searches are branch-and-bound: grow a connected set A from a seed
vertex, forcing each frontier vertex either into A or into the separator
S = N(A), pruning on separator stability and on nothing being left outside
A union S.  Every stable separator arises as N(A) for a component A of the
cut graph, and seeding A at its minimum vertex generates each candidate
exactly once, so the enumeration is exhaustive.  Exhaustive subset scans are
provided as test oracles.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded, PreconditionError
from .graphs import (
    Graph,
    as_vertex_set,
    components,
    every_vertex_in_triangle,
    induced_delete,
    is_stable,
)
from .nac import EdgeColouring

__all__ = [
    "CutCertificate",
    "SDecomposition",
    "stable_cut_exists",
    "firm_cut_exists",
    "sprime_holds",
    "decompose_s",
    "stable_cut_to_nac",
    "stable_cut_exists_exhaustive",
    "firm_cut_exists_exhaustive",
    "sprime_violation_exhaustive",
    "DEFAULT_NODE_BUDGET",
]

DEFAULT_NODE_BUDGET = 5_000_000


@dataclass(frozen=True)
class CutCertificate:
    """A vertex set plus the component partition its removal induces."""

    s: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    kind: str

    def to_json_dict(self) -> dict:
        return {
            "s": list(self.s),
            "components": [list(c) for c in self.components],
            "kind": self.kind,
        }


@dataclass(frozen=True)
class SDecomposition:
    in_T: bool
    in_Sprime: bool
    in_S: bool


# -- bitmask helpers ----------------------------------------------------------


def _mask_vertices(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        out.append((mask & -mask).bit_length() - 1)
        mask &= mask - 1
    return tuple(out)


def _mask_is_stable(masks: tuple[int, ...], s_mask: int) -> bool:
    m = s_mask
    while m:
        v = (m & -m).bit_length() - 1
        m &= m - 1
        if masks[v] & s_mask:
            return False
    return True


def _mask_components(masks: tuple[int, ...], mask: int) -> list[int]:
    comps = []
    rest = mask
    while rest:
        comp = 0
        frontier = rest & -rest
        while frontier:
            comp |= frontier
            nxt = 0
            f = frontier
            while f:
                v = (f & -f).bit_length() - 1
                f &= f - 1
                nxt |= masks[v]
            frontier = nxt & mask & ~comp
        comps.append(comp)
        rest &= ~comp
    return comps


def _certificate(g: Graph, s_mask: int, kind: str) -> CutCertificate:
    full = (1 << g.n) - 1
    comps = _mask_components(g.adjacency_masks, full & ~s_mask)
    return CutCertificate(
        _mask_vertices(s_mask), tuple(_mask_vertices(c) for c in comps), kind
    )


def _iter_separators(n: int, masks: tuple[int, ...], counter: list[int], prune=None):
    """Yield (A_mask, S_mask) for every connected A with stable S = N(A) and
    at least one vertex outside A union S.

    Every stable cut arises this way with A a component of the cut graph, and
    each candidate is generated exactly once by seeding A at its minimum
    vertex: frontier vertices below the seed are forced into S.  Vertices in
    N(A) never end up outside A union S, so subtrees whose leftover
    `full & ~A & ~N(A)` already fails a monotone requirement are pruned
    (`prune(a_mask, na_mask)`; rest-emptiness is always pruned).

    counter is [nodes_used, budget].
    """
    full = (1 << n) - 1
    budget = counter[1]
    for seed in range(n):
        below = (1 << seed) - 1
        stack = [(1 << seed, masks[seed], 0)]
        while stack:
            a_mask, na_mask, s_mask = stack.pop()
            counter[0] += 1
            if counter[0] > budget:
                raise BudgetExceeded(f"cut search exceeded {budget} nodes")
            forced = na_mask & ~s_mask & below
            dead = False
            while forced:
                v_bit = forced & -forced
                forced &= forced - 1
                if masks[v_bit.bit_length() - 1] & s_mask:
                    dead = True
                    break
                s_mask |= v_bit
            if dead:
                continue
            if not full & ~a_mask & ~na_mask:
                continue
            if prune is not None and prune(a_mask, na_mask):
                continue
            frontier = na_mask & ~s_mask
            if not frontier:
                yield a_mask, s_mask
                continue
            v_bit = frontier & -frontier
            v = v_bit.bit_length() - 1
            a2 = a_mask | v_bit
            stack.append((a2, (na_mask | masks[v]) & ~a2, s_mask))
            if masks[v] & s_mask == 0:
                stack.append((a_mask, na_mask, s_mask | v_bit))


# -- stable cuts --------------------------------------------------------------


def stable_cut_exists(
    g: Graph, *, node_budget: int = DEFAULT_NODE_BUDGET
) -> CutCertificate | None:
    """A stable-cut certificate, or None when provably no stable cut exists.

    Raises BudgetExceeded when the search budget ran out first.
    """
    if g.n == 0:
        return None
    if components(g).count >= 2:
        return _certificate(g, 0, "stable")
    masks = g.adjacency_masks
    full = (1 << g.n) - 1
    # fast path: a vertex with a stable neighbourhood whose removal cuts
    for v in range(g.n):
        s_mask = masks[v]
        if s_mask and _mask_is_stable(masks, s_mask):
            if len(_mask_components(masks, full & ~s_mask)) >= 2:
                return _certificate(g, s_mask, "stable")
    counter = [0, node_budget]
    for _, s_mask in _iter_separators(g.n, masks, counter):
        return _certificate(g, s_mask, "stable")
    return None


# -- firm cuts ----------------------------------------------------------------


def firm_cut_exists(
    g: Graph, *, node_budget: int = DEFAULT_NODE_BUDGET
) -> CutCertificate | None:
    """A firm-cut certificate (all residual components >= 2 vertices), or None."""
    if g.n == 0:
        return None
    iso_mask = 0
    for v in range(g.n):
        if g.degree(v) == 0:
            iso_mask |= 1 << v
    # isolated vertices can only live inside a firm cut; search the rest
    sub, kept = (g, tuple(range(g.n))) if not iso_mask else _delete_mask(g, iso_mask)
    if sub.n == 0:
        return None
    masks = sub.adjacency_masks
    full = (1 << sub.n) - 1

    def firm_mask(s_mask: int) -> bool:
        comps = _mask_components(masks, full & ~s_mask)
        return len(comps) >= 2 and all(c & (c - 1) for c in comps)

    found = None
    if firm_mask(0):
        found = 0
    else:
        counter = [0, node_budget]
        for _, s_mask in _iter_separators(sub.n, masks, counter):
            if firm_mask(s_mask):
                found = s_mask
                break
    if found is None:
        return None
    s_orig = iso_mask
    for v in _mask_vertices(found):
        s_orig |= 1 << kept[v]
    return _certificate(g, s_orig, "firm")


def _delete_mask(g: Graph, mask: int) -> tuple[Graph, tuple[int, ...]]:
    return induced_delete(g, _mask_vertices(mask))


# -- the no-bad-cut property ---------------------------------------------------


def sprime_holds(
    g: Graph, *, node_budget: int = DEFAULT_NODE_BUDGET
) -> tuple[bool, CutCertificate | None]:
    """True when no stable cut leaves >=3 components or two components each >=2.

    On False, returns a violating-cut certificate.  Violations come in two
    shapes and are searched accordingly: two residual singletons (a direct
    scan over non-adjacent pairs u, v with N(u) | N(v) stable and something
    left over), or two residual components spanning an edge each (leaf search
    with that acceptance test).
    """
    n = g.n
    if n == 0:
        return True, None
    masks = g.adjacency_masks
    full = (1 << n) - 1
    for u in range(n):
        for v in range(u + 1, n):
            if (masks[u] >> v) & 1:
                continue
            s_mask = masks[u] | masks[v]
            if not _mask_is_stable(masks, s_mask):
                continue
            if full & ~s_mask & ~(1 << u) & ~(1 << v):
                return False, _certificate(g, s_mask, "sprime-violation")
    edge_masks = [(1 << a) | (1 << b) for a, b in g.edges]
    counter = [0, node_budget]

    def no_edge_can_remain(a_mask: int, na_mask: int) -> bool:
        # frontier vertices end up in A or S, so only edges avoiding both A
        # and the current N(A) can still land in the leftover side
        avail = full & ~a_mask & ~na_mask
        return not any(em & avail == em for em in edge_masks)

    for a_mask, s_mask in _iter_separators(n, masks, counter, prune=no_edge_can_remain):
        if not a_mask & (a_mask - 1):
            continue  # A must span an edge, so >= 2 vertices
        rest = full & ~a_mask & ~s_mask
        if any(em & rest == em for em in edge_masks):
            return False, _certificate(g, s_mask, "sprime-violation")
    return True, None


def decompose_s(
    g: Graph, *, node_budget: int = DEFAULT_NODE_BUDGET
) -> SDecomposition:
    """Membership in every-vertex-in-a-triangle, the no-bad-cut property, and
    no-stable-cut, cross-asserting that the third equals the conjunction of
    the first two (valid for n >= 3)."""
    in_t = every_vertex_in_triangle(g)[0]
    in_sp = sprime_holds(g, node_budget=node_budget)[0]
    in_s = stable_cut_exists(g, node_budget=node_budget) is None
    if g.n >= 3 and in_s != (in_t and in_sp):
        raise RuntimeError(
            "internal error: no-stable-cut decision disagrees with "
            f"triangle/no-bad-cut conjunction on n={g.n}, m={g.m}"
        )
    return SDecomposition(in_t, in_sp, in_s)


# -- stable cut -> NAC colouring ----------------------------------------------


def stable_cut_to_nac(g: Graph, cert: CutCertificate) -> EdgeColouring:
    """Colour edges meeting one chosen residual component red, the rest blue.

    The chosen component is the smallest one incident to an edge (ties by
    lowest vertex id).  Requires at least one edge incident to it and one not.
    """
    s = as_vertex_set(g, cert.s)
    if not is_stable(g, s):
        raise PreconditionError("certificate set is not stable")
    if len(cert.components) < 2:
        raise PreconditionError("certificate does not disconnect the graph")
    seen: set[int] = set(s)
    for comp in cert.components:
        for v in comp:
            if v in seen:
                raise PreconditionError("certificate components overlap")
            seen.add(v)
    if len(seen) != g.n:
        raise PreconditionError("certificate does not partition the vertices")
    comp_of = {}
    for i, comp in enumerate(cert.components):
        for v in comp:
            comp_of[v] = i
    for u, v in g.edges:
        cu, cv = comp_of.get(u), comp_of.get(v)
        if cu is not None and cv is not None and cu != cv:
            raise PreconditionError("certificate components are joined by an edge")

    def touches(comp: tuple[int, ...]) -> bool:
        cs = set(comp)
        return any(u in cs or v in cs for u, v in g.edges)

    candidates = [c for c in cert.components if touches(c)]
    if not candidates:
        raise PreconditionError("no edge is incident to any component (no red edge)")
    a = min(candidates, key=lambda c: (len(c), min(c)))
    a_set = set(a)
    red = [e for e in g.edges if e[0] in a_set or e[1] in a_set]
    if len(red) == g.m:
        raise PreconditionError("every edge meets the chosen component (no blue edge)")
    return EdgeColouring.from_red_edges(g, red)


# -- exhaustive oracles (tests; n <= ~20) --------------------------------------


def _iter_stable_masks(g: Graph):
    masks = g.adjacency_masks
    for s_mask in range(1 << g.n):
        if _mask_is_stable(masks, s_mask):
            yield s_mask


def stable_cut_exists_exhaustive(g: Graph) -> CutCertificate | None:
    if g.n > 20:
        raise ValueError("exhaustive scan is for n <= 20")
    full = (1 << g.n) - 1
    for s_mask in _iter_stable_masks(g):
        if len(_mask_components(g.adjacency_masks, full & ~s_mask)) >= 2:
            return _certificate(g, s_mask, "stable")
    return None


def firm_cut_exists_exhaustive(g: Graph) -> CutCertificate | None:
    if g.n > 20:
        raise ValueError("exhaustive scan is for n <= 20")
    full = (1 << g.n) - 1
    for s_mask in _iter_stable_masks(g):
        comps = _mask_components(g.adjacency_masks, full & ~s_mask)
        if len(comps) >= 2 and all(c & (c - 1) for c in comps):
            return _certificate(g, s_mask, "firm")
    return None


def sprime_violation_exhaustive(g: Graph) -> CutCertificate | None:
    if g.n > 20:
        raise ValueError("exhaustive scan is for n <= 20")
    full = (1 << g.n) - 1
    for s_mask in _iter_stable_masks(g):
        comps = _mask_components(g.adjacency_masks, full & ~s_mask)
        if len(comps) >= 3 or (
            len(comps) == 2 and all(c & (c - 1) for c in comps)
        ):
            return _certificate(g, s_mask, "sprime-violation")
    return None
