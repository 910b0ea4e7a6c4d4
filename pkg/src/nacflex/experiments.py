"""Reproducible Monte Carlo experiment drivers and CSV/JSON emission.

Trials are pure functions of (master_seed, experiment tag, indices), so runs
are deterministic for any worker count and aggregation happens in trial
order.  Threshold sweeps couple trials across the probability multipliers
with common random numbers: one uniform per potential edge per trial,
thresholded at each p, which turns monotone trends into per-trial facts.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from .cuts import decompose_s, sprime_holds, stable_cut_exists
from .errors import BudgetExceeded, PreconditionError
from .graphs import Graph, every_vertex_in_triangle
from .nac import EdgeColouring, nac_check, nac_exists
from .randmodels import (
    RandomSource,
    all_edges_array,
    hitting_times,
    p_star,
    process,
    regular_configuration,
)
from .unionfind import UnionFind

__all__ = [
    "PROPERTIES",
    "N_CEILINGS",
    "SweepSpec",
    "SweepRow",
    "SweepResult",
    "HittingRow",
    "HittingResult",
    "RegularNacRow",
    "RegularNacResult",
    "run_sweep",
    "hitting_equality_experiment",
    "regular_nac_lower_bound",
    "emit",
    "triangle_covered",
    "edges_connected",
]

PROPERTIES = ("T", "S", "Sprime", "N", "NoStableCut", "Connected")

N_CEILINGS = {
    "T": 100_000,
    "Connected": 100_000,
    "S": 30,
    "Sprime": 30,
    "NoStableCut": 30,
    "N": 30,
}

DEFAULT_NODE_BUDGET = 500_000

_TAG_SWEEP = 0x53574550
_TAG_HITTING = 0x48495454
_TAG_REGULAR = 0x52454743


# -- fast property checks on raw edge arrays -----------------------------------

_BITSET_N_LIMIT = 8192


def triangle_covered(n: int, pairs: np.ndarray) -> bool:
    """True iff every vertex lies in a triangle (vectorised bitset check)."""
    if n == 0:
        return True
    if len(pairs) == 0:
        return False
    if n > _BITSET_N_LIMIT:
        g = Graph.from_edges(n, pairs.tolist())
        return every_vertex_in_triangle(g)[0]
    words = (n + 63) // 64
    bits = np.zeros((n, words), dtype=np.uint64)
    u = pairs[:, 0].astype(np.intp)
    v = pairs[:, 1].astype(np.intp)
    ones = np.ones(len(u), dtype=np.uint64)
    np.bitwise_or.at(bits, (u, v >> 6), np.left_shift(ones, (v & 63).astype(np.uint64)))
    np.bitwise_or.at(bits, (v, u >> 6), np.left_shift(ones, (u & 63).astype(np.uint64)))
    common = bits[u] & bits[v]
    tri_edge = common.any(axis=1)
    covered = np.unique(pairs[tri_edge])
    return len(covered) == n


def edges_connected(n: int, pairs: np.ndarray) -> bool:
    if n <= 1:
        return True
    uf = UnionFind(n)
    for u, v in pairs.tolist():
        uf.union(u, v)
        if uf.count == 1:
            return True
    return uf.count == 1


@lru_cache(maxsize=8)
def _edge_universe(n: int) -> np.ndarray:
    return all_edges_array(n)


def _decide(prop: str, n: int, pairs: np.ndarray, node_budget: int) -> bool:
    if prop == "T":
        return triangle_covered(n, pairs)
    if prop == "Connected":
        return edges_connected(n, pairs)
    g = Graph.from_edges(n, pairs.tolist())
    if prop == "NoStableCut":
        return stable_cut_exists(g, node_budget=node_budget) is None
    if prop == "S":
        return decompose_s(g, node_budget=node_budget).in_S
    if prop == "Sprime":
        return sprime_holds(g, node_budget=node_budget)[0]
    if prop == "N":
        if not edges_connected(n, pairs):
            return False
        return nac_exists(g, node_budget=node_budget) is None
    raise ValueError(f"unknown property {prop!r}")


# -- threshold sweeps -----------------------------------------------------------


@dataclass(frozen=True)
class SweepSpec:
    property: str
    n_values: tuple[int, ...]
    c_values: tuple[float, ...]
    trials: int
    master_seed: int
    node_budget: int = DEFAULT_NODE_BUDGET

    def validate(self, force: bool = False) -> None:
        if self.property not in PROPERTIES:
            raise PreconditionError(
                f"property must be one of {PROPERTIES}, got {self.property!r}"
            )
        if self.trials < 1:
            raise PreconditionError("trials must be >= 1")
        if not self.n_values:
            raise PreconditionError("at least one n value is required")
        if any(n < 2 for n in self.n_values):
            raise PreconditionError("n values must be >= 2")
        if any(c <= 0 for c in self.c_values):
            raise PreconditionError("c values must be positive")
        ceiling = N_CEILINGS[self.property]
        if not force and any(n > ceiling for n in self.n_values):
            raise PreconditionError(
                f"n exceeds the default ceiling {ceiling} for property "
                f"{self.property}; pass force to override"
            )


@dataclass(frozen=True)
class SweepRow:
    n: int
    c: float
    p: float
    trials: int
    successes: int
    budget_exceeded: int
    wall_ms: int


@dataclass(frozen=True)
class SweepResult:
    property: str
    master_seed: int
    rows: tuple[SweepRow, ...]

    CSV_HEADER = "n,c,p,trials,successes,budget_exceeded,wall_ms"

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for r in self.rows:
            lines.append(
                f"{r.n},{r.c!r},{r.p!r},{r.trials},{r.successes},"
                f"{r.budget_exceeded},{r.wall_ms}"
            )
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "property": self.property,
            "master_seed": self.master_seed,
            "rows": [
                {
                    "n": r.n,
                    "c": r.c,
                    "p": r.p,
                    "trials": r.trials,
                    "successes": r.successes,
                    "budget_exceeded": r.budget_exceeded,
                    "wall_ms": r.wall_ms,
                }
                for r in self.rows
            ],
        }


def sweep_trial_outcomes(
    spec: SweepSpec, n_index: int, trial: int
) -> list[tuple[bool, bool, float]]:
    """(success, budget_exceeded, seconds) per c value for one coupled trial.

    One uniform is drawn per potential edge; each c keeps the edges whose
    uniform falls below c * p_star(n).
    """
    n = spec.n_values[n_index]
    src = RandomSource(spec.master_seed).derive(_TAG_SWEEP, n_index, trial)
    uniforms = src.generator().random(n * (n - 1) // 2)
    universe = _edge_universe(n)
    base = p_star(n)
    out = []
    for c in spec.c_values:
        p = min(c * base, 1.0)
        pairs = universe[uniforms < p]
        start = time.perf_counter()
        try:
            ok = _decide(spec.property, n, pairs, spec.node_budget)
            exceeded = False
        except BudgetExceeded:
            ok = False
            exceeded = True
        out.append((ok, exceeded, time.perf_counter() - start))
    return out


def _sweep_task(args: tuple) -> list[tuple[bool, bool, float]]:
    spec_fields, n_index, trial = args
    return sweep_trial_outcomes(SweepSpec(*spec_fields), n_index, trial)


def _spec_fields(spec: SweepSpec) -> tuple:
    return (
        spec.property,
        spec.n_values,
        spec.c_values,
        spec.trials,
        spec.master_seed,
        spec.node_budget,
    )


def run_sweep(spec: SweepSpec, *, workers: int = 1, force: bool = False) -> SweepResult:
    spec.validate(force=force)
    tasks = [
        (_spec_fields(spec), ni, trial)
        for ni in range(len(spec.n_values))
        for trial in range(spec.trials)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_sweep_task, tasks, chunksize=8))
    else:
        results = [_sweep_task(t) for t in tasks]
    rows = []
    for ni, n in enumerate(spec.n_values):
        per_trial = results[ni * spec.trials : (ni + 1) * spec.trials]
        for ci, c in enumerate(spec.c_values):
            successes = sum(1 for tr in per_trial if tr[ci][0])
            exceeded = sum(1 for tr in per_trial if tr[ci][1])
            wall = sum(tr[ci][2] for tr in per_trial)
            rows.append(
                SweepRow(
                    n,
                    c,
                    min(c * p_star(n), 1.0),
                    spec.trials,
                    successes,
                    exceeded,
                    int(round(wall * 1000)),
                )
            )
    return SweepResult(spec.property, spec.master_seed, tuple(rows))


# -- hitting-time equality experiment -------------------------------------------


@dataclass(frozen=True)
class HittingRow:
    n: int
    trials: int
    eq_s: int
    eq_n: int
    frac_s_eq_t: float
    frac_n_eq_t: float
    se_s: float
    se_n: float
    ordering_violations: int
    budget_exceeded: int
    wall_ms: int


@dataclass(frozen=True)
class HittingResult:
    master_seed: int
    rows: tuple[HittingRow, ...]

    CSV_HEADER = (
        "n,trials,eq_s,eq_n,frac_s_eq_t,frac_n_eq_t,se_s,se_n,"
        "ordering_violations,budget_exceeded,wall_ms"
    )

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for r in self.rows:
            lines.append(
                f"{r.n},{r.trials},{r.eq_s},{r.eq_n},{r.frac_s_eq_t!r},"
                f"{r.frac_n_eq_t!r},{r.se_s!r},{r.se_n!r},"
                f"{r.ordering_violations},{r.budget_exceeded},{r.wall_ms}"
            )
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "master_seed": self.master_seed,
            "rows": [vars(r) | {} for r in self.rows],
        }


def _hitting_task(args: tuple) -> tuple[int, int, int | None, int | None, float]:
    n, ni, trial, master_seed, node_budget, check_identity = args
    src = RandomSource(master_seed).derive(_TAG_HITTING, ni, trial)
    start = time.perf_counter()
    rec = hitting_times(
        process(n, src), node_budget=node_budget, check_identity=check_identity
    )
    return rec.tau_conn, rec.tau_T, rec.tau_S, rec.tau_N, time.perf_counter() - start


def hitting_equality_experiment(
    n_values: tuple[int, ...] | list[int],
    trials: int,
    master_seed: int,
    *,
    node_budget: int = DEFAULT_NODE_BUDGET,
    check_identity: bool = False,
    workers: int = 1,
) -> HittingResult:
    """Per-n fractions of traces with tau_S = tau_T and tau_N = tau_T.

    Ordering violations (tau_T <= tau_S <= tau_N failing on fully computed
    traces) are counted and must be zero; budget-exceeded traces are tallied
    separately and excluded from the equality denominators.
    """
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    if any(n < 3 for n in n_values):
        raise PreconditionError("hitting times need n >= 3")
    tasks = [
        (n, ni, trial, master_seed, node_budget, check_identity)
        for ni, n in enumerate(n_values)
        for trial in range(trials)
    ]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_hitting_task, tasks, chunksize=4))
    else:
        results = [_hitting_task(t) for t in tasks]
    rows = []
    for ni, n in enumerate(n_values):
        recs = results[ni * trials : (ni + 1) * trials]
        exceeded = sum(1 for r in recs if r[2] is None or r[3] is None)
        full = [r for r in recs if r[2] is not None and r[3] is not None]
        eq_s = sum(1 for r in full if r[2] == r[1])
        eq_n = sum(1 for r in full if r[3] == r[1])
        violations = sum(1 for r in full if not (r[1] <= r[2] <= r[3]))
        denom = max(len(full), 1)
        frac_s = eq_s / denom
        frac_n = eq_n / denom
        rows.append(
            HittingRow(
                n,
                trials,
                eq_s,
                eq_n,
                frac_s,
                frac_n,
                math.sqrt(frac_s * (1 - frac_s) / denom),
                math.sqrt(frac_n * (1 - frac_n) / denom),
                violations,
                exceeded,
                int(round(sum(r[4] for r in recs) * 1000)),
            )
        )
    return HittingResult(master_seed, tuple(rows))


# -- random-regular NAC lower-bound construction ---------------------------------


@dataclass(frozen=True)
class RegularNacRow:
    trial: int
    x_size: int
    s_size: int
    colourings_checked: int
    nac_failures: int
    rejects: int


@dataclass(frozen=True)
class RegularNacResult:
    n: int
    k: int
    master_seed: int
    rows: tuple[RegularNacRow, ...]

    CSV_HEADER = "trial,x_size,s_size,colourings_checked,nac_failures,rejects"

    def to_csv(self) -> str:
        lines = [self.CSV_HEADER]
        for r in self.rows:
            lines.append(
                f"{r.trial},{r.x_size},{r.s_size},{r.colourings_checked},"
                f"{r.nac_failures},{r.rejects}"
            )
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "master_seed": self.master_seed,
            "rows": [vars(r) | {} for r in self.rows],
        }


def _ball_mask(masks: tuple[int, ...], v: int, radius: int) -> int:
    ball = 1 << v
    frontier = ball
    for _ in range(radius):
        nxt = 0
        f = frontier
        while f:
            w = (f & -f).bit_length() - 1
            f &= f - 1
            nxt |= masks[w]
        frontier = nxt & ~ball
        ball |= frontier
    return ball


def _regular_nac_trial(args: tuple) -> RegularNacRow:
    n, k, trial, master_seed, subset_cap, max_rejects = args
    src = RandomSource(master_seed).derive(_TAG_REGULAR, trial)
    g, rejects = regular_configuration(n, k, src, max_rejects=max_rejects)
    masks = g.adjacency_masks
    blocked = 0
    x_set = []
    for v in range(n):
        if not (blocked >> v) & 1:
            x_set.append(v)
            blocked |= _ball_mask(masks, v, 3)
    bound = k**3 - k**2 + k + 1
    if len(x_set) * bound < n:
        raise RuntimeError(
            "internal error: maximal distance-4 set smaller than n/(k^3-k^2+k+1)"
        )
    s_set = []
    for x in x_set:
        nb = masks[x]
        f = nb
        stable = True
        while f:
            w = (f & -f).bit_length() - 1
            f &= f - 1
            if masks[w] & nb:
                stable = False
                break
        if stable:
            s_set.append(x)
    # colourings: a non-empty subset of s_set gets red stars, everything else blue
    rng = src.derive(1).generator()
    size = len(s_set)
    subsets: list[int] = []
    if size:
        if (1 << size) - 1 <= subset_cap:
            subsets = list(range(1, 1 << size))
        else:
            seen = set()
            attempts = 0
            while len(subsets) < subset_cap and attempts < 20 * subset_cap:
                attempts += 1
                bits = rng.random(size) < 0.5
                mask = 0
                for i, b in enumerate(bits):
                    if b:
                        mask |= 1 << i
                if mask and mask not in seen:
                    seen.add(mask)
                    subsets.append(mask)
    failures = 0
    for mask in subsets:
        chosen = [s_set[i] for i in range(size) if (mask >> i) & 1]
        red = []
        for x in chosen:
            red.extend((x, w) if x < w else (w, x) for w in g.adjacency[x])
        c = EdgeColouring.from_red_edges(g, red)
        if not nac_check(c).is_nac:
            failures += 1
    return RegularNacRow(trial, len(x_set), len(s_set), len(subsets), failures, rejects)


def regular_nac_lower_bound(
    n: int,
    k: int,
    trials: int,
    master_seed: int,
    *,
    subset_cap: int = 100,
    max_rejects: int = 10_000,
    workers: int = 1,
) -> RegularNacResult:
    """Sample k-regular graphs; build a maximal pairwise-distance-4 set X,
    filter to stable neighbourhoods S, and NAC-check star colourings from S."""
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    if (n * k) % 2 != 0:
        raise PreconditionError(f"n*k must be even, got n={n}, k={k}")
    tasks = [(n, k, t, master_seed, subset_cap, max_rejects) for t in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_regular_nac_trial, tasks, chunksize=1))
    else:
        rows = [_regular_nac_trial(t) for t in tasks]
    return RegularNacResult(n, k, master_seed, tuple(rows))


# -- emission --------------------------------------------------------------------


def emit(result, fmt: str, path: str | Path) -> None:
    """Write an experiment result as CSV or JSON (full precision, trailing newline)."""
    import json as _json

    if fmt not in ("csv", "json"):
        raise PreconditionError(f"format must be 'csv' or 'json', got {fmt!r}")
    if fmt == "csv":
        text = result.to_csv()
    else:
        text = _json.dumps(result.to_json_dict(), indent=2) + "\n"
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise OSError(f"could not write {path}: {exc}") from exc
