"""Small 2-SAT solver: implication graph + strongly connected components.

Literals are encoded as ints: variable v is node 2v, its negation 2v+1.
`solve` gives one model via the standard SCC ordering; `enumerate_models`
backtracks in lexicographic order (variable 0 first, False before True), so
its first yield is the lexicographically least satisfying assignment.
"""

from __future__ import annotations

from collections.abc import Iterator

__all__ = ["TwoSat"]


class TwoSat:
    def __init__(self, n_vars: int) -> None:
        self.n = n_vars
        self.clauses: list[tuple[int, int]] = []
        self._adj: list[list[int]] = [[] for _ in range(2 * n_vars)]

    @staticmethod
    def lit(var: int, value: bool) -> int:
        return 2 * var if value else 2 * var + 1

    def add_clause(self, a: int, b: int) -> None:
        """a, b are literal codes; records (a or b)."""
        self.clauses.append((a, b))
        self._adj[a ^ 1].append(b)
        self._adj[b ^ 1].append(a)

    def add_unit(self, a: int) -> None:
        self.add_clause(a, a)

    def _scc(self) -> list[int]:
        """Tarjan, iterative; returns component id per node (reverse topological)."""
        n = 2 * self.n
        index = [-1] * n
        low = [0] * n
        comp = [-1] * n
        on_stack = [False] * n
        stack: list[int] = []
        counter = 0
        n_comps = 0
        for root in range(n):
            if index[root] != -1:
                continue
            work = [(root, 0)]
            while work:
                v, pi = work[-1]
                if pi == 0:
                    index[v] = low[v] = counter
                    counter += 1
                    stack.append(v)
                    on_stack[v] = True
                recursed = False
                adj = self._adj[v]
                for i in range(pi, len(adj)):
                    w = adj[i]
                    if index[w] == -1:
                        work[-1] = (v, i + 1)
                        work.append((w, 0))
                        recursed = True
                        break
                    if on_stack[w]:
                        low[v] = min(low[v], index[w])
                if recursed:
                    continue
                if low[v] == index[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp[w] = n_comps
                        if w == v:
                            break
                    n_comps += 1
                work.pop()
                if work:
                    u = work[-1][0]
                    low[u] = min(low[u], low[v])
        return comp

    def solve(self) -> list[bool] | None:
        comp = self._scc()
        model = []
        for v in range(self.n):
            if comp[2 * v] == comp[2 * v + 1]:
                return None
            # Tarjan emits components in reverse topological order, so the
            # larger id is earlier in topological order; pick the later one.
            model.append(comp[2 * v] < comp[2 * v + 1])
        return model

    def satisfiable(self) -> bool:
        return self.solve() is not None

    def enumerate_models(self, limit: int | None = None) -> Iterator[list[bool]]:
        """All satisfying assignments, lexicographic (False < True)."""
        if limit is not None and limit <= 0:
            return
        if not self.satisfiable():
            return
        n = self.n
        clauses = self.clauses
        assignment: list[bool | None] = [None] * n
        emitted = 0

        def value(lit: int) -> bool | None:
            v = assignment[lit >> 1]
            if v is None:
                return None
            return v if lit & 1 == 0 else not v

        def consistent() -> bool:
            for a, b in clauses:
                if value(a) is False and value(b) is False:
                    return False
            return True

        def rec(i: int) -> Iterator[list[bool]]:
            nonlocal emitted
            if limit is not None and emitted >= limit:
                return
            if i == n:
                emitted += 1
                yield [bool(x) for x in assignment]
                return
            for val in (False, True):
                assignment[i] = val
                if consistent():
                    yield from rec(i + 1)
                assignment[i] = None
                if limit is not None and emitted >= limit:
                    return

        yield from rec(0)
