"""Exhaustive deciders for packing existence and packing numbers.

The packing search branches on whole per-vertex columns (the k slots a
vertex contributes, one per colouring, necessarily a permutation of the
k slots by disjointness), processing vertices in degeneracy order so
that every vertex is constrained only by few earlier neighbours.  All
searches are complete; a configurable node budget turns runaway
instances into a distinct BudgetExceeded outcome rather than a silent
"none".
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Iterator, Optional, Sequence

from .core import (
    CorrespondenceCover,
    Graph,
    ListAssignment,
    Packing,
    degeneracy_order,
    validate_cover,
)

DEFAULT_BUDGET = 10**8


class BudgetExceeded(Exception):
    """Search node budget exhausted before the instance was decided."""


class _Budget:
    __slots__ = ("remaining",)

    def __init__(self, limit: Optional[int]):
        self.remaining = DEFAULT_BUDGET if limit is None else limit

    def spend(self, amount: int = 1) -> None:
        self.remaining -= amount
        if self.remaining < 0:
            raise BudgetExceeded("search budget exceeded")


def _as_budget(budget) -> _Budget:
    return budget if isinstance(budget, _Budget) else _Budget(budget)


def _directed_conflicts(cover: CorrespondenceCover) -> dict:
    """Slot conflict maps for both orientations of every edge."""
    conf: dict[tuple[int, int], dict[int, int]] = {}
    for (u, v), pairs in cover.matchings.items():
        conf[(u, v)] = {i: j for i, j in pairs}
        conf[(v, u)] = {j: i for i, j in pairs}
    return conf


def _earlier_neighbours(g: Graph, order: Sequence[int]) -> list[list[int]]:
    pos = {v: i for i, v in enumerate(order)}
    nbrs = g.neighbours()
    return [sorted(u for u in nbrs[v] if pos[u] < pos[v]) for v in order]


def _column_search(
    k: int,
    forbidden: list[set[int]],
    budget: _Budget,
) -> Iterator[tuple[int, ...]]:
    """All injective colouring->slot columns avoiding forbidden[i] sets."""
    col = [0] * k
    used = [False] * k

    def rec(i: int) -> Iterator[tuple[int, ...]]:
        budget.spend()
        if i == k:
            yield tuple(col)
            return
        bad = forbidden[i]
        for s in range(k):
            if used[s] or s in bad:
                continue
            used[s] = True
            col[i] = s
            yield from rec(i + 1)
            used[s] = False

    yield from rec(0)


def find_packing(
    cover: CorrespondenceCover, budget: Optional[int] = None
) -> Optional[Packing]:
    """Complete search for a k-fold packing of the cover.

    Returns a packing (cover mode) or None when provably no packing
    exists; raises BudgetExceeded when the node budget runs out.
    """
    err = validate_cover(cover)
    if err is not None:
        raise ValueError(err)
    g, k = cover.graph, cover.k
    order, _ = degeneracy_order(g)
    earlier = _earlier_neighbours(g, order)
    conf = _directed_conflicts(cover)
    b = _as_budget(budget)
    columns: list[Optional[tuple[int, ...]]] = [None] * g.n

    def dfs(idx: int) -> bool:
        if idx == g.n:
            return True
        v = order[idx]
        forbidden: list[set[int]] = [set() for _ in range(k)]
        for u in earlier[idx]:
            cu = columns[u]
            edge_conf = conf.get((u, v))
            if edge_conf is None:
                continue
            for i in range(k):
                s = edge_conf.get(cu[i])
                if s is not None:
                    forbidden[i].add(s)
        for col in _column_search(k, forbidden, b):
            columns[v] = col
            if dfs(idx + 1):
                return True
        columns[v] = None
        return False

    if not dfs(0):
        return None
    rows = [tuple(columns[v][i] for v in range(g.n)) for i in range(k)]
    return Packing.from_rows("cover", rows)


def find_list_packing(
    g: Graph, lists: ListAssignment, budget: Optional[int] = None
) -> Optional[Packing]:
    """Complete search for an L-packing; conflicts are colour equality.

    Equivalent to find_packing(list_to_cover(g, lists)) but works on
    colours directly, which matters inside the chi-star enumerations.
    """
    k = lists.uniform_size()
    order, _ = degeneracy_order(g)
    earlier = _earlier_neighbours(g, order)
    b = _as_budget(budget)
    columns: list[Optional[tuple[int, ...]]] = [None] * g.n

    def dfs(idx: int) -> bool:
        if idx == g.n:
            return True
        v = order[idx]
        lv = lists.lists[v]
        forbidden: list[set[int]] = [set() for _ in range(k)]
        for u in earlier[idx]:
            cu = columns[u]
            for i in range(k):
                forbidden[i].add(cu[i])
        col = [0] * k
        used = [False] * k

        def rec(i: int) -> bool:
            b.spend()
            if i == k:
                columns[v] = tuple(col)
                return dfs(idx + 1)
            bad = forbidden[i]
            for s in range(k):
                if used[s] or lv[s] in bad:
                    continue
                used[s] = True
                col[i] = lv[s]
                if rec(i + 1):
                    return True
                used[s] = False
            return False

        if rec(0):
            return True
        columns[v] = None
        return False

    if not dfs(0):
        return None
    rows = [tuple(columns[v][i] for v in range(g.n)) for i in range(k)]
    return Packing.from_rows("list", rows)


def find_independent_transversal(
    cover: CorrespondenceCover,
    allowed: Sequence[Sequence[int]],
    budget: Optional[int] = None,
) -> Optional[tuple[int, ...]]:
    """One slot per vertex, within allowed[v], no matched pair chosen."""
    g, k = cover.graph, cover.k
    for v, slots in enumerate(allowed):
        if any(not (0 <= s < k) for s in slots):
            raise ValueError(f"allowed[{v}] contains a slot outside 0..{k - 1}")
    order, _ = degeneracy_order(g)
    earlier = _earlier_neighbours(g, order)
    conf = _directed_conflicts(cover)
    b = _as_budget(budget)
    chosen: list[Optional[int]] = [None] * g.n

    def dfs(idx: int) -> bool:
        if idx == g.n:
            return True
        v = order[idx]
        forbidden = set()
        for u in earlier[idx]:
            edge_conf = conf.get((u, v))
            if edge_conf is None:
                continue
            s = edge_conf.get(chosen[u])
            if s is not None:
                forbidden.add(s)
        for s in sorted(allowed[v]):
            b.spend()
            if s in forbidden:
                continue
            chosen[v] = s
            if dfs(idx + 1):
                return True
        chosen[v] = None
        return False

    if not dfs(0):
        return None
    return tuple(chosen)  # type: ignore[arg-type]


def canonical_list_assignments(n: int, k: int) -> Iterator[ListAssignment]:
    """All k-list-assignments on n vertices, canonical up to colour
    relabelling.

    Canonical form: colours are named by first appearance in vertex-then-
    slot scan order (lists sorted ascending), so at each vertex the fresh
    colours are exactly the next unused integers.  Every assignment is a
    colour permutation of exactly one canonical one.  Colours stay below
    n*k, the palette needed when every vertex is private.
    """
    lists: list[tuple[int, ...]] = []

    def rec(v: int, m: int) -> Iterator[ListAssignment]:
        if v == n:
            yield ListAssignment(lists=tuple(lists))
            return
        for t in range(k + 1):
            fresh = tuple(range(m, m + t))
            for old in combinations(range(m), k - t):
                lists.append(old + fresh)
                yield from rec(v + 1, m + t)
                lists.pop()

    yield from rec(0, 0)


def decide_chi_star_list(
    g: Graph, k: int, budget: Optional[int] = None
) -> Optional[ListAssignment]:
    """Witness k-list-assignment with no L-packing, or None when every
    canonical assignment packs (certifying chi*_ell(g) <= k)."""
    b = _Budget(budget)
    for assignment in canonical_list_assignments(g.n, k):
        if find_list_packing(g, assignment, budget=b) is None:
            return assignment
    return None


def decide_chi_star_corr(
    g: Graph, k: int, budget: Optional[int] = None
) -> Optional[CorrespondenceCover]:
    """Witness k-fold cover with no packing, or None when all enumerated
    covers pack.

    Enumerates perfect per-edge matchings only, with the first edge fixed
    to the identity (a sound relabelling reduction); this under-
    approximates the witness space but the extremal covers in scope use
    perfect matchings.
    """
    edges = sorted(g.edges)
    b = _Budget(budget)
    identity = tuple((i, i) for i in range(k))

    def rec(idx: int, matchings: dict) -> Optional[CorrespondenceCover]:
        if idx == len(edges):
            cover = CorrespondenceCover.from_matchings(g, k, dict(matchings))
            if find_packing(cover, budget=b) is None:
                return cover
            return None
        e = edges[idx]
        if idx == 0:
            matchings[e] = identity
            found = rec(idx + 1, matchings)
            del matchings[e]
            return found
        for perm in permutations(range(k)):
            matchings[e] = tuple((i, perm[i]) for i in range(k))
            found = rec(idx + 1, matchings)
            if found is not None:
                return found
            del matchings[e]
        return None

    if not edges:
        # No edges: every cover packs (slot i to colouring i everywhere).
        return None
    return rec(0, {})
