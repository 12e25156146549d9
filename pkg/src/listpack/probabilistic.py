"""Randomized packers.

pack_fractional turns a proper fractional (a,b)-colouring into an
L-packing: every colour in the union of lists gets a uniformly random
vector in {0..a-1}^k, each vertex stacks its k list-colour vectors into
a k x k matrix, and a round succeeds when every vertex's matrix has a
transversal through values of its own fractional colour class.  The
transversal decodes into k disjoint proper colourings: disjoint because
the transversal is a permutation of list positions, proper because
adjacent colour classes are disjoint so adjacent vertices can never
accept the same vector entry.

pack_bipartite_lll packs a correspondence cover of a bipartite graph:
the B side takes uniformly random slot orderings, an A vertex is bad
when its conflict matrix (colouring i vs own slot s) has no
0-transversal, and bad vertices trigger Moser-Tardos resampling of
their neighbourhood orderings, lowest vertex id first.

Both packers validate their output before returning it; a returned
packing is always valid, even when the guarantees behind the retry
budgets do not hold for the instance at hand.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .constructive import PackingError, bipartition
from .core import (
    CorrespondenceCover,
    Graph,
    ListAssignment,
    Packing,
    list_to_cover,
    validate_packing,
)
from .exact import _directed_conflicts
from .matrixlab import BinaryMatrix, one_transversal


@dataclass(frozen=True)
class FractionalColoring:
    """Proper (a,b)-colouring: each vertex gets a b-subset of {0..a-1},
    adjacent vertices disjoint subsets."""

    a: int
    b: int
    assignment: tuple[frozenset[int], ...]

    @classmethod
    def from_sets(cls, a: int, b: int, sets) -> "FractionalColoring":
        return cls(a, b, tuple(frozenset(s) for s in sets))


def validate_fractional(g: Graph, fc: FractionalColoring) -> Optional[str]:
    if len(fc.assignment) != g.n:
        return f"assignment covers {len(fc.assignment)} vertices, graph has {g.n}"
    for v, s in enumerate(fc.assignment):
        if len(s) != fc.b:
            return f"vertex {v}: class size {len(s)} != b = {fc.b}"
        if any(not (0 <= c < fc.a) for c in s):
            return f"vertex {v}: colour outside 0..{fc.a - 1}"
    for u, v in sorted(g.edges):
        if fc.assignment[u] & fc.assignment[v]:
            return f"edge ({u},{v}): classes intersect"
    return None


def fc_from_bipartition(g: Graph) -> FractionalColoring:
    """(2,1)-colouring from a bipartition; raises on odd cycles."""
    parts = bipartition(g)
    if parts is None:
        raise ValueError("graph is not bipartite")
    side1 = set(parts[1])
    return FractionalColoring.from_sets(
        2, 1, [{1} if v in side1 else {0} for v in range(g.n)]
    )


def fc_from_colouring(colours: list[int]) -> FractionalColoring:
    """(t,1)-colouring from a proper colouring with colours 0..t-1."""
    t = max(colours) + 1 if colours else 1
    return FractionalColoring.from_sets(t, 1, [{c} for c in colours])


def pack_fractional(
    g: Graph,
    lists: ListAssignment,
    fc: FractionalColoring,
    max_rounds: int = 100,
    seed: int = 0,
) -> Optional[Packing]:
    """Sample colour vectors until every vertex matrix has a transversal
    through its fractional class; None after max_rounds failures."""
    err = validate_fractional(g, fc)
    if err is not None:
        raise ValueError(err)
    k = lists.uniform_size()
    palette = sorted({c for lst in lists.lists for c in lst})
    rng = np.random.Generator(np.random.Philox(key=seed))
    for _ in range(max_rounds):
        x = {ell: rng.integers(0, fc.a, size=k) for ell in palette}
        rows = [[0] * g.n for _ in range(k)]
        ok = True
        for v in range(g.n):
            lv = lists.lists[v]
            cv = fc.assignment[v]
            indicator = BinaryMatrix.from_rows(
                [[1 if int(x[ell][i]) in cv else 0 for ell in lv] for i in range(k)]
            )
            sigma = one_transversal(indicator)
            if sigma is None:
                ok = False
                break
            for i in range(k):
                rows[i][v] = lv[sigma[i]]
        if ok:
            packing = Packing.from_rows("list", [tuple(r) for r in rows])
            err = validate_packing(list_to_cover(g, lists), packing)
            if err is not None:
                raise PackingError(f"internal validation failed: {err}")
            return packing
    return None


def pack_bipartite_lll(
    cover: CorrespondenceCover,
    max_resamples: Optional[int] = None,
    seed: int = 0,
    on_resample: Optional[Callable[[int], None]] = None,
) -> Optional[Packing]:
    """Moser-Tardos packer for covers of bipartite graphs.

    A is the part with the smaller maximum degree; B-side slot orderings
    are sampled uniformly, bad A vertices (no 0-transversal of their
    conflict matrix) have their neighbourhoods resampled until none are
    left or the budget (default 10 * |A|) runs out.  on_resample,
    if given, receives the bad vertex id at every resampling step.
    """
    g, k = cover.graph, cover.k
    parts = bipartition(g)
    if parts is None:
        raise ValueError("graph is not bipartite")
    deg = g.degrees()
    d0 = max((deg[v] for v in parts[0]), default=0)
    d1 = max((deg[v] for v in parts[1]), default=0)
    a_side = parts[0] if d0 <= d1 else parts[1]
    b_side = parts[1] if d0 <= d1 else parts[0]
    if max_resamples is None:
        max_resamples = 10 * len(a_side)
    conf = _directed_conflicts(cover)
    nbrs = g.neighbours()
    rng = np.random.Generator(np.random.Philox(key=seed))

    ordering: dict[int, list[int]] = {
        b: [int(s) for s in rng.permutation(k)] for b in b_side
    }

    def conflict_matrix(a: int) -> BinaryMatrix:
        # entry (i, s): slot s of a collides with some neighbour's
        # colouring-i choice through the edge matching
        bits = [[0] * k for _ in range(k)]
        for b in nbrs[a]:
            edge_conf = conf.get((b, a))
            if edge_conf is None:
                continue
            for i in range(k):
                s = edge_conf.get(ordering[b][i])
                if s is not None:
                    bits[i][s] = 1
        return BinaryMatrix.from_rows(bits)

    def zero_trans(a: int) -> Optional[tuple[int, ...]]:
        m = conflict_matrix(a)
        complement = BinaryMatrix.from_rows(
            [[1 - e for e in row] for row in m.bits]
        )
        return one_transversal(complement)

    resamples = 0
    while True:
        bad = next((a for a in a_side if zero_trans(a) is None), None)
        if bad is None:
            break
        if resamples >= max_resamples:
            return None
        resamples += 1
        if on_resample is not None:
            on_resample(bad)
        for b in nbrs[bad]:
            ordering[b] = [int(s) for s in rng.permutation(k)]

    rows = [[0] * g.n for _ in range(k)]
    for b in b_side:
        for i in range(k):
            rows[i][b] = ordering[b][i]
    for a in a_side:
        sigma = zero_trans(a)
        assert sigma is not None
        for i in range(k):
            rows[i][a] = sigma[i]
    packing = Packing.from_rows("cover", [tuple(r) for r in rows])
    err = validate_packing(cover, packing)
    if err is not None:
        raise PackingError(f"internal validation failed: {err}")
    return packing
