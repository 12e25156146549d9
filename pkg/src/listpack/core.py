"""Data model for graphs, list-assignments, correspondence covers and packings.

Conventions used throughout the package:

  * Vertices are 0..n-1; edges are stored once, as ordered pairs (u, v)
    with u < v.
  * Colour lists are stored sorted ascending.  The *slot index* of a
    colour is its rank in the sorted list, so the list {1, 5, 9} has
    colour 5 at slot 1.
  * A correspondence cover keeps one partial matching per edge (u, v)
    with u < v; a pair (i, j) in that matching means slot i of u
    conflicts with slot j of v.  The reverse orientation is implied by
    inverting the injection.  Edges absent from the matchings map carry
    the empty matching.
  * A packing of size k is k rows of length n.  In "list" mode the
    entries are colour identifiers; in "cover" mode they are slot
    indices 0..k-1.

All types are immutable after construction and the validators are pure
functions, so everything here is safe to share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

SCHEMA_VERSION = "listpack/1"


def _normalize_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: frozenset[tuple[int, int]]

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        norm = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) has endpoint outside 0..{n - 1}")
            e = _normalize_edge(u, v)
            if e in norm:
                raise ValueError(f"duplicate edge {e}")
            norm.add(e)
        return Graph(n=n, edges=frozenset(norm))

    def neighbours(self) -> list[set[int]]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return nbrs

    def degrees(self) -> list[int]:
        return [len(s) for s in self.neighbours()]

    def max_degree(self) -> int:
        return max(self.degrees(), default=0) if self.n else 0


@dataclass(frozen=True)
class ListAssignment:
    """Per-vertex colour lists; each list is a sorted tuple of distinct
    non-negative integers."""

    lists: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_lists(lists: Iterable[Iterable[int]]) -> "ListAssignment":
        out = []
        for i, lst in enumerate(lists):
            t = tuple(sorted(lst))
            if len(set(t)) != len(t):
                raise ValueError(f"duplicate colour in list of vertex {i}")
            if any(c < 0 for c in t):
                raise ValueError(f"negative colour in list of vertex {i}")
            out.append(t)
        return ListAssignment(lists=tuple(out))

    @property
    def n(self) -> int:
        return len(self.lists)

    def uniform_size(self) -> int:
        """Common list size k; raises if the lists are not all equal length."""
        sizes = {len(lst) for lst in self.lists}
        if len(sizes) != 1:
            raise ValueError(f"lists have unequal sizes {sorted(sizes)}")
        return sizes.pop()


@dataclass(frozen=True)
class CorrespondenceCover:
    """A k-fold correspondence cover: per-vertex parts of k slots and a
    partial matching of slot pairs per edge.

    ``lists`` is populated when the cover was derived from a list
    assignment (see :func:`list_to_cover`); it lets list-mode packings be
    validated against the cover they came from.
    """

    graph: Graph
    k: int
    matchings: Mapping[tuple[int, int], tuple[tuple[int, int], ...]]
    lists: Optional[ListAssignment] = field(default=None, compare=False)

    @staticmethod
    def from_matchings(
        graph: Graph,
        k: int,
        matchings: Mapping[tuple[int, int], Iterable[tuple[int, int]]],
        lists: Optional[ListAssignment] = None,
    ) -> "CorrespondenceCover":
        norm = {}
        for (u, v), pairs in matchings.items():
            if u >= v:
                raise ValueError(f"matching key ({u},{v}) must satisfy u < v")
            norm[(u, v)] = tuple(sorted(tuple(p) for p in pairs))
        return CorrespondenceCover(graph=graph, k=k, matchings=norm, lists=lists)

    def matching(self, u: int, v: int) -> tuple[tuple[int, int], ...]:
        """Matching pairs oriented from u to v (inverted if u > v)."""
        if u < v:
            return self.matchings.get((u, v), ())
        return tuple((j, i) for i, j in self.matchings.get((v, u), ()))


@dataclass(frozen=True)
class Packing:
    """k mutually disjoint proper colourings, stored row-per-colouring."""

    k: int
    mode: str  # "list" or "cover"
    colourings: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(mode: str, rows: Iterable[Iterable[int]]) -> "Packing":
        t = tuple(tuple(r) for r in rows)
        if mode not in ("list", "cover"):
            raise ValueError(f"unknown packing mode {mode!r}")
        return Packing(k=len(t), mode=mode, colourings=t)

    @property
    def n(self) -> int:
        return len(self.colourings[0]) if self.colourings else 0


@dataclass(frozen=True)
class PartialPacking:
    """Like Packing but entries may be None (unassigned)."""

    k: int
    mode: str
    colourings: tuple[tuple[Optional[int], ...], ...]

    def assigned_count(self) -> int:
        return sum(
            1 for row in self.colourings for entry in row if entry is not None
        )


def validate_cover(cover: CorrespondenceCover) -> Optional[str]:
    """Return None if the cover satisfies all invariants, else a message
    naming the first violation found."""
    g = cover.graph
    if cover.k < 1:
        return f"fold k={cover.k} must be positive"
    for (u, v), pairs in sorted(cover.matchings.items()):
        if (u, v) not in g.edges:
            return f"matching on non-edge ({u},{v})"
        seen_i: set[int] = set()
        seen_j: set[int] = set()
        for i, j in pairs:
            if not (0 <= i < cover.k and 0 <= j < cover.k):
                return f"edge ({u},{v}): slot pair ({i},{j}) out of range 0..{cover.k - 1}"
            if i in seen_i:
                return f"edge ({u},{v}): slot {i} of {u} matched twice"
            if j in seen_j:
                return f"edge ({u},{v}): slot {j} of {v} matched twice"
            seen_i.add(i)
            seen_j.add(j)
    return None


def _list_packing_violation(
    g: Graph, lists: ListAssignment, p: Packing
) -> Optional[str]:
    for row in p.colourings:
        if len(row) != g.n:
            return f"colouring has {len(row)} entries, expected {g.n}"
    for v in range(g.n):
        allowed = set(lists.lists[v])
        column = [row[v] for row in p.colourings]
        for i, c in enumerate(column):
            if c not in allowed:
                return f"vertex {v}: colour {c} of colouring {i} not in its list"
        if len(set(column)) != len(column):
            return f"vertex {v}: colourings not disjoint"
    for u, v in sorted(g.edges):
        for i, row in enumerate(p.colourings):
            if row[u] == row[v]:
                return f"edge ({u},{v}): colouring {i} not proper"
    return None


def validate_packing(cover: CorrespondenceCover, p: Packing) -> Optional[str]:
    """Return None if p is a valid packing of the cover, else a message.

    Cover-mode packings are checked against the slot matchings; list-mode
    packings require the cover to carry its source lists.
    """
    g = cover.graph
    if p.k != cover.k:
        return f"packing size {p.k} != cover fold {cover.k}"
    if p.mode == "list":
        if cover.lists is None:
            return "list-mode packing but cover has no source lists"
        return _list_packing_violation(g, cover.lists, p)
    for row in p.colourings:
        if len(row) != g.n:
            return f"colouring has {len(row)} entries, expected {g.n}"
    for v in range(g.n):
        column = [row[v] for row in p.colourings]
        for i, s in enumerate(column):
            if not (0 <= s < cover.k):
                return f"vertex {v}: slot {s} of colouring {i} out of range"
        if len(set(column)) != len(column):
            return f"vertex {v}: colourings not disjoint"
    for (u, v), pairs in sorted(cover.matchings.items()):
        forbidden = set(pairs)
        for i, row in enumerate(p.colourings):
            if (row[u], row[v]) in forbidden:
                return f"edge ({u},{v}): colouring {i} uses matched slot pair"
    return None


def list_to_cover(g: Graph, lists: ListAssignment) -> CorrespondenceCover:
    """The list-cover: slot i of u conflicts with slot j of v exactly when
    the i-th colour of L(u) equals the j-th colour of L(v)."""
    if lists.n != g.n:
        raise ValueError(f"{lists.n} lists for {g.n} vertices")
    k = lists.uniform_size()
    matchings = {}
    for u, v in sorted(g.edges):
        lu, lv = lists.lists[u], lists.lists[v]
        pos_v = {c: j for j, c in enumerate(lv)}
        pairs = tuple(
            (i, pos_v[c]) for i, c in enumerate(lu) if c in pos_v
        )
        if pairs:
            matchings[(u, v)] = pairs
    return CorrespondenceCover.from_matchings(g, k, matchings, lists=lists)


def packing_to_slots(lists: ListAssignment, p: Packing) -> Packing:
    """Translate a list-mode packing to slot indices."""
    if p.mode != "list":
        raise ValueError("expected a list-mode packing")
    rows = []
    for row in p.colourings:
        rows.append(
            tuple(lists.lists[v].index(c) for v, c in enumerate(row))
        )
    return Packing.from_rows("cover", rows)


def slots_to_colours(lists: ListAssignment, p: Packing) -> Packing:
    """Translate a cover-mode packing back to colour identifiers."""
    if p.mode != "cover":
        raise ValueError("expected a cover-mode packing")
    rows = []
    for row in p.colourings:
        rows.append(tuple(lists.lists[v][s] for v, s in enumerate(row)))
    return Packing.from_rows("list", rows)


def degeneracy_order(g: Graph) -> tuple[tuple[int, ...], int]:
    """Order where every vertex has at most d earlier neighbours, and the
    degeneracy d itself (min-degree peeling, removal order reversed)."""
    nbrs = g.neighbours()
    deg = [len(s) for s in nbrs]
    removed = [False] * g.n
    removal: list[int] = []
    d = 0
    for _ in range(g.n):
        v = min(
            (w for w in range(g.n) if not removed[w]), key=lambda w: (deg[w], w)
        )
        d = max(d, deg[v])
        removed[v] = True
        removal.append(v)
        for w in nbrs[v]:
            if not removed[w]:
                deg[w] -= 1
    return tuple(reversed(removal)), d


# ---------------------------------------------------------------------------
# JSON instance formats (all arrays 0-indexed):
#   list mode:  {"n": int, "edges": [[u,v],...], "lists": [[c,...],...]}
#   cover mode: {"n", "edges", "k", "matchings": {"u-v": [[i,j],...]}}
#   packing:    {"k", "mode": "list"|"cover", "colourings": [[...],...]}
# ---------------------------------------------------------------------------


class InstanceFormatError(ValueError):
    """Raised when an instance/packing JSON document is malformed."""


def _graph_from_obj(obj: dict) -> Graph:
    try:
        n = obj["n"]
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError(f"bad graph object: {exc}") from exc
    try:
        return Graph.from_edges(int(n), edges)
    except ValueError as exc:
        raise InstanceFormatError(str(exc)) from exc


def instance_from_obj(obj: dict):
    """Parse an instance dict; returns either (Graph, ListAssignment) for
    list mode or a CorrespondenceCover for cover mode."""
    if not isinstance(obj, dict):
        raise InstanceFormatError("instance must be a JSON object")
    g = _graph_from_obj(obj)
    if "lists" in obj:
        try:
            lists = ListAssignment.from_lists(obj["lists"])
        except (TypeError, ValueError) as exc:
            raise InstanceFormatError(f"bad lists: {exc}") from exc
        if lists.n != g.n:
            raise InstanceFormatError(f"{lists.n} lists for {g.n} vertices")
        return g, lists
    if "matchings" in obj:
        try:
            k = int(obj["k"])
            matchings = {}
            for key, pairs in obj["matchings"].items():
                u, v = key.split("-")
                matchings[(int(u), int(v))] = [
                    (int(i), int(j)) for i, j in pairs
                ]
            cover = CorrespondenceCover.from_matchings(g, k, matchings)
        except (KeyError, TypeError, ValueError) as exc:
            raise InstanceFormatError(f"bad cover object: {exc}") from exc
        err = validate_cover(cover)
        if err is not None:
            raise InstanceFormatError(err)
        return cover
    raise InstanceFormatError("instance needs either 'lists' or 'matchings'")


def instance_to_obj(instance) -> dict:
    if isinstance(instance, CorrespondenceCover):
        g = instance.graph
        return {
            "n": g.n,
            "edges": [list(e) for e in sorted(g.edges)],
            "k": instance.k,
            "matchings": {
                f"{u}-{v}": [list(p) for p in pairs]
                for (u, v), pairs in sorted(instance.matchings.items())
            },
        }
    g, lists = instance
    return {
        "n": g.n,
        "edges": [list(e) for e in sorted(g.edges)],
        "lists": [list(lst) for lst in lists.lists],
    }


def packing_from_obj(obj: dict) -> Packing:
    try:
        return Packing.from_rows(
            obj["mode"], [[int(c) for c in row] for row in obj["colourings"]]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InstanceFormatError(f"bad packing object: {exc}") from exc


def packing_to_obj(p: Packing) -> dict:
    return {
        "k": p.k,
        "mode": p.mode,
        "colourings": [list(row) for row in p.colourings],
    }


def dumps(obj: dict) -> str:
    """Single-line JSON with deterministic key order."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
