"""Rooted digraph/graph instances and desk-scale counting helpers.

Vertices, arc/edge ids and root element ids are strings in I/O; instances
keep dense index maps internally.  Parallel arcs are first-class through
their ids.  Instances are immutable after construction.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Sequence

from .matroid import Matroid

MAX_PARTITION_VERTICES = 12


class InstanceError(ValueError):
    """Malformed instance or query, e.g. unknown ids or empty vertex sets."""


class SizeLimitError(RuntimeError):
    """An enumeration cap was exceeded; raise loudly rather than hang."""


def _validate_roots(vertices, roots, matroid):
    vset = set(vertices)
    elems = [e for e, _ in roots]
    if len(set(elems)) != len(elems):
        raise InstanceError("duplicate root element ids")
    for e, v in roots:
        if v not in vset:
            raise InstanceError("root %r placed at unknown vertex %r" % (e, v))
    if set(elems) != set(matroid.ground):
        raise InstanceError("root elements do not match the matroid ground set")


class RootedDigraph:
    """Digraph with roots: (D, S, pi) plus a matroid oracle on S."""

    def __init__(self, vertices: Sequence[str],
                 arcs: Sequence[tuple[str, str, str]],
                 roots: Sequence[tuple[str, str]],
                 matroid: Matroid):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InstanceError("duplicate vertex ids")
        vset = set(self.vertices)
        self.arcs = tuple((a, t, h) for a, t, h in arcs)
        ids = [a for a, _, _ in self.arcs]
        if len(set(ids)) != len(ids):
            raise InstanceError("duplicate arc ids")
        for a, t, h in self.arcs:
            if t not in vset or h not in vset:
                raise InstanceError("arc %r has undeclared endpoint" % a)
            if t == h:
                raise InstanceError("self-loop arc %r rejected" % a)
        self.roots = tuple((e, v) for e, v in roots)
        self.matroid = matroid
        _validate_roots(self.vertices, self.roots, matroid)
        self.arc_map = {a: (t, h) for a, t, h in self.arcs}
        self.placement = {e: v for e, v in self.roots}
        self._at_vertex: dict[str, frozenset] = {v: frozenset() for v in self.vertices}
        for e, v in self.roots:
            self._at_vertex[v] = self._at_vertex[v] | {e}

    def elements_at(self, v: str) -> frozenset:
        """S_v: root elements placed at the vertex."""
        return self._at_vertex[v]

    def elements_in(self, X: Iterable[str]) -> frozenset:
        """S_X: root elements placed inside the vertex set."""
        out: frozenset = frozenset()
        for v in X:
            out |= self._at_vertex[v]
        return out

    def without_arc(self, arc_id: str) -> "RootedDigraph":
        if arc_id not in self.arc_map:
            raise InstanceError("unknown arc id %r" % arc_id)
        return RootedDigraph(
            self.vertices,
            [a for a in self.arcs if a[0] != arc_id],
            self.roots,
            self.matroid,
        )

    def with_root(self, element: str, vertex: str, matroid: Matroid) -> "RootedDigraph":
        return RootedDigraph(
            self.vertices, self.arcs, self.roots + ((element, vertex),), matroid
        )


class RootedGraph:
    """Undirected counterpart: (G, S, pi) plus the matroid oracle."""

    def __init__(self, vertices: Sequence[str],
                 edges: Sequence[tuple[str, str, str]],
                 roots: Sequence[tuple[str, str]],
                 matroid: Matroid):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise InstanceError("duplicate vertex ids")
        vset = set(self.vertices)
        self.edges = tuple((e, u, v) for e, u, v in edges)
        ids = [e for e, _, _ in self.edges]
        if len(set(ids)) != len(ids):
            raise InstanceError("duplicate edge ids")
        for e, u, v in self.edges:
            if u not in vset or v not in vset:
                raise InstanceError("edge %r has undeclared endpoint" % e)
            if u == v:
                raise InstanceError("self-loop edge %r rejected" % e)
        self.roots = tuple((e, v) for e, v in roots)
        self.matroid = matroid
        _validate_roots(self.vertices, self.roots, matroid)
        self.edge_map = {e: (u, v) for e, u, v in self.edges}
        self.placement = {e: v for e, v in self.roots}
        self._at_vertex: dict[str, frozenset] = {v: frozenset() for v in self.vertices}
        for e, v in self.roots:
            self._at_vertex[v] = self._at_vertex[v] | {e}

    def elements_at(self, v: str) -> frozenset:
        return self._at_vertex[v]

    def elements_in(self, X: Iterable[str]) -> frozenset:
        out: frozenset = frozenset()
        for v in X:
            out |= self._at_vertex[v]
        return out


class Partition:
    """Partition of the vertex set into disjoint nonempty blocks."""

    def __init__(self, blocks: Sequence[Iterable[str]], vertices: Sequence[str]):
        self.blocks = tuple(frozenset(b) for b in blocks)
        seen: set = set()
        for b in self.blocks:
            if not b:
                raise InstanceError("empty partition block")
            if b & seen:
                raise InstanceError("overlapping partition blocks")
            seen |= b
        if seen != set(vertices):
            raise InstanceError("partition does not cover the vertex set")

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(self.blocks)


# -- counting ---------------------------------------------------------------


def in_degree(inst: RootedDigraph, X: Iterable[str]) -> int:
    """Number of arcs entering X, with multiplicity."""
    xs = frozenset(X)
    if not xs:
        raise InstanceError("in-degree of the empty set is undefined here")
    if not xs <= set(inst.vertices):
        raise InstanceError("vertex set not within the instance")
    return sum(1 for _, t, h in inst.arcs if h in xs and t not in xs)


def entering_arcs(inst: RootedDigraph, X: Iterable[str]) -> list[str]:
    xs = frozenset(X)
    return [a for a, t, h in inst.arcs if h in xs and t not in xs]


def cross_edges(g: RootedGraph, partition: Partition) -> int:
    """Edges with endpoints in distinct blocks, with multiplicity."""
    block_of = {}
    for i, b in enumerate(partition):
        for v in b:
            block_of[v] = i
    return sum(1 for _, u, v in g.edges if block_of[u] != block_of[v])


def reachable_within(inst: RootedDigraph, v: str, X: Iterable[str],
                     arc_filter: Callable[[str], bool] | None = None) -> frozenset:
    """Vertices of X from which v is reachable in D[X] via arcs passing the filter."""
    xs = frozenset(X)
    if v not in xs:
        raise InstanceError("target vertex %r not in the induced set" % v)
    preds: dict[str, list[str]] = {u: [] for u in xs}
    for a, t, h in inst.arcs:
        if t in xs and h in xs and (arc_filter is None or arc_filter(a)):
            preds[h].append(t)
    seen = {v}
    stack = [v]
    while stack:
        for u in preds[stack.pop()]:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    return frozenset(seen)


def is_arborescence(arc_ids: Iterable[str], inst: RootedDigraph, root: str) -> bool:
    """True iff the arcs plus the isolated root form an arborescence rooted there."""
    ids = list(arc_ids)
    for a in ids:
        if a not in inst.arc_map:
            raise InstanceError("unknown arc id %r" % a)
    if len(set(ids)) != len(ids):
        return False
    pairs = [inst.arc_map[a] for a in ids]
    verts = {root}
    for t, h in pairs:
        verts.add(t)
        verts.add(h)
    indeg = {u: 0 for u in verts}
    children: dict[str, list[str]] = {u: [] for u in verts}
    for t, h in pairs:
        indeg[h] += 1
        children[t].append(h)
    if indeg[root] != 0:
        return False
    if any(indeg[u] != 1 for u in verts if u != root):
        return False
    seen = {root}
    stack = [root]
    while stack:
        for w in children[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == verts


def tree_vertices(arc_ids: Iterable[str], inst: RootedDigraph, root: str) -> frozenset:
    verts = {root}
    for a in arc_ids:
        t, h = inst.arc_map[a]
        verts.add(t)
        verts.add(h)
    return frozenset(verts)


# -- enumeration helpers ------------------------------------------------------


def iter_partitions(vertices: Sequence[str], cap: int = MAX_PARTITION_VERTICES) -> Iterator[list[frozenset]]:
    """All set partitions in restricted-growth-string order; hard size cap."""
    n = len(vertices)
    if n > cap:
        raise SizeLimitError(
            "partition enumeration capped at %d vertices (got %d)" % (cap, n)
        )
    if n == 0:
        return
    rgs = [0] * n

    while True:
        nblocks = max(rgs) + 1
        blocks = [set() for _ in range(nblocks)]
        for i, b in enumerate(rgs):
            blocks[b].add(vertices[i])
        yield [frozenset(b) for b in blocks]
        # next restricted growth string
        i = n - 1
        while i > 0:
            if rgs[i] <= max(rgs[:i]):
                rgs[i] += 1
                for j in range(i + 1, n):
                    rgs[j] = 0
                break
            i -= 1
        else:
            return


def iter_subsets(items: Sequence, nonempty: bool = False) -> Iterator[frozenset]:
    """Subsets in canonical order: increasing size, then lexicographic."""
    import itertools

    for k in range(1 if nonempty else 0, len(items) + 1):
        for combo in itertools.combinations(items, k):
            yield frozenset(combo)
