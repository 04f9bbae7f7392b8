"""Undirected side: orientations, rooted-tree packings, edge decompositions.

Orientation search is a reversal heuristic with an exhaustive fallback.
Every returned orientation is re-validated, so the heuristic only affects
speed, never soundness; the fallback (all 2^|E| orientations, canonical
order) makes the search complete at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from . import sfm
from .connectivity import (
    Certificate,
    check_independent_placement,
    check_m_connected,
    check_partition_connected,
    deficiency_objective,
)
from .graphs import RootedDigraph, RootedGraph, SizeLimitError, tree_vertices
from .packing import Failure, Packing, TheoremViolation, Tree, find_packing

MAX_ORIENTATION_EXP = 20


@dataclass(frozen=True)
class Orientation:
    """Per-edge direction assignment: edge-id -> (tail, head)."""

    directions: dict

    def to_json(self) -> dict:
        return {"edges": {e: list(d) for e, d in sorted(self.directions.items())}}


def induced_digraph(g: RootedGraph, orientation: Orientation) -> RootedDigraph:
    arcs = [(e, *orientation.directions[e]) for e, _, _ in g.edges]
    return RootedDigraph(g.vertices, arcs, g.roots, g.matroid)


def _orientation_from_bits(g: RootedGraph, bits: int) -> Orientation:
    dirs = {}
    for i, (e, u, v) in enumerate(g.edges):
        dirs[e] = (u, v) if not bits >> i & 1 else (v, u)
    return Orientation(dirs)


def _reverse_path(inst: RootedDigraph, u: str, v: str) -> Optional[list[str]]:
    """Arc ids of a shortest directed u->v path, or None."""
    from collections import deque

    prev: dict[str, tuple[str, str]] = {}
    dq = deque([u])
    seen = {u}
    while dq:
        w = dq.popleft()
        if w == v:
            break
        for a, t, h in inst.arcs:
            if t == w and h not in seen:
                seen.add(h)
                prev[h] = (w, a)
                dq.append(h)
    if v not in seen:
        return None
    path = []
    w = v
    while w != u:
        w, a = prev[w]
        path.append(a)
    return path


def orient_m_connected(g: RootedGraph, engine: str = "brute",
                       max_exp: int = MAX_ORIENTATION_EXP,
                       partition_cap: int = 12) -> Union[Orientation, Certificate]:
    """Orientation whose induced digraph satisfies condition (2), or a certificate."""
    cert = check_partition_connected(g, cap=partition_cap)
    if not cert.ok:
        return cert

    orient = _orientation_from_bits(g, 0)
    result = _reversal_heuristic(g, orient, engine)
    if result is not None:
        return result

    if len(g.edges) > max_exp:
        raise SizeLimitError(
            "exhaustive orientation fallback capped at 2^%d edges" % max_exp
        )
    for bits in range(1 << len(g.edges)):
        cand = _orientation_from_bits(g, bits)
        if check_m_connected(induced_digraph(g, cand), engine=engine).ok:
            return cand
    raise TheoremViolation(
        "partition-connected graph admits no valid orientation (tripwire)"
    )


def _reversal_heuristic(g: RootedGraph, orient: Orientation,
                        engine: str) -> Optional[Orientation]:
    """Fix deficient sets by reversing a safe exit path; None when stuck."""
    k = g.matroid.full_rank()
    budget = 2 * len(g.edges) * max(k, 1) + 4
    dirs = dict(orient.directions)
    for _ in range(budget):
        inst = induced_digraph(g, Orientation(dirs))
        cert = check_m_connected(inst, engine=engine)
        if cert.ok:
            return Orientation(dirs)
        X = cert.vertex_set
        obj = deficiency_objective(inst)
        vidx = {v: i for i, v in enumerate(inst.vertices)}
        moved = False
        for u in sorted(X):
            for v in sorted(set(g.vertices) - X):
                path = _reverse_path(inst, u, v)
                if path is None:
                    continue
                # safe when no deficient-or-tight set holds v without u
                guarded = sfm.minimize(
                    sfm.SubmodularObjective(
                        obj.n, obj.evaluate,
                        ("contains-excludes", vidx[v], vidx[u])),
                    engine=engine)
                if guarded.value < 1:
                    continue
                for a in path:
                    t, h = dirs[a]
                    dirs[a] = (h, t)
                moved = True
                break
            if moved:
                break
        if not moved:
            return None
    return None


# -- tree packings -----------------------------------------------------------------


@dataclass(frozen=True)
class TreePacking:
    trees: tuple  # of Tree, arcs field holding edge ids

    def edge_set(self) -> frozenset:
        out: frozenset = frozenset()
        for t in self.trees:
            out |= t.arcs
        return out

    def to_json(self) -> dict:
        return {"trees": [{"root_element": t.root_element,
                           "root_vertex": t.root_vertex,
                           "edges": sorted(t.arcs)} for t in self.trees]}


def _is_tree(edge_ids, g: RootedGraph, root: str) -> bool:
    verts = {root}
    adj: dict = {root: []}
    for e in edge_ids:
        u, v = g.edge_map[e]
        for w in (u, v):
            verts.add(w)
            adj.setdefault(w, [])
        adj[u].append(v)
        adj[v].append(u)
    if len(edge_ids) != len(verts) - 1:
        return False
    seen = {root}
    stack = [root]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == verts


def verify_tree_packing(g: RootedGraph, packing: TreePacking) -> Optional[Failure]:
    """Undirected verifier: edge-disjoint rooted trees, per-vertex base condition."""
    placed = dict(g.roots)
    seen: set = set()
    for t in packing.trees:
        if t.root_element not in placed:
            return Failure("unknown-root-element", t.root_element)
        if placed[t.root_element] != t.root_vertex:
            return Failure("root-mismatch", t.root_element)
        for e in t.arcs:
            if e not in g.edge_map:
                return Failure("unknown-edge", e)
            if e in seen:
                return Failure("duplicate-edge", e)
            seen.add(e)
        if not _is_tree(t.arcs, g, t.root_vertex):
            return Failure("not-a-tree", t.root_element)
    if sorted(t.root_element for t in packing.trees) != sorted(placed):
        return Failure("missing-tree", "one tree per root element required")
    covers = {v: set() for v in g.vertices}
    for t in packing.trees:
        verts = {t.root_vertex}
        for e in t.arcs:
            verts.update(g.edge_map[e])
        for v in verts:
            covers[v].add(t.root_element)
    for v in g.vertices:
        if not g.matroid.is_base(covers[v]):
            return Failure("not-a-base", v)
    return None


def pack_undirected(g: RootedGraph, engine: str = "brute",
                    **caps) -> Union[TreePacking, Certificate]:
    """Orient, pack arborescences, then forget the orientation."""
    cert = check_independent_placement(g)
    if not cert.ok:
        return cert
    oriented = orient_m_connected(g, engine=engine, **caps)
    if isinstance(oriented, Certificate):
        return oriented
    inst = induced_digraph(g, oriented)
    packed = find_packing(inst, engine=engine)
    if isinstance(packed, Certificate):
        raise TheoremViolation(
            "valid orientation failed to pack (tripwire): %r" % (packed,)
        )
    trees = TreePacking(tuple(Tree(t.root_element, t.root_vertex, t.arcs)
                              for t in packed.trees))
    failure = verify_tree_packing(g, trees)
    if failure is not None:
        raise TheoremViolation("tree packing failed verification: %r" % (failure,))
    return trees


class IdentityViolation(ValueError):
    """|E| + |S| differs from rank * |V|; no full decomposition can exist."""


def decompose_edges(g: RootedGraph, engine: str = "brute",
                    **caps) -> Union[TreePacking, Certificate]:
    """Tree packing whose edge sets partition E (full decomposition)."""
    k = g.matroid.full_rank()
    lhs = len(g.edges) + len(g.roots)
    rhs = k * len(g.vertices)
    if lhs != rhs:
        raise IdentityViolation(
            "|E|+|S| = %d but rank*|V| = %d" % (lhs, rhs)
        )
    packed = pack_undirected(g, engine=engine, **caps)
    if isinstance(packed, Certificate):
        return packed
    if packed.edge_set() != frozenset(g.edge_map):
        raise TheoremViolation(
            "counting identity holds but the packing missed edges (tripwire)"
        )
    return packed


def per_edge_set_diagnostic(g: RootedGraph, cap: int = 16) -> Optional[frozenset]:
    """Optional exhaustive check of the per-edge-set decomposition condition.

    Returns a violating nonempty F (first in canonical subset order) or None.
    Condition: |F| + |S_{V(F)}| <= k|V(F)| - k + rank(S_{V(F)}).
    """
    from .graphs import iter_subsets

    if len(g.edges) > cap:
        raise SizeLimitError("edge-subset diagnostic capped at %d edges" % cap)
    k = g.matroid.full_rank()
    ids = [e for e, _, _ in g.edges]
    for F in iter_subsets(ids, nonempty=True):
        verts: set = set()
        for e in F:
            verts.update(g.edge_map[e])
        roots_in = g.elements_in(verts)
        if len(F) + len(roots_in) > k * len(verts) - k + g.matroid.rank(roots_in):
            return F
    return None
