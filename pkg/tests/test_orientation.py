import random

import pytest

from conftest import graph
from arbopack.connectivity import (
    Certificate,
    check_m_connected,
    check_partition_connected,
)
from arbopack.matroid import FreeMatroid, UniformMatroid
from arbopack.orientation import (
    IdentityViolation,
    Orientation,
    TreePacking,
    decompose_edges,
    induced_digraph,
    orient_m_connected,
    pack_undirected,
    per_edge_set_diagnostic,
    verify_tree_packing,
)
from arbopack.packing import Tree, find_packing


def orientation_exists_by_enumeration(g):
    """Independent oracle: try all 2^|E| orientations."""
    from arbopack.orientation import _orientation_from_bits

    for bits in range(1 << len(g.edges)):
        d = induced_digraph(g, _orientation_from_bits(g, bits))
        if check_m_connected(d).ok:
            return True
    return False


# -- orientation -------------------------------------------------------------------


def test_single_edge_oriented_away_from_root():
    g = graph(["a", "b"], ["e1:a-b"], ["s1@a"], FreeMatroid(["s1"]))
    out = orient_m_connected(g)
    assert isinstance(out, Orientation)
    assert out.directions["e1"] == ("a", "b")


def test_triangle_two_roots_certificate():
    g = graph(["a", "b", "c"], ["e1:a-b", "e2:b-c", "e3:c-a"],
              ["s1@a", "s2@a"], FreeMatroid(["s1", "s2"]))
    assert not orientation_exists_by_enumeration(g)
    out = orient_m_connected(g)
    assert isinstance(out, Certificate) and out.kind == "violated-partition"


def test_cycle_gets_directed_cycle():
    g = graph(["a", "b", "c"], ["e1:a-b", "e2:b-c", "e3:c-a"], ["s1@a"],
              FreeMatroid(["s1"]))
    out = orient_m_connected(g)
    assert isinstance(out, Orientation)
    assert check_m_connected(induced_digraph(g, out)).ok


def test_orientation_equivalence_random():
    rng = random.Random(59)
    for _ in range(60):
        n = rng.randint(1, 4)
        verts = ["v%d" % i for i in range(n)]
        m = rng.randint(0, 5) if n > 1 else 0
        edges = []
        for i in range(m):
            u, w = rng.sample(verts, 2)
            edges.append("e%d:%s-%s" % (i, u, w))
        t = rng.randint(1, 2)
        elems = ["s%d" % i for i in range(t)]
        roots = ["%s@%s" % (e, rng.choice(verts)) for e in elems]
        matroid = (FreeMatroid(elems) if rng.random() < 0.5
                   else UniformMatroid(elems, rng.randint(1, t)))
        g = graph(verts, edges, roots, matroid)
        exists = orientation_exists_by_enumeration(g)
        assert check_partition_connected(g).ok == exists
        out = orient_m_connected(g)
        assert isinstance(out, Orientation) == exists


# -- undirected packing ------------------------------------------------------------------


def test_path_graph_single_tree():
    g = graph(["a", "b", "c"], ["e1:a-b", "e2:b-c"], ["s1@a"],
              FreeMatroid(["s1"]))
    out = pack_undirected(g)
    assert isinstance(out, TreePacking)
    assert out.trees[0].arcs == {"e1", "e2"}


def test_two_parallel_edges_two_trees():
    g = graph(["a", "b"], ["e1:a-b", "e2:a-b"], ["s1@a", "s2@a"],
              FreeMatroid(["s1", "s2"]))
    out = pack_undirected(g)
    assert isinstance(out, TreePacking)
    assert {len(t.arcs) for t in out.trees} == {1}
    assert verify_tree_packing(g, out) is None


def test_disconnected_graph_certificate():
    g = graph(["a", "b"], [], ["s1@a"], FreeMatroid(["s1"]))
    out = pack_undirected(g)
    assert isinstance(out, Certificate) and out.kind == "violated-partition"


def test_round_trip_reorientation():
    # trees re-oriented away from their roots pack the chosen orientation
    rng = random.Random(61)
    packed = 0
    while packed < 20:
        n = rng.randint(2, 4)
        verts = ["v%d" % i for i in range(n)]
        m = rng.randint(n - 1, 5)
        edges = []
        for i in range(m):
            u, w = rng.sample(verts, 2)
            edges.append("e%d:%s-%s" % (i, u, w))
        g = graph(verts, edges, ["s0@%s" % rng.choice(verts)],
                  FreeMatroid(["s0"]))
        out = pack_undirected(g)
        if not isinstance(out, TreePacking):
            continue
        packed += 1
        # orient each tree away from its root by BFS and re-verify directed
        arcs = []
        for t in out.trees:
            adj = {}
            for e in t.arcs:
                u, w = g.edge_map[e]
                adj.setdefault(u, []).append((e, w))
                adj.setdefault(w, []).append((e, u))
            seen = {t.root_vertex}
            stack = [t.root_vertex]
            while stack:
                v = stack.pop()
                for e, w in adj.get(v, []):
                    if w not in seen:
                        seen.add(w)
                        arcs.append((e, v, w))
                        stack.append(w)
        from arbopack.graphs import RootedDigraph
        # unused edges get an arbitrary direction
        used = {a for a, _, _ in arcs}
        for e, u, w in g.edges:
            if e not in used:
                arcs.append((e, u, w))
        d = RootedDigraph(verts, arcs, g.roots, g.matroid)
        directed = find_packing(d)
        from arbopack.packing import Packing, verify_packing
        assert isinstance(directed, Packing)
        assert verify_packing(d, directed) is None


# -- decomposition ------------------------------------------------------------------------


def test_decompose_identity_gate():
    g = graph(["a", "b"], ["e1:a-b"], ["s1@a", "s2@a"],
              FreeMatroid(["s1", "s2"]))
    with pytest.raises(IdentityViolation):
        decompose_edges(g)


def test_decompose_two_parallel_edges():
    g = graph(["a", "b"], ["e1:a-b", "e2:a-b"], ["s1@a", "s2@a"],
              FreeMatroid(["s1", "s2"]))
    out = decompose_edges(g)
    assert isinstance(out, TreePacking)
    assert out.edge_set() == {"e1", "e2"}


def test_decompose_tree_graph():
    g = graph(["a", "b", "c"], ["e1:a-b", "e2:b-c"], ["s1@b"],
              FreeMatroid(["s1"]))
    out = decompose_edges(g)
    assert isinstance(out, TreePacking)
    assert out.edge_set() == {"e1", "e2"}
    assert sum(len(t.arcs) for t in out.trees) == len(g.edges)


def test_per_edge_set_diagnostic():
    good = graph(["a", "b"], ["e1:a-b", "e2:a-b"], ["s1@a", "s2@a"],
                 FreeMatroid(["s1", "s2"]))
    assert per_edge_set_diagnostic(good) is None
    # overfull subgraph: three parallels but only rank 2 demanded
    bad = graph(["a", "b", "c"],
                ["e1:a-b", "e2:a-b", "e3:a-b", "e4:b-c"],
                ["s1@a", "s2@c"], FreeMatroid(["s1", "s2"]))
    assert per_edge_set_diagnostic(bad) is not None


def test_tree_verifier_tamper():
    g = graph(["a", "b"], ["e1:a-b", "e2:a-b"], ["s1@a", "s2@a"],
              FreeMatroid(["s1", "s2"]))
    p = TreePacking((Tree("s1", "a", frozenset({"e1"})),
                     Tree("s2", "a", frozenset({"e1"}))))
    f = verify_tree_packing(g, p)
    assert f is not None and f.reason == "duplicate-edge"
