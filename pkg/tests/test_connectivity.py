import itertools
import random

import pytest

from conftest import digraph, graph, random_digraph
from arbopack.connectivity import (
    check_independent_placement,
    check_m_connected,
    check_partition_connected,
    classify_arc,
    dominates,
    is_tight,
    recheck_certificate,
)
from arbopack.graphs import InstanceError, in_degree
from arbopack.matroid import FreeMatroid, PartitionMatroid, UniformMatroid


def all_nonempty_subsets(verts):
    for k in range(1, len(verts) + 1):
        yield from map(frozenset, itertools.combinations(verts, k))


def enumerate_m_connected(inst):
    """Independent check of condition (2) by full enumeration."""
    m = inst.matroid
    k = m.full_rank()
    return all(
        in_degree(inst, x) >= k - m.rank(inst.elements_in(x))
        for x in all_nonempty_subsets(inst.vertices)
    )


# -- independent placement --------------------------------------------------------


def test_dependent_placement_uniform():
    d = digraph(["a"], [], ["s1@a", "s2@a"], UniformMatroid(["s1", "s2"], 1))
    cert = check_independent_placement(d)
    assert cert.kind == "dependent-vertex" and cert.vertex == "a"
    assert recheck_certificate(d, cert)


def test_free_placement_always_independent():
    d = digraph(["a", "b"], [], ["s1@a", "s2@a", "s3@b"],
                FreeMatroid(["s1", "s2", "s3"]))
    assert check_independent_placement(d).ok


def test_dependent_placement_partition_cap():
    m = PartitionMatroid([(["s1", "s2"], 1)])
    d = digraph(["a", "b"], [], ["s1@b", "s2@b"], m)
    cert = check_independent_placement(d)
    assert cert.kind == "dependent-vertex" and cert.vertex == "b"


# -- condition (2) ------------------------------------------------------------------


def test_m_connected_two_parallel_arcs():
    d = digraph(["a", "b"], ["a1:a>b", "a2:a>b"], ["s1@a", "s2@a"],
                FreeMatroid(["s1", "s2"]))
    assert enumerate_m_connected(d)
    assert check_m_connected(d).ok


def test_m_disconnected_isolated_vertex():
    d = digraph(["a", "b"], [], ["s1@a"], FreeMatroid(["s1"]))
    assert not enumerate_m_connected(d)
    cert = check_m_connected(d)
    assert cert.kind == "violated-set"
    assert cert.vertex_set == frozenset({"b"})
    assert cert.deficiency == -1
    assert recheck_certificate(d, cert)


def test_m_connected_base_everywhere_no_arcs():
    d = digraph(["a", "b"], [], ["s1@a", "s2@b"], UniformMatroid(["s1", "s2"], 1))
    assert check_m_connected(d).ok


def test_m_connected_agrees_with_enumeration():
    rng = random.Random(97)
    for _ in range(150):
        d = random_digraph(rng, max_v=5, max_arcs=7)
        assert check_m_connected(d).ok == enumerate_m_connected(d)


def test_single_root_specialization():
    # free matroid, all roots at one vertex r: condition (2) collapses to
    # the classical in-degree >= k over sets avoiding r
    rng = random.Random(41)
    for _ in range(100):
        d = random_digraph(rng, max_v=5, max_arcs=8, kinds=("free",))
        r = d.vertices[0]
        elements = [e for e, _ in d.roots]
        d = digraph(list(d.vertices),
                    ["%s:%s>%s" % a for a in d.arcs],
                    ["%s@%s" % (e, r) for e in elements],
                    FreeMatroid(elements))
        k = len(elements)
        classical = all(
            in_degree(d, x) >= k
            for x in all_nonempty_subsets([v for v in d.vertices if v != r])
        )
        assert check_m_connected(d).ok == classical


# -- partition connectivity ------------------------------------------------------------


def test_partition_connected_is_connectivity_at_rank_one():
    g = graph(["a", "b", "c"], ["e1:a-b", "e2:b-c"], ["s1@a"],
              FreeMatroid(["s1"]))
    assert check_partition_connected(g).ok


def test_disconnected_graph_violates():
    g = graph(["a", "b"], [], ["s1@a"], FreeMatroid(["s1"]))
    cert = check_partition_connected(g)
    assert cert.kind == "violated-partition"
    assert recheck_certificate(g, cert)


def test_triangle_two_roots_violated_by_singletons():
    g = graph(["a", "b", "c"], ["e1:a-b", "e2:b-c", "e3:c-a"],
              ["s1@a", "s2@a"], FreeMatroid(["s1", "s2"]))
    # enumeration of all 5 partitions: only the singleton one fails (3 < 4)
    cert = check_partition_connected(g)
    assert cert.kind == "violated-partition"
    assert set(cert.partition) == {frozenset({"a"}), frozenset({"b"}),
                                   frozenset({"c"})}
    assert cert.deficiency == -1


# -- good/bad arcs and tightness ----------------------------------------------------------


def test_arc_with_empty_tail_roots_is_good():
    d = digraph(["a", "b"], ["a1:b>a"], ["s1@a"], FreeMatroid(["s1"]))
    assert classify_arc(d, "a1") == ("good", frozenset())


def test_bad_arc_with_witness():
    d = digraph(["a", "b"], ["a1:a>b"], ["s1@a"], FreeMatroid(["s1"]))
    kind, witness = classify_arc(d, "a1")
    assert kind == "bad" and witness == {"s1"}


def test_good_arc_rank_one_span():
    d = digraph(["a", "b"], ["a1:a>b"], ["s1@a", "s2@b"],
                UniformMatroid(["s1", "s2"], 1))
    assert classify_arc(d, "a1")[0] == "good"


def test_tightness():
    d = digraph(["a", "b"], ["a1:a>b", "a2:a>b"], ["s1@a", "s2@a"],
                FreeMatroid(["s1", "s2"]))
    assert check_m_connected(d).ok
    assert is_tight(d, {"a", "b"})      # V is tight on every connected instance
    assert is_tight(d, {"b"})           # in-degree 2 = 2 - 0
    d3 = digraph(["a", "b"], ["a1:a>b", "a2:a>b", "a3:a>b"],
                 ["s1@a", "s2@a"], FreeMatroid(["s1", "s2"]))
    assert not is_tight(d3, {"b"})      # 3 > 2
    with pytest.raises(InstanceError):
        is_tight(d, set())


def test_tight_set_lattice_closure():
    rng = random.Random(13)
    checked = 0
    while checked < 60:
        d = random_digraph(rng, max_v=5, max_arcs=7)
        if not (check_independent_placement(d).ok and check_m_connected(d).ok):
            continue
        checked += 1
        tights = [x for x in all_nonempty_subsets(d.vertices) if is_tight(d, x)]
        m = d.matroid
        for x, y in itertools.product(tights, repeat=2):
            if not x & y:
                continue
            assert is_tight(d, x & y)
            assert is_tight(d, x | y)
            sx, sy = d.elements_in(x), d.elements_in(y)
            assert m.rank(sx & sy) + m.rank(sx | sy) == m.rank(sx) + m.rank(sy)


def test_domination_transitive():
    rng = random.Random(29)
    for _ in range(60):
        d = random_digraph(rng, max_v=4, max_arcs=4)
        sets = list(all_nonempty_subsets(d.vertices))
        for x, y, z in itertools.product(sets, repeat=3):
            if dominates(d, z, y) and dominates(d, y, x):
                assert dominates(d, z, x)
