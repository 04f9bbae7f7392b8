"""Feasibility conditions and structural predicates.

The central quantity is the deficiency of a vertex set X:

    def(X) = in_degree(X) + rank(S_X) - rank(S)

The instance is root-connected (condition (2) of the characterization) iff
def(X) >= 0 for every nonempty X, which is decided by submodular
minimization of def over nonempty sets; def(V) = 0 always, so the minimum
is never positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import sfm
from .graphs import (
    InstanceError,
    Partition,
    RootedDigraph,
    RootedGraph,
    cross_edges,
    in_degree,
    iter_partitions,
)

OK = "ok"
DEPENDENT_VERTEX = "dependent-vertex"
VIOLATED_SET = "violated-set"
VIOLATED_PARTITION = "violated-partition"


@dataclass(frozen=True)
class Certificate:
    kind: str
    vertex: Optional[str] = None
    vertex_set: Optional[frozenset] = None
    partition: Optional[tuple] = None
    deficiency: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.kind == OK

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.vertex is not None:
            out["vertex"] = self.vertex
        if self.vertex_set is not None:
            out["vertex_set"] = sorted(self.vertex_set)
        if self.partition is not None:
            out["partition"] = [sorted(b) for b in self.partition]
        if self.deficiency is not None:
            out["deficiency"] = self.deficiency
        return out


_OK_CERT = Certificate(OK)


def check_independent_placement(inst) -> Certificate:
    """ok, or the first vertex (canonical order) whose root set is dependent."""
    m = inst.matroid
    for v in inst.vertices:
        sv = inst.elements_at(v)
        if m.rank(sv) < len(sv):
            return Certificate(DEPENDENT_VERTEX, vertex=v)
    return _OK_CERT


def deficiency_objective(inst: RootedDigraph) -> sfm.SubmodularObjective:
    """def(X) over vertex indices, family = nonempty sets."""
    verts = inst.vertices
    m = inst.matroid
    k = m.full_rank()
    arcs = [(verts.index(t), verts.index(h)) for _, t, h in inst.arcs]
    at = [inst.elements_at(v) for v in verts]

    def evaluate(X: frozenset):
        rho = sum(1 for t, h in arcs if h in X and t not in X)
        sx: frozenset = frozenset()
        for i in X:
            sx |= at[i]
        return rho + m.rank(sx) - k

    return sfm.SubmodularObjective(len(verts), evaluate, ("nonempty",))


def check_m_connected(inst: RootedDigraph, engine: str = "brute") -> Certificate:
    """Condition (2): every nonempty X has in-degree >= rank(S) - rank(S_X)."""
    res = sfm.minimize(deficiency_objective(inst), engine=engine)
    if res.value >= 0:
        return _OK_CERT
    xs = frozenset(inst.vertices[i] for i in res.minimizer)
    return Certificate(VIOLATED_SET, vertex_set=xs, deficiency=int(res.value))


def check_partition_connected(g: RootedGraph, cap: int = 12) -> Certificate:
    """Partition counterpart; reports the maximum-deficiency partition."""
    m = g.matroid
    k = m.full_rank()
    worst = None
    worst_def = 0
    for blocks in iter_partitions(g.vertices, cap=cap):
        p = Partition(blocks, g.vertices)
        need = k * len(p) - sum(m.rank(g.elements_in(b)) for b in p)
        deficit = need - cross_edges(g, p)
        if deficit > worst_def:
            worst_def = deficit
            worst = p
    if worst is None:
        return _OK_CERT
    return Certificate(
        VIOLATED_PARTITION, partition=tuple(worst.blocks), deficiency=-worst_def
    )


def is_tight(inst: RootedDigraph, X) -> bool:
    """Equality in condition (2); only meaningful on root-connected instances."""
    xs = frozenset(X)
    if not xs:
        raise InstanceError("tightness of the empty set is undefined")
    m = inst.matroid
    return in_degree(inst, xs) == m.full_rank() - m.rank(inst.elements_in(xs))


def dominates(inst, Y, X) -> bool:
    """Y dominates X: the roots inside X lie in the span of the roots inside Y."""
    return inst.elements_in(X) <= inst.matroid.span(inst.elements_in(Y))


def classify_arc(inst: RootedDigraph, arc_id: str) -> tuple[str, frozenset]:
    """('good', ∅) if the head dominates the tail, else ('bad', witness)."""
    if arc_id not in inst.arc_map:
        raise InstanceError("unknown arc id %r" % arc_id)
    t, h = inst.arc_map[arc_id]
    witness = inst.elements_at(t) - inst.matroid.span(inst.elements_at(h))
    return ("good", frozenset()) if not witness else ("bad", witness)


def recheck_certificate(inst, cert: Certificate) -> bool:
    """Re-validate a certificate by direct evaluation of its inequality."""
    if cert.kind == OK:
        return True
    m = inst.matroid
    if cert.kind == DEPENDENT_VERTEX:
        sv = inst.elements_at(cert.vertex)
        return m.rank(sv) < len(sv)
    if cert.kind == VIOLATED_SET:
        xs = cert.vertex_set
        return in_degree(inst, xs) < m.full_rank() - m.rank(inst.elements_in(xs))
    if cert.kind == VIOLATED_PARTITION:
        p = Partition(cert.partition, inst.vertices)
        need = m.full_rank() * len(p) - sum(
            m.rank(inst.elements_in(b)) for b in p
        )
        return cross_edges(inst, p) < need
    raise ValueError("unknown certificate kind %r" % cert.kind)
