"""Constructive packing of matroid-constrained arborescences.

The solver mirrors the inductive sufficiency argument: while a bad arc uv
exists, pick a root element s placed at u outside the span of the roots at
v, delete uv, add a fresh element parallel to s at v, and recurse on the
smaller instance; at the base case (no bad arc) every vertex's root set is
a base and the packing is |S| singleton arborescences.  The recursion is
run iteratively and unwound by lifting: the trees rooted at s and its twin
are vertex-disjoint, so their union plus uv is again an arborescence.

``brute_force_packing`` is an independent exponential ground-truth oracle
used by the test suite; it shares nothing with the constructive path
except the verifier.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .connectivity import (
    Certificate,
    check_independent_placement,
    check_m_connected,
    classify_arc,
)
from .graphs import (
    InstanceError,
    RootedDigraph,
    SizeLimitError,
    is_arborescence,
    tree_vertices,
)

BRUTE_ARC_CAP = 10
BRUTE_ROOT_CAP = 4


class TheoremViolation(RuntimeError):
    """Tripwire: the algorithm reached a state the proof rules out."""


class InfeasibleBound(ValueError):
    """Requested per-vertex rank bound exceeds the matroid rank."""


@dataclass(frozen=True)
class Tree:
    root_element: str
    root_vertex: str
    arcs: frozenset

    def to_json(self) -> dict:
        return {
            "root_element": self.root_element,
            "root_vertex": self.root_vertex,
            "arcs": sorted(self.arcs),
        }


@dataclass(frozen=True)
class Packing:
    trees: tuple

    def arc_set(self) -> frozenset:
        out: frozenset = frozenset()
        for t in self.trees:
            out |= t.arcs
        return out

    def to_json(self) -> dict:
        return {"trees": [t.to_json() for t in self.trees]}


@dataclass(frozen=True)
class Failure:
    reason: str
    detail: str


@dataclass(frozen=True)
class ReductionStep:
    arc_id: str
    tail: str
    head: str
    element: str
    new_element: str

    def to_json(self) -> dict:
        return {
            "removed_arc": self.arc_id,
            "element": self.element,
            "new_element": self.new_element,
        }


# -- verifier -----------------------------------------------------------------


def verify_packing(inst: RootedDigraph, packing: Packing) -> Optional[Failure]:
    """None when valid, else the first failing invariant."""
    placed = dict(inst.roots)
    seen_arcs: set = set()
    for t in packing.trees:
        if t.root_element not in placed:
            return Failure("unknown-root-element", t.root_element)
        if placed[t.root_element] != t.root_vertex:
            return Failure("root-mismatch", t.root_element)
        for a in t.arcs:
            if a not in inst.arc_map:
                return Failure("unknown-arc", a)
            if a in seen_arcs:
                return Failure("duplicate-arc", a)
            seen_arcs.add(a)
        if not is_arborescence(t.arcs, inst, t.root_vertex):
            return Failure("not-an-arborescence", t.root_element)
    roots_seen = [t.root_element for t in packing.trees]
    if sorted(roots_seen) != sorted(placed):
        return Failure("missing-tree", "one tree per root element required")
    covers = {v: set() for v in inst.vertices}
    for t in packing.trees:
        for v in tree_vertices(t.arcs, inst, t.root_vertex):
            covers[v].add(t.root_element)
    for v in inst.vertices:
        if not inst.matroid.is_base(covers[v]):
            return Failure("not-a-base", v)
    return None


# -- constructive solver --------------------------------------------------------


def find_reduction(inst: RootedDigraph, engine: str = "brute"):
    """First bad-arc/witness pair whose reduced instance stays connected.

    Returns (step, reduced instance) or None at the base case (no bad arc).
    """
    bad = []
    for a, t, h in inst.arcs:
        kind, witness = classify_arc(inst, a)
        if kind == "bad":
            bad.append((a, t, h, witness))
    if not bad:
        return None
    ground_order = {e: i for i, e in enumerate(inst.matroid.ground)}
    for a, t, h, witness in bad:
        for s in sorted(witness, key=ground_order.__getitem__):
            m2, s_new = inst.matroid.extend_parallel(s)
            reduced = inst.without_arc(a).with_root(s_new, h, m2)
            if check_m_connected(reduced, engine=engine).ok:
                return ReductionStep(a, t, h, s, s_new), reduced
    raise TheoremViolation(
        "no reduction candidate keeps the instance connected (tripwire)"
    )


def base_case_packing(inst: RootedDigraph) -> Packing:
    """Singleton arborescence per root element; valid when no arc is bad."""
    for a, _, _ in inst.arcs:
        if classify_arc(inst, a)[0] == "bad":
            raise InstanceError("base case invoked with a bad arc present")
    return Packing(tuple(Tree(e, v, frozenset()) for e, v in inst.roots))


def lift_packing(packing: Packing, step: ReductionStep,
                 inst: Optional[RootedDigraph] = None) -> Packing:
    """Merge the trees rooted at s and its twin across the removed arc."""
    by_root = {t.root_element: t for t in packing.trees}
    t1 = by_root[step.element]
    t2 = by_root[step.new_element]
    if inst is not None:
        v1 = tree_vertices(t1.arcs, inst, t1.root_vertex)
        v2 = tree_vertices(t2.arcs, inst, t2.root_vertex)
        if v1 & v2:
            raise TheoremViolation(
                "trees rooted at parallel twins share a vertex (tripwire)"
            )
        if step.tail not in v1 or step.head != t2.root_vertex:
            raise TheoremViolation("removed arc does not join the twin trees")
    rest = tuple(
        t for t in packing.trees
        if t.root_element not in (step.element, step.new_element)
    )
    merged = Tree(step.element, t1.root_vertex,
                  t1.arcs | t2.arcs | {step.arc_id})
    return Packing(rest + (merged,))


def find_packing(inst: RootedDigraph, engine: str = "brute",
                 trace: Optional[list] = None) -> Union[Packing, Certificate]:
    """Full decision-plus-construction; the result is verified before return."""
    cert = check_independent_placement(inst)
    if not cert.ok:
        return cert
    cert = check_m_connected(inst, engine=engine)
    if not cert.ok:
        return cert

    steps: list[ReductionStep] = []
    cur = inst
    while True:
        red = find_reduction(cur, engine=engine)
        if red is None:
            break
        step, cur = red
        steps.append(step)
        if trace is not None:
            trace.append(step)

    packing = base_case_packing(cur)
    for step in reversed(steps):
        packing = lift_packing(packing, step, inst)
    # report trees in the original root order
    order = {e: i for i, (e, _) in enumerate(inst.roots)}
    packing = Packing(tuple(sorted(packing.trees,
                                   key=lambda t: order[t.root_element])))
    failure = verify_packing(inst, packing)
    if failure is not None:
        raise TheoremViolation(
            "constructed packing failed verification: %r (tripwire)" % (failure,)
        )
    return packing


# -- exponential ground truth ----------------------------------------------------


def brute_force_packing(inst: RootedDigraph) -> Optional[Packing]:
    """Exhaustive packer: assign each arc to one tree or leave it unused.

    Independent of the constructive solver; shares only the verifier.
    """
    arcs = list(inst.arcs)
    roots = list(inst.roots)
    if len(arcs) > BRUTE_ARC_CAP or len(roots) > BRUTE_ROOT_CAP:
        raise SizeLimitError(
            "brute-force packer capped at %d arcs / %d roots"
            % (BRUTE_ARC_CAP, BRUTE_ROOT_CAP)
        )
    t = len(roots)
    assignment = [None] * len(arcs)
    heads_used: list[set] = [set() for _ in range(t)]

    def feasible_partial(i: int, tree: int) -> bool:
        _, _, h = arcs[i]
        if h in heads_used[tree]:
            return False
        if h == roots[tree][1]:
            return False
        return True

    def leaf() -> Optional[Packing]:
        trees = []
        for j, (e, v) in enumerate(roots):
            ids = frozenset(arcs[i][0] for i in range(len(arcs))
                            if assignment[i] == j)
            if not is_arborescence(ids, inst, v):
                return None
            trees.append(Tree(e, v, ids))
        p = Packing(tuple(trees))
        return p if verify_packing(inst, p) is None else None

    def rec(i: int) -> Optional[Packing]:
        if i == len(arcs):
            return leaf()
        for j in range(t):
            if feasible_partial(i, j):
                assignment[i] = j
                heads_used[j].add(arcs[i][2])
                found = rec(i + 1)
                heads_used[j].discard(arcs[i][2])
                assignment[i] = None
                if found is not None:
                    return found
        assignment[i] = None  # unused
        return rec(i + 1)

    return rec(0)


# -- constant-bound variant --------------------------------------------------------


def pack_with_bound(inst: RootedDigraph, b: int,
                    engine: str = "brute") -> Union[Packing, Certificate]:
    """Packing in which every vertex's covering roots reach rank b.

    Implemented by truncating the matroid at b; a placement dependent in
    the truncation is reported as a certificate, not repaired.
    """
    if b < 0:
        raise ValueError("bound must be non-negative")
    if b > inst.matroid.full_rank():
        raise InfeasibleBound(
            "bound %d exceeds the matroid rank %d" % (b, inst.matroid.full_rank())
        )
    truncated = RootedDigraph(
        inst.vertices, inst.arcs, inst.roots, inst.matroid.truncate(b)
    )
    return find_packing(truncated, engine=engine)
