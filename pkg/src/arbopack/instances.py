"""Instance file parsing, emission, and seeded random generation.

Instance files are JSON with canonical key ordering on emit so generated
corpora are byte-stable.  Directed vs undirected is inferred from the
presence of "arcs" vs "edges" (exactly one).  The generator uses CPython's
``random.Random`` (Mersenne Twister), seeded explicitly, so corpora are
reproducible across runs and platforms.
"""

from __future__ import annotations

import json
from fractions import Fraction
from random import Random
from typing import Union

from .graphs import RootedDigraph, RootedGraph
from .matroid import (
    ExplicitMatroid,
    FreeMatroid,
    GraphicMatroid,
    LinearMatroid,
    Matroid,
    PartitionMatroid,
    UniformMatroid,
)

FORMAT_VERSION = 1

INSTANCE_KEYS = {"version", "vertices", "arcs", "edges", "roots", "matroid",
                 "costs", "bound"}


class ParseError(ValueError):
    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__("%s: %s" % (path, reason))


def _require(cond, path, reason):
    if not cond:
        raise ParseError(path, reason)


def build_matroid(fragment: dict, elements: list[str], path: str = "matroid") -> Matroid:
    _require(isinstance(fragment, dict), path, "must be an object")
    kind = fragment.get("type")
    known = {
        "free": {"type"},
        "uniform": {"type", "rank"},
        "partition": {"type", "blocks"},
        "graphic": {"type", "edges"},
        "linear": {"type", "prime", "columns"},
        "explicit": {"type", "bases"},
    }
    _require(kind in known, path + ".type", "unknown matroid type %r" % kind)
    extra = set(fragment) - known[kind]
    _require(not extra, path, "unknown fields %r" % sorted(extra))
    if kind == "free":
        return FreeMatroid(elements)
    if kind == "uniform":
        r = fragment.get("rank")
        _require(isinstance(r, int) and r >= 0, path + ".rank",
                 "must be a non-negative integer")
        return UniformMatroid(elements, r)
    if kind == "partition":
        blocks = fragment.get("blocks")
        _require(isinstance(blocks, list), path + ".blocks", "must be a list")
        parsed = []
        covered: list[str] = []
        for i, blk in enumerate(blocks):
            bp = "%s.blocks[%d]" % (path, i)
            _require(isinstance(blk, dict) and set(blk) == {"elements", "cap"},
                     bp, "must be {elements, cap}")
            _require(isinstance(blk["cap"], int) and blk["cap"] >= 0,
                     bp + ".cap", "must be a non-negative integer")
            parsed.append((list(blk["elements"]), blk["cap"]))
            covered.extend(blk["elements"])
        _require(sorted(covered) == sorted(elements), path + ".blocks",
                 "blocks must partition the root element set")
        return PartitionMatroid(parsed)
    if kind == "graphic":
        edges = fragment.get("edges")
        _require(isinstance(edges, list) and len(edges) == len(elements),
                 path + ".edges", "need one reference edge per root element")
        return GraphicMatroid(
            [(elements[i], str(e[0]), str(e[1])) for i, e in enumerate(edges)])
    if kind == "linear":
        p = fragment.get("prime")
        cols = fragment.get("columns")
        _require(isinstance(p, int) and p >= 2, path + ".prime", "must be >= 2")
        _require(isinstance(cols, dict) and sorted(cols) == sorted(elements),
                 path + ".columns", "need one column per root element")
        return LinearMatroid(p, {e: list(map(int, v)) for e, v in cols.items()})
    bases = fragment.get("bases")
    _require(isinstance(bases, list) and bases, path + ".bases",
             "need a nonempty list of bases")
    return ExplicitMatroid(elements, [list(b) for b in bases])


def matroid_to_json(m: Matroid) -> dict:
    if isinstance(m, FreeMatroid):
        return {"type": "free"}
    if isinstance(m, UniformMatroid):
        return {"type": "uniform", "rank": m.r}
    if isinstance(m, PartitionMatroid):
        return {"type": "partition",
                "blocks": [{"elements": sorted(blk), "cap": cap}
                           for blk, cap in m.blocks]}
    if isinstance(m, GraphicMatroid):
        return {"type": "graphic",
                "edges": [list(m.edges[e]) for e in m.ground]}
    if isinstance(m, LinearMatroid):
        return {"type": "linear", "prime": m.prime,
                "columns": {e: list(c) for e, c in m.columns.items()}}
    if isinstance(m, ExplicitMatroid):
        return {"type": "explicit", "bases": [sorted(b) for b in m.bases]}
    raise ValueError("derived matroids have no file representation")


def parse_instance(text: Union[str, bytes]) -> tuple[object, dict]:
    """Returns (instance, extras) where extras holds costs/bound if present."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("$", "invalid JSON: %s" % exc) from exc
    _require(isinstance(doc, dict), "$", "top level must be an object")
    unknown = set(doc) - INSTANCE_KEYS
    _require(not unknown, "$", "unknown fields %r" % sorted(unknown))
    _require(doc.get("version") == FORMAT_VERSION, "version",
             "unsupported version %r" % doc.get("version"))
    verts = doc.get("vertices")
    _require(isinstance(verts, list) and all(isinstance(v, str) for v in verts),
             "vertices", "must be a list of strings")
    has_arcs = "arcs" in doc
    has_edges = "edges" in doc
    _require(has_arcs != has_edges, "$",
             "exactly one of 'arcs'/'edges' must be present")
    roots = doc.get("roots")
    _require(isinstance(roots, list), "roots", "must be a list")
    root_pairs = []
    for i, r in enumerate(roots):
        _require(isinstance(r, dict) and set(r) == {"element", "vertex"},
                 "roots[%d]" % i, "must be {element, vertex}")
        root_pairs.append((str(r["element"]), str(r["vertex"])))
    elements = [e for e, _ in root_pairs]
    _require(len(set(elements)) == len(elements), "roots",
             "duplicate root element ids")
    matroid = build_matroid(doc.get("matroid", {}), elements)

    def links(key):
        items = doc[key]
        _require(isinstance(items, list), key, "must be a list")
        out = []
        for i, it in enumerate(items):
            p = "%s[%d]" % (key, i)
            if key == "arcs":
                _require(isinstance(it, dict) and set(it) == {"id", "tail", "head"},
                         p, "must be {id, tail, head}")
                out.append((str(it["id"]), str(it["tail"]), str(it["head"])))
            else:
                _require(isinstance(it, dict) and set(it) == {"id", "ends"}
                         and isinstance(it["ends"], list) and len(it["ends"]) == 2,
                         p, "must be {id, ends:[u,v]}")
                out.append((str(it["id"]), str(it["ends"][0]), str(it["ends"][1])))
        return out

    try:
        if has_arcs:
            inst: object = RootedDigraph(verts, links("arcs"), root_pairs, matroid)
        else:
            inst = RootedGraph(verts, links("edges"), root_pairs, matroid)
    except ValueError as exc:
        raise ParseError("$", str(exc)) from exc

    extras: dict = {}
    if "costs" in doc:
        costs = doc["costs"]
        _require(isinstance(costs, dict), "costs", "must be an object")
        ids = {it[0] for it in (inst.arcs if has_arcs else inst.edges)}
        _require(set(costs) <= ids, "costs", "cost on unknown arc id")
        extras["costs"] = {a: Fraction(str(v)) for a, v in costs.items()}
    if "bound" in doc:
        _require(isinstance(doc["bound"], int) and doc["bound"] >= 0,
                 "bound", "must be a non-negative integer")
        extras["bound"] = doc["bound"]
    return inst, extras


def emit_instance(inst, costs: dict | None = None, bound: int | None = None) -> str:
    doc: dict = {
        "version": FORMAT_VERSION,
        "vertices": list(inst.vertices),
        "roots": [{"element": e, "vertex": v} for e, v in inst.roots],
        "matroid": matroid_to_json(inst.matroid),
    }
    if isinstance(inst, RootedDigraph):
        doc["arcs"] = [{"id": a, "tail": t, "head": h} for a, t, h in inst.arcs]
    else:
        doc["edges"] = [{"id": e, "ends": [u, v]} for e, u, v in inst.edges]
    if costs:
        doc["costs"] = {a: (int(c) if Fraction(c).denominator == 1 else str(c))
                        for a, c in sorted(costs.items())}
    if bound is not None:
        doc["bound"] = bound
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# -- generation ------------------------------------------------------------------


class GenerationError(ValueError):
    pass


def generate_instance(seed: int, n: int, m: int, t: int,
                      matroid_kind: str = "free", feasible_bias: bool = False,
                      directed: bool = True, costs: bool = False) -> str:
    """Deterministic random instance as canonical JSON text.

    With feasible_bias and a free matroid the instance is built around a
    random packing (t random spanning arborescences on fresh arcs) plus
    noise arcs, so feasibility holds by construction; other matroid kinds
    fall back to seeded rejection sampling against the connectivity check.
    """
    if n < 1 or t < 0 or m < 0:
        raise GenerationError("need n >= 1, m >= 0, t >= 0")
    if n > 10 or m > 40 or t > 6:
        raise GenerationError("generator capped at n<=10, m<=40, t<=6")
    rng = Random(seed)
    if feasible_bias:
        if matroid_kind != "free":
            return _generate_by_rejection(rng, n, m, t, matroid_kind,
                                          directed, costs)
        need = t * (n - 1)
        if m < need:
            raise GenerationError(
                "feasible free instance needs at least t*(n-1)=%d arcs" % need)
    return _generate_raw(rng, n, m, t, matroid_kind, directed, costs,
                         feasible_bias)


def _matroid_fragment(rng: Random, kind: str, t: int) -> dict:
    if kind == "free":
        return {"type": "free"}
    if kind == "uniform":
        return {"type": "uniform", "rank": rng.randint(0, t)}
    if kind.startswith("uniform"):
        return {"type": "uniform", "rank": int(kind[len("uniform"):])}
    raise GenerationError("generator supports matroid kinds free/uniform[R]")


def _generate_raw(rng, n, m, t, matroid_kind, directed, costs, feasible) -> str:
    verts = ["v%d" % i for i in range(n)]
    links: list[dict] = []
    if feasible and matroid_kind == "free":
        # t random spanning arborescences (trees) on fresh arcs, then noise
        lid = 0
        placements = []
        for _ in range(t):
            order = verts[:]
            rng.shuffle(order)
            placements.append(order[0])
            for j in range(1, n):
                tail = order[rng.randrange(j)]
                if directed:
                    links.append({"id": "a%d" % lid, "tail": tail,
                                  "head": order[j]})
                else:
                    links.append({"id": "e%d" % lid, "ends": [tail, order[j]]})
                lid += 1
        while lid < m:
            u, w = rng.sample(verts, 2)
            if directed:
                links.append({"id": "a%d" % lid, "tail": u, "head": w})
            else:
                links.append({"id": "e%d" % lid, "ends": [u, w]})
            lid += 1
        roots = [{"element": "s%d" % i, "vertex": placements[i]}
                 for i in range(t)]
    else:
        for i in range(m):
            u, w = rng.sample(verts, 2)
            if directed:
                links.append({"id": "a%d" % i, "tail": u, "head": w})
            else:
                links.append({"id": "e%d" % i, "ends": [u, w]})
        roots = [{"element": "s%d" % i, "vertex": rng.choice(verts)}
                 for i in range(t)]
    doc = {
        "version": FORMAT_VERSION,
        "vertices": verts,
        ("arcs" if directed else "edges"): links,
        "roots": roots,
        "matroid": _matroid_fragment(rng, matroid_kind, t),
    }
    if costs:
        key = "id"
        doc["costs"] = {lk[key]: rng.randint(1, 100) for lk in links}
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _generate_by_rejection(rng, n, m, t, matroid_kind, directed, costs,
                           attempts: int = 2000) -> str:
    from .connectivity import check_independent_placement, check_m_connected, \
        check_partition_connected

    for _ in range(attempts):
        text = _generate_raw(rng, n, m, t, matroid_kind, directed, costs, False)
        inst, _extras = parse_instance(text)
        if not check_independent_placement(inst).ok:
            continue
        ok = (check_m_connected(inst).ok if directed
              else check_partition_connected(inst).ok)
        if ok:
            return text
    raise GenerationError(
        "rejection sampling found no feasible instance in %d attempts" % attempts)
