"""Quiver surgeries: node resolution, gluing, barification, trimming and
band reductions down to fully reduced gentle algebras."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .quiver import (
    MONOMIAL,
    Arrow,
    BoundQuiver,
    QuiverError,
    Relation,
    nodes,
    validate_gentle,
    validate_string_algebra,
)
from .words import BandClass, StringWord, band_exists, enumerate_bands, is_band, is_string


@dataclass
class TransformTrace:
    """Replayable log of surgery steps: (operation, parameters, result)."""

    steps: list[tuple[str, dict, str]] = field(default_factory=list)

    def add(self, op: str, params: dict, result: str) -> None:
        self.steps.append((op, dict(params), result))

    def to_json(self) -> list[dict]:
        return [{"op": op, "params": p, "result": r} for op, p, r in self.steps]


class TransformError(QuiverError):
    pass


# -- node resolution and gluing --------------------------------------------------


def resolve_nodes(q: BoundQuiver):
    """Split every node into a sink/source pair.

    Returns ``(quiver, trace)`` when the result is connected and
    ``(component_list, trace)`` otherwise.  Only relation generators whose
    paths pass through no node survive.
    """
    if not validate_string_algebra(q).holds:
        raise TransformError("node resolution expects a string algebra")
    ns = nodes(q)
    trace = TransformTrace()
    if not ns:
        trace.add("resolve-nodes", {"nodes": []}, q.name)
        return q, trace
    vertices: list[str] = []
    for v in q.vertices:
        if v in ns:
            vertices.extend((f"{v}+", f"{v}-"))
        else:
            vertices.append(v)
    arrows = [
        Arrow(
            a.name,
            f"{a.src}-" if a.src in ns else a.src,
            f"{a.tgt}+" if a.tgt in ns else a.tgt,
        )
        for a in q.arrows
    ]
    relations = []
    for r in q.relations:
        interior = [q.arrow_by_name[x].tgt for x in r.path1[:-1]]
        if not any(v in ns for v in interior):
            relations.append(r)
    name = f"{q.name}.nn"
    out = BoundQuiver(name, vertices, arrows, relations)
    trace.add("resolve-nodes", {"nodes": sorted(ns)}, name)
    if out.is_connected():
        return out, trace
    return out.components(), trace


def glue(q: BoundQuiver, sink: str, source: str) -> BoundQuiver:
    """Identify a sink with a source, killing all compositions through the
    merged vertex; inverse to resolving the node it creates."""
    for v in (sink, source):
        if v not in q.vertex_index:
            raise TransformError(f"no vertex {v!r}")
    if sink == source:
        raise TransformError("cannot glue a vertex to itself")
    if q.outgoing(sink):
        raise TransformError(f"{sink!r} is not a sink")
    if q.incoming(source):
        raise TransformError(f"{source!r} is not a source")
    if not q.incoming(sink) or not q.outgoing(source):
        raise TransformError("gluing needs at least one arrow on each side")
    if len(q.incoming(sink)) > 2 or len(q.outgoing(source)) > 2:
        raise TransformError("gluing would violate the degree bound")
    z = f"{sink}~{source}"
    vertices = [z if v == sink else v for v in q.vertices if v != source]
    ren = {sink: z, source: z}
    arrows = [Arrow(a.name, ren.get(a.src, a.src), ren.get(a.tgt, a.tgt)) for a in q.arrows]
    relations = list(q.relations)
    for a in q.incoming(sink):
        for b in q.outgoing(source):
            relations.append(Relation(MONOMIAL, (a.name, b.name)))
    return BoundQuiver(f"{q.name}.glue", vertices, arrows, relations)


# -- barification -----------------------------------------------------------------


def _signs(w: StringWord) -> list[int]:
    return [-1 if l.inverse else 1 for l in w.letters]


def _distinct_walk(w: StringWord) -> bool:
    verts = w.walk_vertices()
    if verts[0] == verts[-1]:
        return len(set(verts)) == len(verts) - 1
    return len(set(verts)) == len(verts)


def _sign_compatible(v1: StringWord, v2: StringWord) -> bool:
    s1, s2 = _signs(v1), _signs(v2)
    if len(s1) != len(s2):
        return False
    if s1[0] != 1 or s2[0] != -1 or s1[-1] != -s2[-1]:
        return False
    return all(s1[i] == s2[i] for i in range(1, len(s1) - 1))


def barify(
    q: BoundQuiver, v1: StringWord, v2: StringWord, trace: TransformTrace | None = None
) -> BoundQuiver:
    """Identify two sign-compatible string segments into a shared bar.

    The middle arrows of the two strings are merged pairwise; the two
    boundary compositions through the new bar ends acquire quadratic
    relations.  The inputs may be given in either orientation or order.
    Interior arrows involved in existing relations are rejected; boundary
    arrows already involved in relations are allowed but flagged on the
    trace.
    """
    for v in (v1, v2):
        if len(v) < 2:
            raise TransformError("barification needs strings of length at least 2")
        if not is_string(v):
            raise TransformError(f"{v.render()} is not a string")
        if not _distinct_walk(v):
            raise TransformError(f"{v.render()} revisits a vertex")
    normalized = None
    for a, b in itertools.product((v1, v1.inverse()), (v2, v2.inverse())):
        for c, d in ((a, b), (b, a)):
            if _sign_compatible(c, d):
                normalized = (c, d)
                break
        if normalized:
            break
    if normalized is None:
        raise TransformError("strings are not sign-compatible in any orientation")
    w1, w2 = normalized
    m = len(w1) - 2
    xs, ys = w1.walk_vertices(), w2.walk_vertices()
    inner1, inner2 = xs[1 : m + 2], ys[1 : m + 2]
    if len(set(inner1) | set(inner2)) != 2 * (m + 1):
        raise TransformError("identified vertex ranges overlap")
    mid1 = [l.arrow for l in w1.letters[1 : m + 1]]
    mid2 = [l.arrow for l in w2.letters[1 : m + 1]]
    if len(set(mid1) | set(mid2)) != 2 * m:
        raise TransformError("identified arrow ranges overlap")
    involved = {x for r in q.relations for x in r.arrows()}
    if involved & (set(mid1) | set(mid2)):
        raise TransformError("an interior arrow of the bar is involved in a relation")

    vmap = {v: v for v in q.vertices}
    for x, y in zip(inner1, inner2):
        vmap[x] = vmap[y] = f"{x}~{y}"
    amap = {a.name: a.name for a in q.arrows}
    for a, b in zip(mid1, mid2):
        amap[a] = amap[b] = f"{a}~{b}"

    vertices, seen = [], set()
    for v in q.vertices:
        if vmap[v] not in seen:
            seen.add(vmap[v])
            vertices.append(vmap[v])
    arrows, seen_a = [], {}
    for a in q.arrows:
        name = amap[a.name]
        ends = (vmap[a.src], vmap[a.tgt])
        if name in seen_a:
            if seen_a[name] != ends:
                raise TransformError(f"arrows merged into {name!r} disagree on endpoints")
            continue
        seen_a[name] = ends
        arrows.append(Arrow(name, *ends))

    relations = []
    for r in q.relations:
        mapped = Relation(r.kind, tuple(amap[x] for x in r.path1), tuple(amap[x] for x in r.path2))
        if mapped.key() not in {s.key() for s in relations}:
            relations.append(mapped)

    alpha, delta = amap[w1.letters[0].arrow], amap[w1.letters[-1].arrow]
    beta, gamma = amap[w2.letters[0].arrow], amap[w2.letters[-1].arrow]
    probe = BoundQuiver("probe", vertices, arrows)
    if m == 0 and probe.is_path((alpha, gamma)) and probe.is_path((delta, beta)):
        # both strings pass the single bar vertex: pair each side of one
        # string with the opposite side of the other
        new_rels = [(alpha, gamma), (delta, beta)]
    else:
        top = (gamma, delta) if _signs(w1)[-1] == 1 else (delta, gamma)
        new_rels = [(alpha, beta), top]
    for path in new_rels:
        if not probe.is_path(path):
            raise TransformError(f"boundary relation {path} is not composable")
        relations.append(Relation(MONOMIAL, path))

    out = BoundQuiver(f"{q.name}.bar", vertices, arrows, relations)
    if trace is not None:
        boundary = [w1.letters[0].arrow, w1.letters[-1].arrow, w2.letters[0].arrow, w2.letters[-1].arrow]
        flagged = sorted({a for a in boundary if a in involved})
        trace.add(
            "barify",
            {
                "v1": w1.render(),
                "v2": w2.render(),
                "bar_length": m,
                "boundary_arrows_in_relations": flagged,
            },
            out.name,
        )
    return out


# -- trimming and reductions -------------------------------------------------------


def _secluded(q: BoundQuiver) -> set[str]:
    return {v for v in q.vertices if q.degree(v) == 1}


def trim(a: BoundQuiver):
    """Alternately delete all nodes, then all degree-one vertices, to a
    fixpoint; returns ``(components, trace)``."""
    if not validate_gentle(a).holds:
        raise TransformError("trimming expects a gentle algebra")
    trace = TransformTrace()
    q = a
    step = 0
    while True:
        ns = nodes(q)
        if ns:
            q = q.restrict(set(q.vertices) - ns, name=f"{a.name}.t{step}")
            trace.add("remove-nodes", {"vertices": sorted(ns)}, q.name)
            step += 1
        sec = _secluded(q)
        if sec:
            q = q.restrict(set(q.vertices) - sec, name=f"{a.name}.t{step}")
            trace.add("remove-secluded", {"vertices": sorted(sec)}, q.name)
            step += 1
        if not ns and not sec:
            break
    comps = q.components()
    trace.add("split", {"components": len(comps)}, q.name)
    return comps, trace


def _check_band(q: BoundQuiver, band: BandClass) -> StringWord:
    w = band.representative
    if w.quiver.structure_key() != q.structure_key():
        w = StringWord(q, w.letters, w.basepoint)
    if not is_band(w):
        raise TransformError(f"{band.render()} is not a band of {q.name!r}")
    return w


def weak_reduce(q: BoundQuiver, band: BandClass) -> BoundQuiver:
    """Quotient by every vertex the band does not visit."""
    w = _check_band(q, band)
    visited = set(w.walk_vertices())
    return q.restrict(visited, name=f"{q.name}.w")


def reduce(q: BoundQuiver, band: BandClass) -> BoundQuiver:
    """Quotient by every arrow the band does not support, dropping the
    vertices this isolates."""
    w = _check_band(q, band)
    supported = w.supported_arrows()
    arrows = [a for a in q.arrows if a.name in supported]
    touched = {a.src for a in arrows} | {a.tgt for a in arrows}
    vertices = [v for v in q.vertices if v in touched]
    keep = {a.name for a in arrows}
    relations = [r for r in q.relations if all(x in keep for x in r.arrows())]
    return BoundQuiver(f"{q.name}.r", vertices, arrows, relations)


def fully_reduce(a: BoundQuiver) -> list[tuple[BoundQuiver, TransformTrace]]:
    """Closure of trimming and band reduction.

    Every output is connected, gentle, representation-infinite and fixed by
    reduction along each of its bands; duplicates are removed up to quiver
    isomorphism.
    """
    if not validate_gentle(a).holds:
        raise TransformError("full reduction expects a gentle algebra")
    if not band_exists(a):
        raise TransformError(f"{a.name!r} is representation-finite")

    outputs: list[tuple[BoundQuiver, TransformTrace]] = []
    seen_states: set[tuple] = set()

    def push(q: BoundQuiver, trace: TransformTrace, queue: list) -> None:
        comps, t = trim(q)
        for comp in comps:
            if not band_exists(comp):
                continue
            merged = TransformTrace(trace.steps + t.steps)
            merged.add("component", {"vertices": list(comp.vertices)}, comp.name)
            if comp.structure_key() not in seen_states:
                seen_states.add(comp.structure_key())
                queue.append((comp, merged))

    queue: list[tuple[BoundQuiver, TransformTrace]] = []
    push(a, TransformTrace(), queue)
    while queue:
        q, trace = queue.pop(0)
        proper = []
        for band in enumerate_bands(q, 2 * len(q.arrows)):
            r = reduce(q, band)
            if {x.name for x in r.arrows} != {x.name for x in q.arrows}:
                proper.append((band, r))
        if not proper:
            outputs.append((q, trace))
            continue
        for band, r in proper:
            t = TransformTrace(trace.steps)
            t.add("reduce", {"band": band.render()}, r.name)
            push(r, t, queue)

    unique: list[tuple[BoundQuiver, TransformTrace]] = []
    for q, trace in outputs:
        if not any(quivers_isomorphic(q, u) for u, _ in unique):
            unique.append((q, trace))
    return unique


# -- quiver isomorphism --------------------------------------------------------------


def _degree_signature(q: BoundQuiver, v: str) -> tuple[int, int]:
    return (len(q.incoming(v)), len(q.outgoing(v)))


def quivers_isomorphic(q1: BoundQuiver, q2: BoundQuiver) -> bool:
    """Exhaustive isomorphism test for small bound quivers.

    Tries vertex bijections compatible with degree signatures, then arrow
    bijections within parallel classes, and compares relation sets.
    Exponential in the worst case; intended for fully reduced outputs.
    """
    if (
        len(q1.vertices) != len(q2.vertices)
        or len(q1.arrows) != len(q2.arrows)
        or len(q1.relations) != len(q2.relations)
    ):
        return False
    sig1 = sorted(_degree_signature(q1, v) for v in q1.vertices)
    sig2 = sorted(_degree_signature(q2, v) for v in q2.vertices)
    if sig1 != sig2:
        return False

    order = sorted(q1.vertices, key=lambda v: (_degree_signature(q1, v), q1.vertex_index[v]))
    used: set[str] = set()
    mapping: dict[str, str] = {}

    def arrows_between(q: BoundQuiver, u: str, v: str) -> int:
        return sum(1 for a in q.outgoing(u) if a.tgt == v)

    def assign(k: int) -> bool:
        if k == len(order):
            return _match_arrows(q1, q2, mapping)
        v = order[k]
        for w in q2.vertices:
            if w in used or _degree_signature(q2, w) != _degree_signature(q1, v):
                continue
            ok = True
            for u, mu in mapping.items():
                if arrows_between(q1, v, u) != arrows_between(q2, w, mu):
                    ok = False
                    break
                if arrows_between(q1, u, v) != arrows_between(q2, mu, w):
                    ok = False
                    break
            if arrows_between(q1, v, v) != arrows_between(q2, w, w):
                ok = False
            if not ok:
                continue
            mapping[v] = w
            used.add(w)
            if assign(k + 1):
                return True
            del mapping[v]
            used.remove(w)
        return False

    return assign(0)


def _match_arrows(q1: BoundQuiver, q2: BoundQuiver, vmap: dict[str, str]) -> bool:
    groups: dict[tuple[str, str], list[str]] = {}
    for a in q1.arrows:
        groups.setdefault((a.src, a.tgt), []).append(a.name)
    targets: dict[tuple[str, str], list[str]] = {}
    for a in q2.arrows:
        targets.setdefault((a.src, a.tgt), []).append(a.name)
    keys = []
    choices = []
    for (u, v), names in groups.items():
        cand = targets.get((vmap[u], vmap[v]), [])
        if len(cand) != len(names):
            return False
        keys.append(names)
        choices.append(list(itertools.permutations(cand)))
    rels2 = {r.key() for r in q2.relations}
    for combo in itertools.product(*choices):
        amap = {}
        for names, perm in zip(keys, combo):
            amap.update(dict(zip(names, perm)))
        mapped = {
            Relation(r.kind, tuple(amap[x] for x in r.path1), tuple(amap[x] for x in r.path2)).key()
            for r in q1.relations
        }
        if mapped == rels2:
            return True
    return False
