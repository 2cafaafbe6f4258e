"""Recognizers for the bound-quiver classes, minimality checkers,
tau-tilting finiteness verdicts and the homological report for gentle
algebras."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .quiver import (
    BoundQuiver,
    QuiverError,
    is_finite_dimensional,
    nodes,
    nonzero_paths,
    monomialize,
    parallel_pair_candidates,
    quotient_by_arrow,
    quotient_by_parallel_pair,
    quotient_by_path,
    quotient_by_vertex,
    validate_gentle,
    validate_special_biserial,
    validate_string_algebra,
)
from .transforms import fully_reduce, reduce, resolve_nodes
from .words import (
    BandClass,
    Letter,
    StringWord,
    band_exists,
    enumerate_bands,
    is_string,
    lazy_word,
)

HEREDITARY_AN = "HereditaryAn"
BARBELL = "Barbell"
GENERALIZED_BARBELL = "GeneralizedBarbell"
WIND_WHEEL = "WindWheel"
NODY = "Nody"
OTHER = "Other"


@dataclass
class ClassLabel:
    value: str
    detail: dict = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"label": self.value, "detail": _detail_json(self.detail), "notes": list(self.notes)}


def _detail_json(detail: dict) -> dict:
    out = {}
    for k, v in detail.items():
        if isinstance(v, StringWord):
            out[k] = v.render()
        elif isinstance(v, BandClass):
            out[k] = v.render()
        elif isinstance(v, ClassLabel):
            out[k] = v.to_json()
        elif isinstance(v, (list, tuple)):
            out[k] = [x.render() if isinstance(x, (StringWord, BandClass)) else x for x in v]
        else:
            out[k] = v
    return out


def _is_serial(w: StringWord) -> bool:
    return all(not l.inverse for l in w.letters) or all(l.inverse for l in w.letters)


# -- cycle tracing helpers ---------------------------------------------------------


def _other_incidences(q: BoundQuiver, v: str, used: Letter) -> list[Letter]:
    """All letters leaving ``v`` other than backtracking on ``used``."""
    out = []
    for a in q.outgoing(v):
        out.append(Letter(a.name, False))
    for a in q.incoming(v):
        out.append(Letter(a.name, True))
    back = used.inv()
    result, skipped = [], False
    for l in out:
        if l == back and not skipped:
            skipped = True
            continue
        result.append(l)
    return result


def _trace_cycle(q: BoundQuiver, x: str, out_arrow: str, in_arrow: str) -> StringWord | None:
    """Follow the unique walk from ``x`` via ``out_arrow`` through 2-vertices,
    accepting only if it returns to ``x`` along ``in_arrow`` forwards."""
    letters = [Letter(out_arrow, False)]
    cur = q.arrow_by_name[out_arrow].tgt
    seen = {x}
    while cur != x:
        if cur in seen or q.degree(cur) != 2:
            return None
        seen.add(cur)
        nxt = _other_incidences(q, cur, letters[-1])
        if len(nxt) != 1:
            return None
        letters.append(nxt[0])
        l = nxt[0]
        a = q.arrow_by_name[l.arrow]
        cur = a.src if l.inverse else a.tgt
    if letters[-1] != Letter(in_arrow, False):
        return None
    w = StringWord(q, tuple(letters))
    return w if is_string(w) else None


def _trace_bar(q: BoundQuiver, x: str, y: str, cycle_arrows: set[str]) -> StringWord | None:
    """The unique walk from ``x`` to ``y`` avoiding the cycle arrows."""
    start = [
        l
        for v_arrows, inv in ((q.outgoing(x), False), (q.incoming(x), True))
        for l in (Letter(a.name, inv) for a in v_arrows)
        if l.arrow not in cycle_arrows
    ]
    if len(start) != 1:
        return None
    letters = [start[0]]
    a = q.arrow_by_name[start[0].arrow]
    cur = a.src if start[0].inverse else a.tgt
    seen = {x}
    while cur != y:
        if cur in seen or q.degree(cur) != 2:
            return None
        seen.add(cur)
        nxt = _other_incidences(q, cur, letters[-1])
        if len(nxt) != 1:
            return None
        letters.append(nxt[0])
        l = nxt[0]
        a = q.arrow_by_name[l.arrow]
        cur = a.src if l.inverse else a.tgt
    w = StringWord(q, tuple(letters))
    return w if is_string(w) else None


def _try_barbell(q: BoundQuiver) -> ClassLabel | None:
    quad = [r for r in q.relations if len(r.path1) == 2]
    if len(q.relations) != 2 or len(quad) != 2:
        return None
    for r1, r2 in ((quad[0], quad[1]), (quad[1], quad[0])):
        alpha, beta = r1.path1
        gamma, delta = r2.path1
        x = q.arrow_by_name[alpha].tgt
        y = q.arrow_by_name[gamma].tgt
        c_l = _trace_cycle(q, x, beta, alpha)
        c_r = _trace_cycle(q, y, delta, gamma)
        if c_l is None or c_r is None:
            continue
        la = {l.arrow for l in c_l.letters}
        ra = {l.arrow for l in c_r.letters}
        lv = set(c_l.walk_vertices())
        rv = set(c_r.walk_vertices())
        if la & ra:
            continue
        if x == y:
            if lv & rv != {x}:
                continue
            if la | ra != {a.name for a in q.arrows}:
                continue
            if lv | rv != set(q.vertices):
                continue
            if _is_serial(c_l) and _is_serial(c_r):
                continue  # the composite cycle would be uniserial
            bar = lazy_word(q, x)
            detail = {"x": x, "y": y, "c_l": c_l, "c_r": c_r, "bar": bar, "bar_serial": False}
            return ClassLabel(GENERALIZED_BARBELL, detail)
        if lv & rv:
            continue
        bar = _trace_bar(q, x, y, la | ra)
        if bar is None:
            continue
        ba = {l.arrow for l in bar.letters}
        bv = set(bar.walk_vertices())
        if la | ra | ba != {a.name for a in q.arrows}:
            continue
        if lv | rv | bv != set(q.vertices):
            continue
        if bv & lv != {x} or bv & rv != {y}:
            continue
        detail = {
            "x": x,
            "y": y,
            "c_l": c_l,
            "c_r": c_r,
            "bar": bar,
            "bar_serial": _is_serial(bar),
        }
        return ClassLabel(BARBELL, detail)
    return None


def _try_wind_wheel(q: BoundQuiver) -> ClassLabel | None:
    bands = enumerate_bands(q, 2 * len(q.arrows))
    if len(bands) != 1:
        return None
    v = bands[0].representative
    if set(v.walk_vertices()) != set(q.vertices):
        return None
    if v.supported_arrows() != {a.name for a in q.arrows}:
        return None
    doubles = v.double_supported_arrows()
    if not doubles:
        return None
    # maximal directed runs of doubly supported arrows are the bars
    nxt: dict[str, str] = {}
    for name in doubles:
        a = q.arrow_by_name[name]
        succ = [b.name for b in q.outgoing(a.tgt) if b.name in doubles]
        if len(succ) > 1:
            return None
        if succ:
            nxt[name] = succ[0]
    heads = set(nxt.values())
    starts = [n for n in doubles if n not in heads]
    bars: list[list[str]] = []
    used = set()
    for s in sorted(starts, key=lambda n: q.arrow_index[n]):
        bar = [s]
        used.add(s)
        while bar[-1] in nxt:
            bar.append(nxt[bar[-1]])
            used.add(bar[-1])
        bars.append(bar)
    if used != doubles:
        return None  # a cyclic block of doubly supported arrows
    expected: set[tuple[str, ...]] = set()
    bar_words = []
    for bar in bars:
        xv = q.arrow_by_name[bar[0]].src
        yv = q.arrow_by_name[bar[-1]].tgt
        ins_x = [a.name for a in q.incoming(xv) if a.name not in doubles]
        outs_x = [a.name for a in q.outgoing(xv) if a.name not in doubles]
        ins_y = [a.name for a in q.incoming(yv) if a.name not in doubles]
        outs_y = [a.name for a in q.outgoing(yv) if a.name not in doubles]
        if len(ins_x) != 1 or len(outs_x) != 1 or len(ins_y) != 1 or len(outs_y) != 1:
            return None
        expected.add((ins_x[0], outs_x[0]))
        expected.add((ins_y[0], outs_y[0]))
        expected.add((ins_x[0], *bar, outs_y[0]))
        bar_words.append(StringWord(q, tuple(Letter(n, False) for n in bar)))
    actual = {r.path1 for r in q.relations}
    if actual != expected:
        return None
    c_rels = sorted(p for p in expected if len(p) == 2)
    b_rels = sorted(p for p in expected if len(p) > 2)
    detail = {
        "band": bands[0],
        "bars": bar_words,
        "c_relations": [" ".join(p) for p in c_rels],
        "b_relations": [" ".join(p) for p in b_rels],
    }
    return ClassLabel(WIND_WHEEL, detail)


def classify_node_free(q: BoundQuiver) -> ClassLabel:
    """Recognize hereditary cycles, (generalized) barbells and wind wheels
    among connected node-free string algebras."""
    if not validate_string_algebra(q).holds:
        raise QuiverError("classification expects a string algebra")
    if nodes(q):
        raise QuiverError("classification expects a node-free quiver")
    if not q.is_connected():
        return ClassLabel(OTHER, notes=("disconnected",))
    if (
        not q.relations
        and len(q.arrows) == len(q.vertices)
        and all(q.degree(v) == 2 for v in q.vertices)
        and is_finite_dimensional(q)
    ):
        band = enumerate_bands(q, 2 * len(q.arrows))
        return ClassLabel(HEREDITARY_AN, {"band": band[0]})
    barbell = _try_barbell(q)
    if barbell is not None:
        return barbell
    wheel = _try_wind_wheel(q)
    if wheel is not None:
        return wheel
    return ClassLabel(OTHER)


def classify_mri_sb(q: BoundQuiver) -> ClassLabel:
    """Classification of minimal representation-infinite special biserial
    algebras: hereditary cycle, barbell with non-serial bar, wind wheel, or
    nody; anything else is Other."""
    if not validate_special_biserial(q).holds:
        raise QuiverError("classification expects a special biserial algebra")
    if not validate_string_algebra(q).holds:
        return ClassLabel(OTHER, notes=("not a string algebra",))
    if not band_exists(q):
        return ClassLabel(OTHER, notes=("representation-finite",))
    ns = nodes(q)
    if not ns:
        label = classify_node_free(q)
        if label.value == BARBELL and label.detail.get("bar_serial"):
            return ClassLabel(OTHER, label.detail, notes=("barbell with serial bar",))
        if label.value == GENERALIZED_BARBELL:
            return ClassLabel(OTHER, label.detail, notes=("zero-length bar",))
        return label
    resolved, _ = resolve_nodes(q)
    if isinstance(resolved, list):
        return ClassLabel(OTHER, notes=("node resolution disconnects",))
    sub = classify_node_free(resolved)
    ok = sub.value in (HEREDITARY_AN, WIND_WHEEL) or (
        sub.value == BARBELL and not sub.detail.get("bar_serial")
    )
    if ok:
        return ClassLabel(NODY, {"nodes": sorted(ns), "resolved": sub})
    return ClassLabel(OTHER, {"resolved": sub}, notes=("resolution is not mild",))


# -- minimality checkers -------------------------------------------------------------


def is_weakly_minimal_rep_infinite(q: BoundQuiver) -> bool:
    """Rep-infinite, but every one-vertex quotient is rep-finite."""
    if not validate_string_algebra(q).holds:
        raise QuiverError("expects a string algebra")
    if not band_exists(q):
        return False
    return all(not band_exists(quotient_by_vertex(q, v)) for v in q.vertices)


def is_monomial_minimal_rep_infinite(q: BoundQuiver) -> bool:
    """Rep-infinite, and every single-step quotient by an arrow, a vertex, a
    nonzero path or a coefficient-1 commutativity relation is rep-finite.

    Commutativity quotients are normalised monomially before the band test
    (the representation type is unchanged by killing the forced
    projective-injective socle).
    """
    if not validate_string_algebra(q).holds:
        raise QuiverError("expects a string algebra")
    if not band_exists(q):
        raise QuiverError("expects a representation-infinite algebra")
    for a in q.arrows:
        if band_exists(quotient_by_arrow(q, a.name)):
            return False
    for v in q.vertices:
        if band_exists(quotient_by_vertex(q, v)):
            return False
    for p in nonzero_paths(q):
        if len(p) < 2:
            continue
        if band_exists(quotient_by_path(q, p)):
            return False
    for p1, p2 in parallel_pair_candidates(q):
        cut = monomialize(quotient_by_parallel_pair(q, p1, p2))
        if band_exists(cut):
            return False
    return True


# -- tau-tilting finiteness ------------------------------------------------------------


FINITE = "Finite"
INFINITE = "Infinite"
UNKNOWN = "Unknown"


@dataclass
class TauVerdict:
    value: str
    witness: dict = field(default_factory=dict)
    trace: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"verdict": self.value, "witness": self.witness, "trace": list(self.trace)}


def _family_witness(q: BoundQuiver, label: ClassLabel, m_max: int) -> dict:
    from .census import barbell_brick_family

    fam = barbell_brick_family(q, label, m_max)
    return {
        "kind": "brick-family",
        "algebra": q.name,
        "label": label.value,
        "band": fam.band.render(),
        "verified_exponents": list(fam.verified_exponents),
        "construction": fam.construction,
    }


def _census_witness(q: BoundQuiver, stabilization_factor: int = 3) -> dict:
    from .census import brick_census

    band_len = max((b.length() for b in enumerate_bands(q, 2 * len(q.arrows))), default=1)
    hi = stabilization_factor * band_len
    lo = (stabilization_factor - 1) * band_len
    report = brick_census(q, hi, window_lo=lo)
    return {
        "kind": "census-stabilization",
        "algebra": q.name,
        "window": [lo, hi],
        "stabilized": report.stabilized,
        "bricks_in_window": sum(
            report.per_length[l][1] for l in range(lo + 1, hi + 1) if l in report.per_length
        ),
    }


def tau_finiteness(
    q: BoundQuiver, m_max: int = 3, budget: int = 64, stabilization_factor: int = 3
) -> TauVerdict:
    """Decision cascade for tau-tilting finiteness of a special biserial
    algebra.  Witnesses re-verify: brick families are checked through graph
    maps and the linear-algebra oracle, finiteness through a bounded census.
    """
    if not validate_special_biserial(q).holds:
        raise QuiverError("tau-finiteness expects a special biserial algebra")
    trace = []
    q0 = monomialize(q)
    if q0 is not q:
        trace.append("normalized commutativity relations to monomial pairs")
    if not band_exists(q0):
        trace.append("no band: representation-finite")
        return TauVerdict(
            FINITE,
            {"kind": "rep-finite", "band_bound": 2 * len(q0.arrows)},
            tuple(trace),
        )
    if validate_gentle(q0).holds:
        trace.append("gentle with a band: infinite via full reduction")
        outs = fully_reduce(q0)
        outs.sort(key=lambda t: (len(t[0].vertices), len(t[0].arrows), t[0].name))
        red, _ = outs[0]
        label = classify_node_free(red)
        return TauVerdict(INFINITE, _family_witness(red, label, m_max), tuple(trace))
    label = classify_mri_sb(q0)
    if label.value in (HEREDITARY_AN, BARBELL):
        trace.append(f"classified {label.value}: brick family")
        return TauVerdict(INFINITE, _family_witness(q0, label, m_max), tuple(trace))
    if label.value in (WIND_WHEEL, NODY):
        trace.append(f"classified {label.value}: brick-finite")
        return TauVerdict(FINITE, _census_witness(q0, stabilization_factor), tuple(trace))
    tried = []
    for band in enumerate_bands(q0, 2 * len(q0.arrows))[:budget]:
        r = reduce(q0, band)
        if r.structure_key() == q0.structure_key():
            continue
        for comp in r.components():
            tried.append(comp.name)
            if validate_gentle(comp).holds and band_exists(comp):
                trace.append(f"band reduction {band.render()} is rep-infinite gentle")
                outs = fully_reduce(comp)
                outs.sort(key=lambda t: (len(t[0].vertices), len(t[0].arrows), t[0].name))
                red, _ = outs[0]
                return TauVerdict(
                    INFINITE, _family_witness(red, classify_node_free(red), m_max), tuple(trace)
                )
            sub = classify_mri_sb(comp) if validate_string_algebra(comp).holds else None
            if sub is not None and sub.value in (HEREDITARY_AN, BARBELL):
                trace.append(f"band reduction {band.render()} is {sub.value}")
                return TauVerdict(INFINITE, _family_witness(comp, sub, m_max), tuple(trace))
    trace.append("no witness found within budget")
    return TauVerdict(UNKNOWN, {"kind": "attempted", "reductions": tried}, tuple(trace))


# -- homological report for gentle algebras ----------------------------------------------


@dataclass
class GentleHomReport:
    gentle_arrows: tuple[str, ...]
    n_of_a: int
    injective_dim: int
    injective_dim_is_bound: bool
    gorenstein_dim: int
    gldim_le_2: Optional[bool]

    def to_json(self) -> dict:
        return {
            "gentle_arrows": list(self.gentle_arrows),
            "n_of_a": self.n_of_a,
            "injective_dim": self.injective_dim,
            "injective_dim_is_bound": self.injective_dim_is_bound,
            "gorenstein_dim": self.gorenstein_dim,
            "gldim_le_2": self.gldim_le_2,
        }


def gentle_hom_report(a: BoundQuiver) -> GentleHomReport:
    """Injective/Gorenstein dimensions of a gentle algebra from the maximal
    chain of overlapping relations seeded by a gentle arrow; the global
    dimension bound is reported only for fully reduced shapes."""
    if not validate_gentle(a).holds:
        raise QuiverError("homological report expects a gentle algebra")
    gens = {r.path1 for r in a.relations}
    terminal = {p[1] for p in gens}
    gentle_arrows = tuple(x.name for x in a.arrows if x.name not in terminal)
    succ = {}
    for p in gens:
        succ[p[0]] = p[1]
    n = 0
    for start in gentle_arrows:
        length = 1
        cur = start
        while cur in succ:
            cur = succ[cur]
            length += 1
        n = max(n, length)
    inj = n if n > 0 else 1
    gldim: Optional[bool] = None
    if not nodes(a):
        label = classify_node_free(a)
        if label.value in (HEREDITARY_AN, BARBELL, GENERALIZED_BARBELL):
            gldim = all(x.src != x.tgt for x in a.arrows)
    return GentleHomReport(
        gentle_arrows=gentle_arrows,
        n_of_a=n,
        injective_dim=inj,
        injective_dim_is_bound=(n == 0),
        gorenstein_dim=inj,
        gldim_le_2=gldim,
    )
