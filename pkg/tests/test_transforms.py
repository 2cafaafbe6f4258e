import pytest

from stringalg.fixtures import load_fixture
from stringalg.quiver import nodes, validate_gentle, validate_string_algebra
from stringalg.transforms import (
    TransformError,
    barify,
    fully_reduce,
    glue,
    quivers_isomorphic,
    reduce,
    resolve_nodes,
    trim,
    weak_reduce,
)
from stringalg.words import band_exists, enumerate_bands, word_from_text


def test_resolve_double_cycle_gives_hereditary_hexagon(corpus):
    out, trace = resolve_nodes(corpus["double_a2"])
    assert not isinstance(out, list)
    assert len(out.vertices) == 6
    assert len(out.arrows) == 6
    assert not out.relations
    assert not nodes(out)
    assert trace.steps[0][0] == "resolve-nodes"


def test_resolve_node_free_is_identity(corpus):
    q = corpus["atilde5"]
    out, _ = resolve_nodes(q)
    assert out == q


def test_resolve_can_disconnect(corpus):
    out, _ = resolve_nodes(corpus["double_a1"])
    assert isinstance(out, list) and len(out) == 2


def test_glue_preconditions(corpus):
    q = corpus["atilde5"]  # source 0, sink 3? actually sink is 5 and 3? check 3
    with pytest.raises(TransformError):
        glue(q, "1", "0")  # 1 is not a sink
    with pytest.raises(TransformError):
        glue(q, "5", "1")  # 1 is not a source


def test_glue_then_resolve_round_trip():
    a = load_fixture("bongartz_a_1_1")
    g = glue(a, "y", "x")
    assert nodes(g) == {"y~x"}
    back, _ = resolve_nodes(g)
    assert quivers_isomorphic(back, a)


def test_glue_barbell_then_resolve_restores_it():
    b = load_fixture("barbell_a9")
    g = glue(b, "4", "0")
    assert nodes(g) == {"4~0"}
    back, _ = resolve_nodes(g)
    assert quivers_isomorphic(back, b)


def test_barify_first_stage_structure():
    a9 = load_fixture("a9")
    v1 = word_from_text(a9, "delta alpha2 alpha1- alpha")
    v2 = word_from_text(a9, "gamma- beta2 beta1- beta-")
    out = barify(a9, v1, v2)
    assert len(out.vertices) == 7
    assert len(out.arrows) == 8
    assert {r.path1 for r in out.relations} == {("alpha", "beta"), ("gamma", "delta")}
    bar_arrows = {"alpha1~beta1", "alpha2~beta2"}
    assert bar_arrows <= {x.name for x in out.arrows}
    assert validate_string_algebra(out).holds


def test_barify_second_stage_zero_length_bar():
    q = load_fixture("barbell_a9")
    out = barify(q, word_from_text(q, "alpha eps-"), word_from_text(q, "mu- delta"))
    assert len(out.vertices) == 6
    assert {r.path1 for r in out.relations} == {
        ("alpha", "beta"),
        ("gamma", "delta"),
        ("delta", "alpha"),
        ("mu", "eps"),
    }


def test_barify_rejects_overlapping_interiors():
    a9 = load_fixture("a9")
    v1 = word_from_text(a9, "delta alpha2 alpha1- alpha")
    with pytest.raises(TransformError):
        barify(a9, v1, v1)


def test_trim_big_example(big_gentle):
    comps, trace = trim(big_gentle)
    assert trace.steps[0] == ("remove-nodes", {"vertices": ["b", "d", "e"]}, trace.steps[0][2])
    assert len(comps) == 3
    vertex_sets = [set(c.vertices) for c in comps]
    assert {"1", "2", "3", "4", "5", "6"} in vertex_sets
    assert {str(i) for i in range(7, 21)} in vertex_sets
    assert {"21", "22", "23", "24"} in vertex_sets
    for c in comps:
        assert validate_gentle(c).holds
        assert not nodes(c)
        assert all(c.degree(v) != 1 for v in c.vertices)


def test_trim_fixpoint(corpus):
    comps, _ = trim(corpus["gb22"])
    assert comps == [corpus["gb22"]]


def _serial_barbell(big_gentle):
    comps, _ = trim(big_gentle)
    am = next(c for c in comps if "8" in c.vertices and "20" in c.vertices)
    middle = {str(i) for i in range(8, 18)}
    for b in enumerate_bands(am, 2 * len(am.arrows)):
        if set(b.representative.walk_vertices()) == middle:
            return am, b
    raise AssertionError("middle band not found")


def test_weak_reduce_middle_component(big_gentle):
    am, band = _serial_barbell(big_gentle)
    out = weak_reduce(am, band)
    assert len(out.vertices) == 10
    assert {r.path1 for r in out.relations} == {("b5", "b2"), ("b12", "b9")}


def test_weak_reduce_identity_when_band_visits_all(corpus):
    q = corpus["atilde5"]
    band = enumerate_bands(q, 12)[0]
    assert weak_reduce(q, band) == q.restrict(set(q.vertices), name=f"{q.name}.w")


def test_reduce_left_component_to_hereditary(big_gentle):
    comps, _ = trim(big_gentle)
    al = next(c for c in comps if "1" in c.vertices and "6" in c.vertices)
    target = None
    for b in enumerate_bands(al, 2 * len(al.arrows)):
        if set(b.representative.walk_vertices()) == set(al.vertices):
            r = reduce(al, b)
            if not r.relations and len(r.vertices) == 6:
                target = r
    assert target is not None
    assert validate_gentle(target).holds and band_exists(target)


def test_reduce_right_component_two_orientations(big_gentle):
    comps, _ = trim(big_gentle)
    ar = next(c for c in comps if "21" in c.vertices)
    outs = []
    for b in enumerate_bands(ar, 2 * len(ar.arrows)):
        r = reduce(ar, b)
        if {x.name for x in r.arrows} != {x.name for x in ar.arrows}:
            outs.append(r)
    assert len(outs) == 2
    assert all(not r.relations and len(r.vertices) == 4 for r in outs)
    assert not quivers_isomorphic(outs[0], outs[1])


def test_fully_reduce_outputs(big_gentle):
    outs = [q for q, _ in fully_reduce(big_gentle)]
    comps, _ = trim(big_gentle)
    ar = next(c for c in comps if "21" in c.vertices)
    a3s = [
        reduce(ar, b)
        for b in enumerate_bands(ar, 2 * len(ar.arrows))
        if {x.name for x in reduce(ar, b).arrows} != {x.name for x in ar.arrows}
    ]
    hereditary_a5 = [q for q in outs if len(q.vertices) == 6 and not q.relations]
    assert hereditary_a5
    for a3 in a3s:
        assert any(quivers_isomorphic(a3, q) for q in outs)
    assert not quivers_isomorphic(a3s[0], a3s[1])
    for q in outs:
        assert q.is_connected() and validate_gentle(q).holds and band_exists(q)
        for b in enumerate_bands(q, 2 * len(q.arrows)):
            assert {x.name for x in reduce(q, b).arrows} == {x.name for x in q.arrows}


def test_fully_reduce_fixpoints(corpus):
    for name in ("gb22", "atilde5", "zero_bar_gb", "loops_barbell"):
        outs = fully_reduce(corpus[name])
        assert len(outs) == 1
        assert outs[0][0] == corpus[name]


def test_three_vertex_parity_after_trimming(big_gentle):
    comps, _ = trim(big_gentle)
    for c in comps:
        assert sum(1 for v in c.vertices if c.degree(v) == 3) % 2 == 0


def test_quiver_isomorphism_basics(corpus):
    q = corpus["lambda3"]
    renamed = q.rename("other")
    assert quivers_isomorphic(q, renamed)
    assert not quivers_isomorphic(q, corpus["lambda4"])
    assert not quivers_isomorphic(q, corpus["atilde5"])


def test_barify_flags_boundary_relation_involvement():
    from stringalg.transforms import TransformTrace

    q = load_fixture("barbell_a9")
    tr = TransformTrace()
    barify(q, word_from_text(q, "alpha eps-"), word_from_text(q, "mu- delta"), trace=tr)
    op, params, _ = tr.steps[0]
    assert op == "barify"
    # delta and alpha already sit in the stage-one relations
    assert params["boundary_arrows_in_relations"] == ["alpha", "delta"]
    assert params["bar_length"] == 0
