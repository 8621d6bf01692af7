import pytest

from tropih import corpus
from tropih.errors import BadPair, ConditionCNotAsserted, FieldRequired, NotAFan, NotOneDimensional
from tropih.ic_engine import GM, NONGM, Model, homology, tropical_homology
from tropih.oracles import (ALLOWABLE_SUM, FLAVORS, VANISH, allowable_sum_rank, compare_cone,
                            cone_formula, duality_check, edge_classes, onedim_gm, onedim_nongm,
                            tms_model, tms_oracle)
from tropih.polyhedral_core import FaceComplex, segment
from tropih.stratification import face_filtration


def ranks(groups):
    return {k: g.free_rank for k, g in groups.items() if g.free_rank}


# ---------------------------------------------------------------- cone formula

def test_cone_formula_examples():
    m = corpus.u31(0).model()
    pred = cone_formula(m, 0, "NONGM")
    assert set(pred.cases.values()) == {VANISH}
    assert all(g.is_zero() for g in pred.groups.values())
    pred = cone_formula(m, 1, "GM")
    assert pred.cases[0] == ALLOWABLE_SUM and pred.group(0).free_rank == 2
    assert allowable_sum_rank(m, 1) == 2
    dual = m.with_perversity({"cell:%d" % m.cone_point: -1})
    pred = cone_formula(dual, 1, "NONGM_BM")
    assert all(g.is_zero() for g in pred.groups.values())


def test_cone_cases_are_disjoint():
    for inst in corpus.cone_corpus():
        if inst.name.startswith("four"):
            continue
        m = inst.model()
        for flavor in FLAVORS:
            for p in range(m.free_dim + 1):
                pred = cone_formula(m, p, flavor)
                assert sorted(pred.cases) == list(range(len(pred.cases)))


@pytest.mark.parametrize("inst", corpus.cone_corpus(), ids=lambda i: i.name)
def test_engine_matches_cone_formula(inst):
    m = inst.model()
    for flavor in FLAVORS:
        for coeff in ("Q", "Z"):
            assert compare_cone(m, flavor, coeff) == []


def test_not_a_fan():
    with pytest.raises(NotAFan):
        cone_formula(corpus.segment_inst(0).model(), 0, "GM")


# ---------------------------------------------------------------- one-dimensional spaces

def test_onedim_nongm_examples():
    assert ranks(onedim_nongm(corpus.segment_inst(0).model())) == {(0, 1): 1, (1, 1): 1}
    assert ranks(onedim_nongm(corpus.segment_inst(-1).model())) == {(0, 0): 1, (1, 0): 1}
    assert ranks(onedim_nongm(corpus.triangle_cycle(0).model())) == {(0, 1): 3, (1, 1): 3}
    A, B = edge_classes(corpus.triangle_cycle(0).model())
    assert len(A) == 3 and not B


def test_onedim_gm_examples():
    m = corpus.triangle_cycle(0).model()
    assert onedim_gm(m) == tropical_homology(m).groups
    assert ranks(onedim_gm(corpus.segment_inst(-1).model())) == {(0, 0): 1, (1, 0): 1}
    assert ranks(onedim_gm(corpus.u31(-1).model())) == {(0, 0): 3, (1, 0): 3}


@pytest.mark.parametrize("seed", range(6))
def test_engine_matches_onedim_oracles_on_random_graphs(seed):
    m = corpus.random_onedim(seed).model()
    assert homology(m, variant=NONGM).groups == onedim_nongm(m)
    assert homology(m, variant=GM).groups == onedim_gm(m)


def test_not_one_dimensional():
    with pytest.raises(NotOneDimensional):
        onedim_nongm(corpus.quadrant_fan().model())
    with pytest.raises(NotOneDimensional):
        onedim_gm(corpus.quadrant_fan().model())


# ---------------------------------------------------------------- tropical manifolds with singularities

@pytest.mark.parametrize("m", [-1, 0, 1])
def test_tms_oracle_matches_engine(m):
    for inst in corpus.tms_pairs(m):
        model = inst.model()
        assert homology(model, variant=NONGM).groups == tms_oracle(model, m)


def test_tms_whole_space_cases_agree():
    C = corpus.triangle_cycle(0).complex
    a = tms_oracle(tms_model(C, C.ids(), -1), -1)
    b = tms_oracle(tms_model(C, C.ids(), 0), 0)
    assert a == b


def test_bad_pair():
    C = corpus.quadrant_fan().complex
    with pytest.raises(BadPair):
        tms_model(C, C.ids(), 0)
    S = FaceComplex.from_maximal([segment([0], [1])])
    with pytest.raises(BadPair):
        tms_model(S, [i for i in S.ids() if S.dim(i) == 0], 0)
    with pytest.raises(BadPair):
        tms_oracle(corpus.segment_inst(0).model(), 0)


# ---------------------------------------------------------------- duality

@pytest.mark.parametrize("m", [-1, 0, 1])
def test_duality_on_manifold_pairs(m):
    for inst in corpus.tms_pairs(m):
        assert duality_check(inst.model()).ok


def test_duality_fails_outside_manifold_pairs():
    for inst in corpus.non_manifold_pairs(0):
        assert not duality_check(inst.model()).ok


def test_duality_gm_counterexample():
    m = corpus.u31(0).model()
    assert duality_check(m, variant=NONGM).ok
    rep = duality_check(m, variant=GM)
    assert (1, 1) in rep.mismatches
    coh, bm = rep.entries[(1, 1)]
    assert coh != bm
    assert rep.to_json()["ok"] is False


def test_duality_errors_and_empty():
    m = corpus.u31(0).model()
    with pytest.raises(FieldRequired):
        duality_check(m, coeff="Z")
    S = FaceComplex.from_maximal([segment([0], [1])])
    with pytest.raises(ConditionCNotAsserted):
        duality_check(Model(S, face_filtration(S), condition_C=False))
    E = FaceComplex([])
    assert duality_check(Model(E, face_filtration(E), condition_C=True)).ok
