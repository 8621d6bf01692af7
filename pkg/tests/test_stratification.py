import pytest

from tropih.errors import ComplementNotClosed, UnsupportedStarDimension, ValidationError
from tropih.polyhedral_core import FaceComplex, box, line, plane_cone, point, ray, segment
from tropih.stratification import (Filtration, Perversity, Stratification, dual_perversity,
                                   face_filtration, pair_filtration, perversity_from_spec, strata,
                                   trop_filtration)


def u31():
    return FaceComplex.from_maximal([ray([0, 0], [1, 0]), ray([0, 0], [0, 1]), ray([0, 0], [-1, -1])])


def vertices(C):
    return {i for i in C.ids() if C.dim(i) == 0}


def edges(C):
    return {i for i in C.ids() if C.dim(i) == 1}


def triangle():
    return FaceComplex.from_maximal([segment([0, 0], [1, 0]), segment([1, 0], [0, 1]),
                                     segment([0, 1], [0, 0])])


def test_face_filtration_examples():
    C = u31()
    F = face_filtration(C)
    assert F.levels[0] == vertices(C) and F.levels[1] == set(C.ids())
    P = FaceComplex.from_maximal([point([0, 0])])
    assert face_filtration(P).levels == [frozenset(P.ids())]
    Q = FaceComplex.from_maximal([box([0, 0], [1, 1]), box([-1, 0], [0, 1]),
                                  box([-1, -1], [0, 0]), box([0, -1], [1, 0])])
    F = face_filtration(Q)
    assert F.levels[0] == vertices(Q)
    assert F.levels[1] == vertices(Q) | edges(Q)
    assert F.levels[2] == set(Q.ids())


def test_trop_filtration_examples():
    S = FaceComplex.from_maximal([segment([0], [1])])
    assert trop_filtration(S).levels[0] == vertices(S)
    L = FaceComplex.from_maximal([ray([0], [1]), ray([0], [-1])])
    F = trop_filtration(L)
    assert F.levels[0] == frozenset()
    assert len(strata(L, F)) == 1
    C = u31()
    assert trop_filtration(C).levels[0] == vertices(C)


def test_trop_filtration_two_dimensional():
    quads = [plane_cone([0, 0], a, b) for a, b in
             [((1, 0), (0, 1)), ((0, 1), (-1, 0)), ((-1, 0), (0, -1)), ((0, -1), (1, 0))]]
    C = FaceComplex.from_maximal(quads)
    F = trop_filtration(C)
    assert F.levels[0] == frozenset() and F.levels[1] == frozenset()
    Q = FaceComplex.from_maximal(quads[:1])
    F = trop_filtration(Q)
    assert F.levels[1] == set(Q.ids()) - {i for i in Q.ids() if Q.dim(i) == 2}
    assert F.levels[0] == vertices(Q)


def test_trop_filtration_rejects_high_quotient_dimension():
    from tropih.polyhedral_core import HPolyhedron
    from fractions import Fraction
    # the positive octant cone in R^3: the apex has a 3-dimensional quotient
    oct_ = HPolyhedron(3, [((-1, 0, 0), Fraction(0)), ((0, -1, 0), Fraction(0)), ((0, 0, -1), Fraction(0))])
    C = FaceComplex.from_maximal([oct_])
    with pytest.raises(UnsupportedStarDimension):
        trop_filtration(C)


def test_pair_filtration_examples():
    S = FaceComplex.from_maximal([segment([0], [1])])
    U = edges(S)
    F = pair_filtration(S, U)
    assert F.levels == [vertices(S), frozenset(S.ids())]
    assert F.condition_C
    F = pair_filtration(S, S.ids())
    assert F.levels[0] == frozenset()
    assert all(S_.regular for S_ in Stratification(S, F).strata)
    F = pair_filtration(S, [])
    assert F.levels == face_filtration(S).levels
    with pytest.raises(ComplementNotClosed):
        pair_filtration(S, vertices(S))


def test_strata_counts():
    S = FaceComplex.from_maximal([segment([0], [1])])
    assert len(strata(S, trop_filtration(S))) == 3
    C = u31()
    st = strata(C, trop_filtration(C))
    assert len(st) == 4
    assert sorted(s.codim for s in st) == [0, 0, 0, 1]
    T = triangle()
    assert len(strata(T, trop_filtration(T))) == 6


def test_filtration_validation():
    S = FaceComplex.from_maximal([segment([0], [1])])
    with pytest.raises(ValidationError):
        Filtration(S, [edges(S), set(S.ids())])  # not closed
    with pytest.raises(ValidationError):
        Filtration(S, [vertices(S), vertices(S)])  # top level incomplete


def test_perversity_presets_and_dual():
    C = u31()
    st = Stratification(C, trop_filtration(C))
    v = [S for S in st.strata if not S.regular][0]
    p = perversity_from_spec(st, "zero")
    assert dual_perversity(st, p)[v.id] == -1
    assert perversity_from_spec(st, "constant:2")[v.id] == 2
    assert perversity_from_spec(st, "codim:1")[v.id] == 2
    cid = min(v.cells)
    assert perversity_from_spec(st, {"cell:%d" % cid: -3})[v.id] == -3
    with pytest.raises(ValidationError):
        Perversity(st, {S.id: 1 for S in st.strata if S.regular})


def test_dual_perversity_fixed_point_in_codim_two():
    Q = FaceComplex.from_maximal([plane_cone([0, 0], (1, 0), (0, 1))])
    st = Stratification(Q, face_filtration(Q))
    p = perversity_from_spec(st, "zero")
    D = dual_perversity(st, p)
    apex = [S for S in st.strata if S.codim == 2][0]
    assert D[apex.id] == 0
    assert dual_perversity(st, D) == p
