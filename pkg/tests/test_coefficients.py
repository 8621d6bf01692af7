import itertools

import pytest
from hypothesis import given, settings, strategies as st

from tropih.coefficients import multitangent, restriction, wedge, wedge_subsets
from tropih.errors import CellNotFound, NotAFace
from tropih.polyhedral_core import FaceComplex, plane_cone, ray, whole_space


def u31():
    return FaceComplex.from_maximal([ray([0, 0], [1, 0]), ray([0, 0], [0, 1]), ray([0, 0], [-1, -1])])


def cell_of(C, direction):
    for i in C.ids():
        if C.dim(i) == 1:
            x = C.cell(i).interior_point().coords
            if all(a * direction[1 - k] == direction[k] * x[1 - k] for k, a in enumerate(x)) and \
                    sum(a * d for a, d in zip(x, direction)) > 0:
                return i
    raise KeyError(direction)


def test_u31_ranks():
    C = u31()
    v = [i for i in C.ids() if C.dim(i) == 0][0]
    assert [multitangent(C, v, p).rank for p in range(3)] == [1, 2, 0]
    e1 = cell_of(C, (1, 0))
    assert [multitangent(C, e1, p).rank for p in range(3)] == [1, 1, 0]
    for i in C.ids():
        assert multitangent(C, i, 0).rank == 1
    with pytest.raises(CellNotFound):
        multitangent(C, 42, 1)


def test_u31_vertex_multitangent_by_box_membership():
    C = u31()
    v = [i for i in C.ids() if C.dim(i) == 0][0]
    L = multitangent(C, v, 1).lattice
    for x in itertools.product(range(-3, 4), repeat=2):
        assert L.contains(list(x))


def test_restriction_ray_to_vertex():
    C = u31()
    v = [i for i in C.ids() if C.dim(i) == 0][0]
    e1 = cell_of(C, (1, 0))
    assert restriction(C, e1, v, 1) == [[1], [0]]
    with pytest.raises(NotAFace):
        restriction(C, v, e1, 1)


def test_restriction_across_sedentarity():
    C = FaceComplex.from_maximal([whole_space(2)], space="T")
    top = [i for i in C.ids() if C.dim(i) == 2][0]
    assert multitangent(C, top, 2).rank == 1
    for i in C.ids():
        if C.dim(i) == 1:
            (j,) = C.cell(i).sedentarity
            keep = 1 - j
            # F_1(R^2) = Z^2 projects onto the surviving coordinate
            M = restriction(C, top, i, 1)
            assert M == [[1 if k == keep else 0 for k in range(2)]]
            assert multitangent(C, i, 2).rank == 0


def test_wedge_is_determinant():
    subs = wedge_subsets(3, 2)
    assert subs == ((0, 1), (0, 2), (1, 2))
    assert wedge([[1, 0, 0], [0, 1, 0]], subs) == [1, 0, 0]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_restriction_composes(v):
    """iota(sigma -> v) equals iota(tau -> v) iota(sigma -> tau) on a 2-dim cone."""
    a, b = (v[0], v[1]), (v[2], v[3])
    if a[0] * b[1] - a[1] * b[0] == 0:
        return
    C = FaceComplex.from_maximal([plane_cone([0, 0], a, b)])
    top = [i for i in C.ids() if C.dim(i) == 2][0]
    apex = [i for i in C.ids() if C.dim(i) == 0][0]
    for tau in C.ids():
        if C.dim(tau) != 1:
            continue
        for p in (0, 1, 2):
            direct = restriction(C, top, apex, p)
            m1 = restriction(C, top, tau, p)
            m2 = restriction(C, tau, apex, p)
            if not m1 or not m2:
                continue
            comp = [[sum(m2[i][k] * m1[k][j] for k in range(len(m1))) for j in range(len(m1[0]))]
                    for i in range(len(m2))]
            assert comp == direct
