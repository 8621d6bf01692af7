import pytest

from tropih.errors import NotClosed, ValidationError
from tropih.polyhedral_core import FaceComplex, box, plane_cone, ray, segment
from tropih.triangulate import (barycentric_subdivide, delete_closed, link_vertices,
                                stratified_triangulation, subdivide_to)


def u31():
    return FaceComplex.from_maximal([ray([0, 0], [1, 0]), ray([0, 0], [0, 1]), ray([0, 0], [-1, -1])])


def four_quadrants():
    return FaceComplex.from_maximal([plane_cone([0, 0], a, b) for a, b in
                                     [((1, 0), (0, 1)), ((0, 1), (-1, 0)),
                                      ((-1, 0), (0, -1)), ((0, -1), (1, 0))]])


def euler(T, simplices=None):
    if simplices is None:
        simplices = [s for s in T.all_simplices() if T.is_active(s)]
    return sum((-1) ** (len(s) - 1) for s in simplices)


def components(simplices):
    parent = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            x = parent[x]
        return x
    for s in simplices:
        for v in s:
            parent[find(v)] = find(s[0])
    return len({find(v) for v in parent})


def test_segment_is_one_edge():
    T = stratified_triangulation(FaceComplex.from_maximal([segment([0], [1])]))
    assert T.count() == {0: 2, 1: 1}


def test_u31_truncated_to_a_tripod():
    T = stratified_triangulation(u31())
    assert T.count() == {0: 4, 1: 3}
    assert euler(T) == 1


def test_square_is_coned_into_four_triangles():
    T = stratified_triangulation(FaceComplex.from_maximal([box([0, 0], [1, 1])]))
    assert len(T.simplices[2]) == 4
    assert euler(T) == 1


def test_four_quadrants_levels():
    T = stratified_triangulation(four_quadrants())
    counts = [len(T.simplices[2])]
    for _ in range(2):
        T = barycentric_subdivide(T)
        counts.append(len(T.simplices[2]))
    assert counts == [16, 96, 576]
    assert euler(T) == 1


def test_carriers_contain_barycenters():
    C = u31()
    T = subdivide_to(stratified_triangulation(C), 2)
    for s in T.all_simplices():
        assert C.cell(T.carrier[s]).relint_contains(T.barycenter(s))
        assert C.dim(T.carrier[s]) >= len(s) - 1


def test_delete_closed_leaves_three_half_open_rays():
    C = u31()
    origin = [i for i in C.ids() if C.dim(i) == 0]
    T = subdivide_to(stratified_triangulation(C), 1)
    D = delete_closed(T, origin)
    kept = [s for s in D.all_simplices() if D.is_active(s)]
    assert components(kept) == 3
    assert euler(D) == 3
    rays = [i for i in C.ids() if C.dim(i) == 1]
    with pytest.raises(NotClosed):
        delete_closed(T, rays)


def test_link_of_cone_point():
    C = u31()
    origin = [i for i in C.ids() if C.dim(i) == 0][0]
    T = subdivide_to(stratified_triangulation(C), 2)
    L = link_vertices(T, origin)
    assert len(L) == 3
    assert all(T.carrier[(v,)] != origin for v in L)
    with pytest.raises(ValidationError):
        link_vertices(T, [i for i in C.ids() if C.dim(i) == 1][0])
