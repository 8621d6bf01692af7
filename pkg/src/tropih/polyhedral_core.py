"""Rational polyhedra in T^r = [-inf, inf)^r and finite complexes of them.

Coordinates are indexed from 0.  A polyhedron of sedentarity I lives in
R^r_I, the points whose coordinates in I are -inf, and stands for its
closure in T^r.  Everything is exact: offsets and points are Fractions,
normals are ints.
"""

import itertools
from fractions import Fraction
from functools import reduce
from math import gcd

from .errors import CellNotFound, DimensionMismatch, EmptyPolyhedron, ValidationError
from .exact_linalg import IntegerLattice, kernel_lattice
from .rational_lp import OPTIMAL, INFEASIBLE, lp_max, rref


class _Bottom:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "BOTTOM"

    def __reduce__(self):
        return (_Bottom, ())


BOTTOM = _Bottom()


def parse_rational(x):
    if x is BOTTOM:
        return BOTTOM
    if isinstance(x, str):
        s = x.strip().lower()
        if s in ("-inf", "bottom", "-infinity"):
            return BOTTOM
        return Fraction(s)
    if isinstance(x, float):
        raise ValidationError("floats are not accepted, use 'num/den' strings")
    return Fraction(x)


def format_rational(x):
    if x is BOTTOM:
        return "-inf"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


class ExtendedPoint:
    """A point of T^r; entries are Fractions or BOTTOM."""

    __slots__ = ("coords",)

    def __init__(self, coords):
        self.coords = tuple(parse_rational(c) for c in coords)

    @property
    def ambient_dim(self):
        return len(self.coords)

    def __eq__(self, other):
        return isinstance(other, ExtendedPoint) and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return "ExtendedPoint(%s)" % ", ".join(format_rational(c) for c in self.coords)


def sedentarity(point):
    """Indices of the coordinates equal to -inf."""
    if not isinstance(point, ExtendedPoint):
        point = ExtendedPoint(point)
    return frozenset(i for i, c in enumerate(point.coords) if c is BOTTOM)


def _primitive_int(vec):
    """Scale a rational vector by a positive factor to a primitive integer one."""
    vec = [Fraction(x) for x in vec]
    den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for x in vec), 1)
    ints = [int(x * den) for x in vec]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        return ints, Fraction(0)
    return [x // g for x in ints], Fraction(den, g)


class HPolyhedron:
    """Closure in T^r of {x in R^r_I : <w,x> <= c (ineqs), <w,x> = c (eqs)}.

    ``ineqs``/``eqs`` are lists of (normal, offset); normals are integer
    vectors of length r with zeros on the sedentarity set.
    """

    def __init__(self, ambient_dim, ineqs=(), eqs=(), sedentarity=()):
        self.ambient_dim = int(ambient_dim)
        self.sedentarity = frozenset(int(i) for i in sedentarity)
        if any(i < 0 or i >= self.ambient_dim for i in self.sedentarity):
            raise ValidationError("sedentarity index out of range")
        self.ineqs = tuple(self._clean(c) for c in ineqs)
        self.eqs = tuple(self._clean(c) for c in eqs)
        self._norm = None
        self._key = None

    def _clean(self, con):
        normal, offset = con
        normal = list(normal)
        if len(normal) != self.ambient_dim:
            raise DimensionMismatch("normal of length %d in T^%d" % (len(normal), self.ambient_dim))
        out = []
        for x in normal:
            f = Fraction(x)
            if f.denominator != 1:
                raise ValidationError("normals must be integral")
            out.append(int(f))
        for i in self.sedentarity:
            if out[i] != 0:
                raise ValidationError("normal has a nonzero entry on a sedentarity coordinate")
        return (tuple(out), Fraction(offset))

    # -- coordinates -----------------------------------------------------
    @property
    def free_coords(self):
        return [i for i in range(self.ambient_dim) if i not in self.sedentarity]

    def _restrict(self, cons):
        fc = self.free_coords
        return [[n[i] for i in fc] for n, _ in cons], [c for _, c in cons]

    def _lp(self, objective_free, ineqs=None, eqs=None):
        ineqs = self.ineqs if ineqs is None else ineqs
        eqs = self.eqs if eqs is None else eqs
        A, b = self._restrict(ineqs)
        E, e = self._restrict(eqs)
        return lp_max(objective_free, A, b, E, e)

    def _embed(self, xfree):
        out = [BOTTOM] * self.ambient_dim
        for i, v in zip(self.free_coords, xfree):
            out[i] = Fraction(v)
        return ExtendedPoint(out)

    # -- basic predicates ------------------------------------------------
    def is_empty(self):
        k = len(self.free_coords)
        status, _, _ = self._lp([0] * k)
        return status == INFEASIBLE

    def normalized(self):
        """Same set, with implicit equalities moved to eqs and redundant
        inequalities dropped.  Raises EmptyPolyhedron if empty."""
        if self._norm is not None:
            return self._norm
        if self.is_empty():
            raise EmptyPolyhedron("polyhedron is empty")
        k = len(self.free_coords)
        ineqs = list(self.ineqs)
        eqs = list(self.eqs)
        # implicit equalities: a_i x = b_i on the whole set
        keep = []
        for n, c in ineqs:
            if not any(n):
                if c < 0:
                    raise EmptyPolyhedron("polyhedron is empty")
                continue
            nf = [n[i] for i in self.free_coords]
            status, val, _ = self._lp([-x for x in nf], ineqs, eqs)
            if status == OPTIMAL and -val == c:
                eqs.append((n, c))
            else:
                keep.append((n, c))
        ineqs = keep
        # canonical equality system
        eqs = _canonical_eqs(eqs, self.ambient_dim, self.sedentarity)
        # reduce inequalities modulo the equalities and make them primitive
        ineqs = [_reduce_mod_eqs(con, eqs) for con in ineqs]
        ineqs = [con for con in ineqs if any(con[0])]
        ineqs = sorted(set(ineqs))
        # redundancy
        i = 0
        while i < len(ineqs):
            n, c = ineqs[i]
            others = ineqs[:i] + ineqs[i + 1:]
            nf = [n[j] for j in self.free_coords]
            status, val, _ = self._lp(nf, others, eqs)
            if status == OPTIMAL and val <= c:
                ineqs = others
            else:
                i += 1
        P = HPolyhedron(self.ambient_dim, ineqs, eqs, self.sedentarity)
        P._norm = P
        self._norm = P
        return P

    def key(self):
        """Hashable canonical form; equal keys iff equal sets."""
        if self._key is None:
            P = self.normalized()
            self._key = (self.ambient_dim, tuple(sorted(self.sedentarity)), P.eqs, P.ineqs)
        return self._key

    def __eq__(self, other):
        if not isinstance(other, HPolyhedron):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    @property
    def dim(self):
        P = self.normalized()
        return len(self.free_coords) - len(P.eqs)

    def interior_point(self):
        """A rational point in the relative interior."""
        P = self.normalized()
        k = len(self.free_coords)
        A, b = self._restrict(P.ineqs)
        E, e = self._restrict(P.eqs)
        if not A:
            status, _, x = lp_max([0] * k, [], [], E, e)
            return self._embed(x)
        A2 = [row + [1] for row in A] + [[0] * k + [1]]
        b2 = list(b) + [1]
        E2 = [row + [0] for row in E]
        status, val, x = lp_max([0] * k + [1], A2, b2, E2, e)
        if status != OPTIMAL or val <= 0:
            raise EmptyPolyhedron("no relative interior point found")
        return self._embed(x[:k])

    def _values(self, point):
        if not isinstance(point, ExtendedPoint):
            point = ExtendedPoint(point)
        if point.ambient_dim != self.ambient_dim:
            raise DimensionMismatch("point in T^%d, polyhedron in T^%d" % (point.ambient_dim, self.ambient_dim))
        return point

    def contains(self, point):
        """Membership in the closure in T^r."""
        point = self._values(point)
        J = sedentarity(point)
        if not J >= self.sedentarity:
            return False
        P = self if J == self.sedentarity else self.sed_face(J)
        if P is None:
            return False
        return P._satisfies(point, strict=False)

    def _satisfies(self, point, strict):
        x = point.coords
        for n, c in self.eqs:
            if sum(n[i] * x[i] for i in self.free_coords) != c:
                return False
        for n, c in self.ineqs:
            v = sum(n[i] * x[i] for i in self.free_coords)
            if v > c or (strict and v == c):
                return False
        return True

    def relint_contains(self, point):
        point = self._values(point)
        if sedentarity(point) != self.sedentarity:
            return False
        return self.normalized()._satisfies(point, strict=True)

    def is_bounded(self):
        """Bounded inside R^r_I (recession cone is zero)."""
        P = self.normalized()
        k = len(self.free_coords)
        A, _ = self._restrict(P.ineqs)
        E, _ = self._restrict(P.eqs)
        for j in range(k):
            for sgn in (1, -1):
                obj = [0] * k
                obj[j] = sgn
                st, val, _ = lp_max(obj, A, [0] * len(A), E, [0] * len(E))
                if st != OPTIMAL or val != 0:
                    return False
        return True

    def closure_is_compact(self):
        """The closure in T^r is compact iff the recession cone lies in the
        nonpositive orthant of the free coordinates."""
        P = self.normalized()
        k = len(self.free_coords)
        A, _ = self._restrict(P.ineqs)
        E, _ = self._restrict(P.eqs)
        for j in range(k):
            obj = [0] * k
            obj[j] = 1
            st, val, _ = lp_max(obj, A, [0] * len(A), E, [0] * len(E))
            if st != OPTIMAL or val != 0:
                return False
        return True

    # -- faces -----------------------------------------------------------
    def sed_face(self, J):
        """Closure intersected with R^r_J, as a polyhedron of sedentarity J, or None."""
        J = frozenset(J)
        if J == self.sedentarity:
            return self.normalized()
        if not J > self.sedentarity:
            return None
        P = self.normalized()
        fc = self.free_coords
        D = [i for i in fc if i in J]
        k = len(fc)
        # recession direction: u_d <= -1 on D, u = 0 off J, A u <= 0, E u = 0
        A, _ = self._restrict(P.ineqs)
        E, _ = self._restrict(P.eqs)
        A2 = [row for row in A]
        b2 = [0] * len(A)
        for pos, i in enumerate(fc):
            if i in J:
                row = [0] * k
                row[pos] = 1
                A2.append(row)
                b2.append(-1)
        E2 = [row for row in E]
        e2 = [0] * len(E)
        for pos, i in enumerate(fc):
            if i not in J:
                row = [0] * k
                row[pos] = 1
                E2.append(row)
                e2.append(0)
        st, _, _ = lp_max([0] * k, A2, b2, E2, e2)
        if st != OPTIMAL:
            return None
        ineqs, eqs = _eliminate(list(P.ineqs), list(P.eqs), D)
        return HPolyhedron(self.ambient_dim, ineqs, eqs, J).normalized()

    def faces_same_sedentarity(self):
        """All faces with the same sedentarity, including the polyhedron itself."""
        P = self.normalized()
        seen = {}
        stack = [P]
        while stack:
            Q = stack.pop()
            k = Q.key()
            if k in seen:
                continue
            seen[k] = Q
            for idx in range(len(Q.ineqs)):
                ineqs = Q.ineqs[:idx] + Q.ineqs[idx + 1:]
                eqs = Q.eqs + (Q.ineqs[idx],)
                F = HPolyhedron(Q.ambient_dim, ineqs, eqs, Q.sedentarity)
                if not F.is_empty():
                    stack.append(F.normalized())
        return sorted(seen.values(), key=lambda F: (F.dim, F.key()))

    def tangent_lattice(self):
        """L(sigma) intersected with Z^(free coords), as a saturated lattice."""
        P = self.normalized()
        k = len(self.free_coords)
        E, _ = self._restrict(P.eqs)
        if not E:
            return IntegerLattice(k, [[int(i == j) for j in range(k)] for i in range(k)])
        rows = []
        for row in E:
            ints, _ = _primitive_int(row)
            rows.append(ints)
        return kernel_lattice(rows)

    # -- io --------------------------------------------------------------
    def to_json(self):
        return {
            "ambient_dim": self.ambient_dim,
            "sedentarity": sorted(self.sedentarity),
            "ineqs": [list(n) + [format_rational(c)] for n, c in self.ineqs],
            "eqs": [list(n) + [format_rational(c)] for n, c in self.eqs],
        }

    @classmethod
    def from_json(cls, d):
        r = int(d["ambient_dim"])

        def cons(rows):
            out = []
            for row in rows:
                if len(row) != r + 1:
                    raise ValidationError("constraint row must have ambient_dim + 1 entries")
                out.append(([parse_rational(x) for x in row[:r]], parse_rational(row[r])))
            return out
        return cls(r, cons(d.get("ineqs", [])), cons(d.get("eqs", [])), d.get("sedentarity", []))

    def __repr__(self):
        return "HPolyhedron(r=%d, sed=%s, ineqs=%s, eqs=%s)" % (
            self.ambient_dim, sorted(self.sedentarity), list(self.ineqs), list(self.eqs))


def _canonical_eqs(eqs, r, sed):
    if not eqs:
        return ()
    rows = [list(n) + [c] for n, c in eqs]
    R, piv = rref(rows, r + 1)
    if r in piv:
        raise EmptyPolyhedron("inconsistent equalities")
    out = []
    for row in R:
        ints, scale = _primitive_int(row[:r])
        out.append((tuple(ints), row[r] * scale))
    return tuple(out)


def _reduce_mod_eqs(con, eqs):
    n, c = con
    n = [Fraction(x) for x in n]
    c = Fraction(c)
    for en, ec in eqs:
        p = next(j for j, x in enumerate(en) if x)
        if n[p]:
            f = n[p] / en[p]
            n = [a - f * b for a, b in zip(n, en)]
            c = c - f * ec
    ints, scale = _primitive_int(n)
    return (tuple(ints), c * scale)


def _eliminate(ineqs, eqs, variables):
    """Project out the given coordinates (Gaussian on eqs, then Fourier-Motzkin)."""
    ineqs = [([Fraction(x) for x in n], Fraction(c)) for n, c in ineqs]
    eqs = [([Fraction(x) for x in n], Fraction(c)) for n, c in eqs]
    for d in variables:
        piv = next((e for e in eqs if e[0][d] != 0), None)
        if piv is not None:
            pn, pc = piv
            eqs.remove(piv)

            def sub(con):
                n, c = con
                if n[d] == 0:
                    return con
                f = n[d] / pn[d]
                return ([a - f * b for a, b in zip(n, pn)], c - f * pc)
            eqs = [sub(e) for e in eqs]
            ineqs = [sub(e) for e in ineqs]
            continue
        pos = [e for e in ineqs if e[0][d] > 0]
        neg = [e for e in ineqs if e[0][d] < 0]
        zero = [e for e in ineqs if e[0][d] == 0]
        for pn, pc in pos:
            for nn, nc in neg:
                a, b = pn[d], -nn[d]
                zero.append(([b * x + a * y for x, y in zip(pn, nn)], b * pc + a * nc))
        ineqs = zero
    def fix(con):
        ints, scale = _primitive_int(con[0])
        return (ints, con[1] * scale)
    ineqs = [fix(c) for c in ineqs]
    eqs = [fix(c) for c in eqs]
    ineqs = [c for c in ineqs if any(c[0]) or c[1] < 0]
    eqs = [c for c in eqs if any(c[0]) or c[1] != 0]
    return ineqs, eqs


def enumerate_faces(sigma):
    """All faces of the closure of sigma in T^r, including sigma itself."""
    if sigma.is_empty():
        raise EmptyPolyhedron("cannot enumerate faces of an empty polyhedron")
    out = {}
    fc = sigma.free_coords
    for k in range(len(fc) + 1):
        for extra in itertools.combinations(fc, k):
            J = sigma.sedentarity | frozenset(extra)
            base = sigma.sed_face(J)
            if base is None:
                continue
            for F in base.faces_same_sedentarity():
                out.setdefault(F.key(), F)
    return sorted(out.values(), key=lambda F: (F.dim, len(F.sedentarity), F.key()))


def complex_faces(sigma, space="T"):
    """Faces that belong to a complex living in T^r ("T") or in R^r ("R")."""
    if space == "T":
        return enumerate_faces(sigma)
    return sigma.faces_same_sedentarity()


def relint_contains(sigma, x):
    return sigma.relint_contains(x)


def tangent_lattice(sigma):
    if sigma.is_empty():
        raise EmptyPolyhedron("empty polyhedron has no tangent lattice")
    return sigma.tangent_lattice()


# ---------------------------------------------------------------- builders

def _vec_sub(a, b):
    return [Fraction(x) - Fraction(y) for x, y in zip(a, b)]


def _dot(a, b):
    return sum(Fraction(x) * Fraction(y) for x, y in zip(a, b))


def _perp_normals(directions, r):
    """Integer normals spanning the orthogonal complement of the directions."""
    if not directions:
        return [[int(i == j) for j in range(r)] for i in range(r)]
    rows = [_primitive_int(d)[0] for d in directions]
    return kernel_lattice(rows).basis


def point(coords):
    coords = [Fraction(c) for c in coords]
    r = len(coords)
    eqs = [([int(i == j) for j in range(r)], coords[i]) for i in range(r)]
    return HPolyhedron(r, (), eqs)


def segment(a, b):
    """Closed segment [a, b] in R^r."""
    r = len(a)
    d = _primitive_int(_vec_sub(b, a))[0]
    if not any(d):
        raise ValidationError("degenerate segment")
    eqs = [(n, _dot(n, a)) for n in _perp_normals([d], r)]
    ineqs = [(d, _dot(d, b)), ([-x for x in d], -_dot(d, a))]
    return HPolyhedron(r, ineqs, eqs)


def ray(apex, direction):
    r = len(apex)
    d = _primitive_int(direction)[0]
    eqs = [(n, _dot(n, apex)) for n in _perp_normals([d], r)]
    ineqs = [([-x for x in d], -_dot(d, apex))]
    return HPolyhedron(r, ineqs, eqs)


def line(base, direction):
    r = len(base)
    d = _primitive_int(direction)[0]
    eqs = [(n, _dot(n, base)) for n in _perp_normals([d], r)]
    return HPolyhedron(r, (), eqs)


def plane_cone(apex, u, v):
    """2-dim cone apex + R>=0 u + R>=0 v in R^2 (u, v not parallel)."""
    det = u[0] * v[1] - u[1] * v[0]
    if det == 0:
        raise ValidationError("cone generators are parallel")
    # normals pointing outward: w.x <= w.apex
    n1 = [u[1], -u[0]] if det > 0 else [-u[1], u[0]]
    n2 = [-v[1], v[0]] if det > 0 else [v[1], -v[0]]
    n1 = _primitive_int(n1)[0]
    n2 = _primitive_int(n2)[0]
    return HPolyhedron(2, [(n1, _dot(n1, apex)), (n2, _dot(n2, apex))])


def box(lo, hi):
    r = len(lo)
    ineqs = []
    for i in range(r):
        e = [int(i == j) for j in range(r)]
        ineqs.append((e, Fraction(hi[i])))
        ineqs.append(([-x for x in e], -Fraction(lo[i])))
    return HPolyhedron(r, ineqs)


def whole_space(r, sedentarity=()):
    return HPolyhedron(r, (), (), sedentarity)


def intersect(P, Q):
    if P.ambient_dim != Q.ambient_dim or P.sedentarity != Q.sedentarity:
        raise DimensionMismatch("intersection needs equal ambient dimension and sedentarity")
    return HPolyhedron(P.ambient_dim, P.ineqs + Q.ineqs, P.eqs + Q.eqs, P.sedentarity)


# ---------------------------------------------------------------- complexes

class FaceComplex:
    """Finite polyhedral complex; cells are numbered 0..N-1 in input order.

    ``space`` is "T" when cells stand for their closures in T^r (faces at
    higher sedentarity belong to the complex) and "R" for complexes whose
    support is a subset of R^r, where closures at infinity are not part of
    the space.  The default is "T" iff some cell has nonempty sedentarity.
    """

    def __init__(self, cells, ambient_dim=None, space=None):
        self.cells = [c.normalized() for c in cells]
        if space is None:
            space = "T" if any(c.sedentarity for c in self.cells) else "R"
        if space not in ("R", "T"):
            raise ValidationError("space must be 'R' or 'T'")
        self.space = space
        if ambient_dim is None:
            ambient_dim = self.cells[0].ambient_dim if self.cells else 0
        self.ambient_dim = ambient_dim
        for c in self.cells:
            if c.ambient_dim != ambient_dim:
                raise DimensionMismatch("cells live in different ambient spaces")
        self._index = {}
        for i, c in enumerate(self.cells):
            self._index.setdefault(c.key(), i)
        self._faces = None
        self._missing = None

    @classmethod
    def from_maximal(cls, cells, space=None):
        """Close a list of polyhedra under taking faces, ordered by dimension."""
        if space is None:
            space = "T" if any(c.sedentarity for c in cells) else "R"
        found = {}
        for c in cells:
            for F in complex_faces(c, space):
                found.setdefault(F.key(), F)
        ordered = sorted(found.values(), key=lambda F: (F.dim, -len(F.sedentarity), F.key()))
        return cls(ordered, cells[0].ambient_dim if cells else 0, space)

    def __len__(self):
        return len(self.cells)

    def ids(self):
        return range(len(self.cells))

    def cell(self, i):
        if not isinstance(i, int) or i < 0 or i >= len(self.cells):
            raise CellNotFound("no cell with id %r" % (i,))
        return self.cells[i]

    def index_of(self, P):
        return self._index.get(P.key())

    def dim(self, i):
        return self.cell(i).dim

    @property
    def max_dim(self):
        return max((c.dim for c in self.cells), default=-1)

    def _compute_faces(self):
        faces = {}
        missing = []
        for i, c in enumerate(self.cells):
            fs = set()
            for F in complex_faces(c, self.space):
                j = self._index.get(F.key())
                if j is None:
                    missing.append((i, F))
                elif j != i:
                    fs.add(j)
            faces[i] = frozenset(fs)
        self._faces = faces
        self._missing = missing

    def proper_faces(self, i):
        """Ids of the proper faces of cell i."""
        if self._faces is None:
            self._compute_faces()
        return self._faces[i]

    def is_face(self, tau, sigma):
        return tau == sigma or tau in self.proper_faces(sigma)

    def cofaces(self, i):
        """Ids of cells having i as a face (including i)."""
        return sorted(j for j in self.ids() if j == i or i in self.proper_faces(j))

    def is_closed(self, ids):
        ids = set(ids)
        return all(self.proper_faces(i) <= ids for i in ids)

    def closure(self, ids):
        out = set(ids)
        for i in ids:
            out |= self.proper_faces(i)
        return out

    def is_compact(self):
        return all(c.closure_is_compact() for c in self.cells)

    def to_json(self):
        return {"ambient_dim": self.ambient_dim, "space": self.space,
                "cells": [c.to_json() for c in self.cells]}

    @classmethod
    def from_json(cls, d):
        cells = [HPolyhedron.from_json(c) for c in d.get("cells", [])]
        return cls(cells, int(d.get("ambient_dim", cells[0].ambient_dim if cells else 0)), d.get("space"))


def validate_complex(C):
    """Check face closure, face-to-face intersections and the relint partition.

    Returns a dict with ``valid`` and a list of violation strings.
    """
    violations = []
    if len(C) == 0:
        return {"valid": True, "violations": []}
    if len(C._index) != len(C.cells):
        violations.append("duplicate cells")
    C.proper_faces(0)
    for i, F in C._missing:
        violations.append("cell %d: face %r is not a cell" % (i, F.to_json()))
    ids = list(C.ids())
    for a, b in itertools.combinations(ids, 2):
        msg = _intersection_violation(C, a, b)
        if msg:
            violations.append(msg)
    for i in ids:
        x = C.cells[i].interior_point()
        owners = [j for j in ids if C.cells[j].relint_contains(x)]
        if owners != [i]:
            violations.append("relint sample of cell %d lies in relints of %s" % (i, owners))
    return {"valid": not violations, "violations": violations}


def _intersection_violation(C, a, b):
    A, B = C.cells[a], C.cells[b]
    fa = {F.key() for F in complex_faces(A, C.space)}
    fb = {F.key() for F in complex_faces(B, C.space)}
    r = C.ambient_dim if C.space == "T" else 0
    for k in range(r + 1):
        for J in itertools.combinations(range(r), k):
            J = frozenset(J)
            PA, PB = A.sed_face(J), B.sed_face(J)
            if PA is None or PB is None:
                continue
            X = intersect(PA, PB)
            if X.is_empty():
                continue
            kx = X.key()
            if kx not in fa or kx not in fb:
                return "cells %d and %d meet in a set that is not a common face" % (a, b)
    return None
