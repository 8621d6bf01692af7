"""Stratified simplicial models of polyhedral complexes.

The base model triangulates the complex skeleton by skeleton, coning each
non-simplicial cell from a relative interior point over its triangulated
boundary (subdivision level 0).  Further levels are barycentric
subdivisions.  Each simplex remembers its carrier,
the cell whose relative interior contains the simplex's relative interior.

Unbounded cells of a complex in R^r are cut by a box [-R, R]^r; the cuts
are stratum preserving deformation retracts for fans.
"""

from fractions import Fraction
from itertools import combinations

from .errors import NotClosed, UnboundedCellWithoutConeStructure, ValidationError
from .polyhedral_core import BOTTOM, ExtendedPoint, FaceComplex, box, format_rational, intersect


class StratifiedTriangulation:
    """Simplices are sorted tuples of vertex ids.

    ``active`` is the closed subcomplex that is kept when an open set is
    modelled by deleting the simplices meeting a closed set; None means
    everything is active.
    """

    def __init__(self, complex_, vertex_coords, simplices, carrier, level, active=None, vertex_label=None):
        self.complex = complex_
        self.vertex_coords = list(vertex_coords)
        self.simplices = {q: sorted(s) for q, s in simplices.items()}
        self.carrier = dict(carrier)
        self.subdivision_level = level
        self.active = None if active is None else frozenset(active)
        self.vertex_label = vertex_label
        self._index = None

    @property
    def dim(self):
        return max((q for q, s in self.simplices.items() if s), default=-1)

    def all_simplices(self):
        for q in sorted(self.simplices):
            yield from self.simplices[q]

    def simplices_of_dim(self, q, active_only=True):
        out = self.simplices.get(q, [])
        if active_only and self.active is not None:
            out = [s for s in out if s in self.active]
        return out

    def is_active(self, s):
        return self.active is None or s in self.active

    def count(self):
        return {q: len(s) for q, s in self.simplices.items()}

    def index(self, q):
        if self._index is None:
            self._index = {k: {s: i for i, s in enumerate(v)} for k, v in self.simplices.items()}
        return self._index.get(q, {})

    def vertex_carrier(self, v):
        return self.carrier[(v,)]

    def barycenter(self, s):
        pts = [self.vertex_coords[v] for v in s]
        if any(p is None for p in pts):
            return None
        r = len(pts[0].coords)
        out = []
        for i in range(r):
            vals = [p.coords[i] for p in pts]
            if any(v is BOTTOM for v in vals):
                if all(v is BOTTOM for v in vals):
                    out.append(BOTTOM)
                    continue
                return None
            out.append(sum(vals, Fraction(0)) / len(vals))
        return ExtendedPoint(out)

    def to_json(self):
        def pt(p):
            return None if p is None else [format_rational(c) for c in p.coords]
        return {
            "subdivision_level": self.subdivision_level,
            "vertices": [pt(p) for p in self.vertex_coords],
            "simplices": [list(s) for s in self.all_simplices()],
            "carrier": [self.carrier[s] for s in self.all_simplices()],
            "active": None if self.active is None else sorted(list(s) for s in self.active),
        }


def _box_radius(C):
    R = Fraction(1)
    for i in C.ids():
        if C.dim(i) == 0:
            x = C.cell(i).interior_point()
            for c in x.coords:
                if c is not BOTTOM:
                    R = max(R, abs(c) + 1)
    return R


def model_complex(C, radius=None):
    """Compact model of C and the carrier of each model cell in C."""
    if all(C.cell(i).is_bounded() for i in C.ids()):
        return C, {i: i for i in C.ids()}
    if C.space == "T":
        if C.is_compact():
            return C, {i: i for i in C.ids()}
        raise UnboundedCellWithoutConeStructure(
            "unbounded cells with sedentarity faces cannot be truncated; give a compact model")
    Rmin = _box_radius(C)
    R = Fraction(radius) if radius is not None else Rmin
    if R < Rmin:
        raise ValidationError("truncation radius %s does not contain all vertices" % R)
    B = box([-R] * C.ambient_dim, [R] * C.ambient_dim)
    pieces = []
    for i in C.ids():
        P = intersect(C.cell(i), B)
        if not P.is_empty():
            pieces.append(P)
    M = FaceComplex.from_maximal(pieces, space="R")
    car = {}
    for j in M.ids():
        x = M.cell(j).interior_point()
        owners = [i for i in C.ids() if C.cell(i).relint_contains(x)]
        if len(owners) != 1:
            raise ValidationError("truncated cell %d has no unique carrier" % j)
        car[j] = owners[0]
    return M, car


def stratified_triangulation(C, radius=None):
    """Triangulate skeleton by skeleton: a cell that is already a simplex is
    kept, any other cell is coned from an interior point over its
    triangulated boundary.  This is subdivision level 0."""
    M, car = model_complex(C, radius)
    order = sorted(M.ids(), key=lambda i: (M.dim(i), i))
    coords = []
    tops = {}
    vertex_of = {}
    for c in order:
        d = M.dim(c)
        if d == 0:
            vertex_of[c] = len(coords)
            coords.append(M.cell(c).interior_point())
            tops[c] = [(vertex_of[c],)]
            continue
        faces = M.proper_faces(c)
        verts = sorted(vertex_of[f] for f in faces if M.dim(f) == 0)
        if len(verts) == d + 1:
            tops[c] = [tuple(verts)]
            continue
        w = len(coords)
        coords.append(M.cell(c).interior_point())
        bnd = set()
        for f in faces:
            if M.dim(f) == d - 1:
                bnd.update(tops[f])
        tops[c] = [tuple(sorted(b + (w,))) for b in sorted(bnd)]
    simplices = {}
    carrier = {}
    for c in order:
        for t in tops[c]:
            for k in range(1, len(t) + 1):
                for f in combinations(t, k):
                    if f not in carrier:
                        carrier[f] = car[c]
                        simplices.setdefault(k - 1, []).append(f)
    return StratifiedTriangulation(C, coords, simplices, carrier, 0)


def _faces(s):
    for k in range(1, len(s)):
        yield from combinations(s, k)


def barycentric_subdivide(T):
    old = list(T.all_simplices())
    vid = {s: k for k, s in enumerate(old)}
    coords = [T.barycenter(s) for s in old]
    chains_ending = {}
    for s in old:
        out = [(s,)]
        if len(s) > 1:
            for f in _faces(s):
                for ch in chains_ending[f]:
                    out.append(ch + (s,))
        chains_ending[s] = out
    simplices = {}
    carrier = {}
    active = None if T.active is None else set()
    for s in old:
        keep = T.active is None or s in T.active
        for ch in chains_ending[s]:
            t = tuple(sorted(vid[x] for x in ch))
            simplices.setdefault(len(t) - 1, []).append(t)
            carrier[t] = T.carrier[s]
            if keep and active is not None:
                active.add(t)
    return StratifiedTriangulation(T.complex, coords, simplices, carrier,
                                   T.subdivision_level + 1, active)


def subdivide_to(T, level):
    while T.subdivision_level < level:
        T = barycentric_subdivide(T)
    return T


def delete_closed(T, Z):
    """Keep the simplices that miss |Z|; models the open set X minus |Z|."""
    Z = frozenset(Z)
    C = T.complex
    if not C.is_closed(Z):
        raise NotClosed("cell set to delete is not closed under faces")
    bad = {s[0] for s in T.simplices.get(0, []) if T.carrier[s] in Z}
    keep = [s for s in T.all_simplices() if T.is_active(s) and not any(v in bad for v in s)]
    return StratifiedTriangulation(C, T.vertex_coords, T.simplices, T.carrier,
                                   T.subdivision_level, keep, T.vertex_label)


def carried_subcomplex(T, cells):
    """Simplices whose carrier lies in the given closed cell set."""
    cells = frozenset(cells)
    return frozenset(s for s in T.all_simplices() if T.is_active(s) and T.carrier[s] in cells)


def link_vertices(T, cell):
    """Vertices joined by an edge to the vertex carried by a 0-cell."""
    vs = [s[0] for s in T.simplices.get(0, []) if T.carrier[s] == cell]
    if len(vs) != 1:
        raise ValidationError("cell %r is not carried by a single vertex" % (cell,))
    v = vs[0]
    out = set()
    for e in T.simplices.get(1, []):
        if v in e and T.is_active(e):
            out.add(e[0] if e[1] == v else e[1])
    return frozenset(out)


def delete_vertices(T, verts):
    """Active simplices that avoid the given vertices."""
    verts = frozenset(verts)
    return frozenset(s for s in T.all_simplices() if T.is_active(s) and not verts.intersection(s))
