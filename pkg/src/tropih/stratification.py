"""Filtrations by closed subcomplexes, their strata, and perversities."""

from dataclasses import dataclass, field

from .errors import (ComplementNotClosed, InconsistentStratification, UnsupportedStarDimension,
                     ValidationError)
from .exact_linalg import rank as int_rank
from .polyhedral_core import _primitive_int


class Filtration:
    """X^{-1} = empty, X^0 <= ... <= X^n = all cells, each a closed set of cell ids.

    ``levels[i]`` is X^i for i = 0..n.  ``kind`` records how it was built;
    pair filtrations satisfy condition (C)' by construction.
    """

    def __init__(self, complex_, levels, kind="explicit", open_set=None):
        self.complex = complex_
        self.levels = [frozenset(l) for l in levels]
        self.kind = kind
        self.open_set = frozenset(open_set) if open_set is not None else None
        self._validate()

    @property
    def formal_dim(self):
        return len(self.levels) - 1

    def _validate(self):
        C = self.complex
        allc = frozenset(C.ids())
        if not self.levels:
            if allc:
                raise ValidationError("filtration has no levels")
            return
        if self.levels[-1] != allc:
            raise ValidationError("top level must contain every cell")
        for a, b in zip(self.levels, self.levels[1:]):
            if not a <= b:
                raise ValidationError("filtration levels must be nested")
        for i, lev in enumerate(self.levels):
            if not lev <= allc:
                raise ValidationError("level %d mentions unknown cells" % i)
            if not C.is_closed(lev):
                raise ValidationError("level %d is not closed under faces" % i)

    def level_of(self, cell):
        """Smallest i with the cell in X^i (its formal dimension)."""
        for i, lev in enumerate(self.levels):
            if cell in lev:
                return i
        raise InconsistentStratification("cell %r not in the filtration" % (cell,))

    def singular_cells(self):
        """Cells in X^{n-1}, the singular locus."""
        if len(self.levels) < 2:
            return frozenset()
        return self.levels[-2]

    @property
    def condition_C(self):
        return self.kind == "pair"

    def to_json(self):
        return {"levels": [sorted(l) for l in self.levels], "kind": self.kind}

    def __eq__(self, other):
        return isinstance(other, Filtration) and self.levels == other.levels

    def __repr__(self):
        return "Filtration(n=%d, kind=%s, levels=%s)" % (self.formal_dim, self.kind,
                                                         [sorted(l) for l in self.levels])


@dataclass(frozen=True)
class Stratum:
    id: int
    formal_dim: int
    cells: frozenset
    codim: int

    @property
    def regular(self):
        return self.codim == 0


def face_filtration(C):
    n = C.max_dim
    if n < 0:
        return Filtration(C, [], kind="face")
    levels = [[i for i in C.ids() if C.dim(i) <= k] for k in range(n + 1)]
    return Filtration(C, levels, kind="face")


def pair_filtration(C, U):
    """X^n = X and X^k = (X minus U) cut down to cells of dimension <= k below n."""
    U = frozenset(U)
    allc = frozenset(C.ids())
    if not U <= allc:
        raise ValidationError("open set mentions unknown cells")
    Z = allc - U
    if not C.is_closed(Z):
        raise ComplementNotClosed("complement of the open set is not closed under faces")
    n = C.max_dim
    if n < 0:
        return Filtration(C, [], kind="pair", open_set=U)
    levels = [[i for i in Z if C.dim(i) <= k] for k in range(n)] + [list(allc)]
    return Filtration(C, levels, kind="pair", open_set=U)


def strata(C, F):
    """Connected components of X^i minus X^{i-1}, ordered by (dim, smallest cell)."""
    n = F.formal_dim
    out = []
    prev = frozenset()
    comps = []
    for i, lev in enumerate(F.levels):
        slice_ = lev - prev
        parent = {c: c for c in slice_}

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a
        for c in slice_:
            for f in C.proper_faces(c):
                if f in slice_:
                    ra, rb = find(c), find(f)
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
        groups = {}
        for c in slice_:
            groups.setdefault(find(c), set()).add(c)
        for g in groups.values():
            comps.append((i, frozenset(g)))
        prev = lev
    comps.sort(key=lambda t: (t[0], min(t[1])))
    for k, (i, cells) in enumerate(comps):
        out.append(Stratum(k, i, cells, n - i))
    return out


class Stratification:
    """Filtration together with its strata and a cell -> stratum table."""

    def __init__(self, C, F):
        self.complex = C
        self.filtration = F
        self.strata = strata(C, F)
        self.cell_stratum = {}
        for S in self.strata:
            for c in S.cells:
                self.cell_stratum[c] = S.id
        if set(self.cell_stratum) != set(C.ids()):
            raise InconsistentStratification("some cells are not covered by strata")

    @property
    def formal_dim(self):
        return self.filtration.formal_dim

    def stratum_of(self, cell):
        return self.strata[self.cell_stratum[cell]]

    def singular_strata(self):
        return [S for S in self.strata if not S.regular]


class Perversity:
    """Integer per stratum id; zero on regular strata."""

    def __init__(self, stratification, values=None, strict=True):
        self.stratification = stratification
        vals = {}
        for S in stratification.strata:
            v = 0 if values is None else int(values.get(S.id, 0))
            if S.regular and v != 0:
                if strict:
                    raise ValidationError("perversity must vanish on regular stratum %d" % S.id)
                v = 0
            vals[S.id] = v
        self.values = vals

    def __getitem__(self, sid):
        return self.values[sid]

    def of_cell(self, cell):
        return self.values[self.stratification.cell_stratum[cell]]

    def to_json(self):
        return {str(k): v for k, v in sorted(self.values.items())}

    def __eq__(self, other):
        return isinstance(other, Perversity) and self.values == other.values

    def __repr__(self):
        return "Perversity(%r)" % (self.values,)


def perversity_from_spec(stratification, spec):
    """Build a perversity from a preset string or an explicit mapping.

    Presets: "zero"; "constant:m" (m on every singular stratum);
    "codim:k" (codim(S) + k on every singular stratum).  Mapping keys are
    stratum ids, or "cell:N" for the stratum containing cell N.
    """
    st = stratification
    if isinstance(spec, str):
        name, _, arg = spec.partition(":")
        if name == "zero":
            return Perversity(st, {})
        if name == "constant":
            m = int(arg)
            return Perversity(st, {S.id: m for S in st.singular_strata()})
        if name == "codim":
            k = int(arg)
            return Perversity(st, {S.id: S.codim + k for S in st.singular_strata()})
        raise ValidationError("unknown perversity preset %r" % spec)
    vals = {}
    for key, v in dict(spec).items():
        key = str(key)
        if key.startswith("cell:"):
            sid = st.cell_stratum.get(int(key[5:]))
            if sid is None:
                raise ValidationError("perversity refers to unknown cell %s" % key)
        else:
            sid = int(key)
            if sid < 0 or sid >= len(st.strata):
                raise ValidationError("perversity refers to unknown stratum %s" % key)
        vals[sid] = int(v)
    return Perversity(st, vals)


def dual_perversity(stratification, pbar):
    """codim(S) - 2 - pbar(S) on singular strata, 0 on regular ones."""
    vals = {}
    for S in stratification.strata:
        vals[S.id] = 0 if S.regular else S.codim - 2 - pbar[S.id]
    return Perversity(stratification, vals)


# ---------------------------------------------------------------- X^trop

def _extend_basis(base, extra):
    basis = [list(b) for b in base]
    r0 = len(basis)
    for v in extra:
        if int_rank(basis + [list(v)]) > len(basis):
            basis.append(list(v))
    return basis[r0:], basis


def _affine_key(P):
    return P.normalized().eqs


def _has_affine_neighbourhood(C, K, cell, d):
    """Is relint(cell) inside an open subset of a d-dim affine space in |K|?"""
    sigma = C.cell(cell)
    star = [t for t in K if t == cell or cell in C.proper_faces(t)]
    if any(C.cell(t).sedentarity != sigma.sedentarity for t in star):
        raise UnsupportedStarDimension(
            "star of cell %d meets several sedentarities; give the filtration explicitly" % cell)
    maximal = [t for t in star if not any(t in C.proper_faces(u) for u in star)]
    if any(C.dim(t) != d for t in maximal):
        return False
    hulls = {_affine_key(C.cell(t)) for t in maximal}
    if len(hulls) != 1:
        return False
    qdim = d - sigma.dim
    if qdim == 0:
        return maximal == [cell]
    if qdim > 2:
        raise UnsupportedStarDimension(
            "star of cell %d has quotient dimension %d; give the filtration explicitly" % (cell, qdim))
    fc = sigma.free_coords
    Ls = sigma.tangent_lattice().basis
    LA = C.cell(maximal[0]).tangent_lattice().basis
    quot, _ = _extend_basis(Ls, LA)
    x = sigma.interior_point()
    xf = [x.coords[i] for i in fc]
    cones = []
    for t in maximal:
        tau = C.cell(t).normalized()
        rows = []
        for n, c in tau.ineqs:
            nf = [n[i] for i in fc]
            if sum(a * b for a, b in zip(nf, xf)) == c:
                rows.append([sum(a * b for a, b in zip(nf, q)) for q in quot])
        cones.append(rows)
    if qdim == 1:
        signs = set()
        for rows in cones:
            # cone {y : m*y <= 0}; pointed in a valid complex
            s = {1 if r[0] < 0 else -1 for r in rows if r[0] != 0}
            if len(s) != 1:
                return False
            signs |= s
        return signs == {1, -1} and len(cones) == 2
    return _covers_plane(cones)


def _cone_rays_2d(rows):
    cand = []
    for m in rows:
        for v in ((m[1], -m[0]), (-m[1], m[0])):
            if v == (0, 0):
                continue
            if all(r[0] * v[0] + r[1] * v[1] <= 0 for r in rows):
                v = tuple(_primitive_int(v)[0])
                if v not in cand:
                    cand.append(v)
    if len(cand) != 2:
        return None
    a, b = cand
    cross = a[0] * b[1] - a[1] * b[0]
    if cross == 0:
        return None
    return (a, b) if cross > 0 else (b, a)


def _covers_plane(cones):
    arcs = []
    for rows in cones:
        ab = _cone_rays_2d(rows)
        if ab is None:
            return False
        arcs.append(ab)
    nxt = {}
    for a, b in arcs:
        if a in nxt:
            return False
        nxt[a] = b
    start = arcs[0][0]
    cur = start
    for _ in range(len(arcs)):
        if cur not in nxt:
            return False
        cur = nxt[cur]
    return cur == start and len(nxt) == len(arcs)


def trop_filtration(C):
    """Strip points with an (i+1)-dim affine neighbourhood, top down."""
    n = C.max_dim
    if n < 0:
        return Filtration(C, [], kind="trop")
    levels = [None] * (n + 1)
    K = set(C.ids())
    levels[n] = frozenset(K)
    for i in range(n, 0, -1):
        K = {c for c in K if not _has_affine_neighbourhood(C, K, c, i)}
        levels[i - 1] = frozenset(K)
    return Filtration(C, levels, kind="trop")
