"""Allowable chain complexes with multi-tangent coefficients and their homology.

The generator module in degree q has one basis element per pair
(q-simplex s, basis vector of F_p(carrier(s))).  The non-GM variant drops
simplices carried by the singular locus and, in the boundary, faces
carried by it.  IC_q is the lattice of allowable chains whose boundary is
allowable: the kernel of (projection to non-allowable (q-1)-generators)
composed with the boundary, taken on the allowable q-generators.

Homology is read off without changing bases: IC_q is saturated in the
generator module, so the torsion of H_q equals the torsion of the
cokernel of d(IC_{q+1}) inside the generators, and ranks only need the
rank of d restricted to IC_q.
"""

import os
from dataclasses import dataclass, field

from .coefficients import multitangent, restriction
from .errors import (ConicalStructureRequired, InconsistentStratification, ModelMismatch,
                     NotAComplex, StabilizationFailure, ValidationError)
from .exact_linalg import (HomologyGroup, IntMatrix, SparseLatticeBasis, cohomology_of_complex,
                           homology_of_complex, invariant_factors, sparse_kernel_basis,
                           uct_consistent)
from .stratification import Perversity, Stratification, perversity_from_spec, trop_filtration
from .triangulate import (carried_subcomplex, delete_closed, delete_vertices, link_vertices,
                          stratified_triangulation, subdivide_to)

GM = "GM"
NONGM = "NONGM"

PLAIN = "PLAIN"
IH = "IH"
IH_BM = "IH_BM"
IH_REL = "IH_REL"
COHOM = "COHOM"
COHOM_C = "COHOM_C"


def _variant(v):
    v = str(v).upper().replace("-", "").replace("_", "")
    if v in ("GM",):
        return GM
    if v in ("NONGM", "NGM"):
        return NONGM
    raise ValidationError("variant must be GM or NONGM, got %r" % (v,))


def _coeff(c):
    c = str(c).upper()
    if c not in ("Z", "Q"):
        raise ValidationError("coefficients must be Z or Q, got %r" % (c,))
    return c


def default_level():
    raw = os.environ.get("TIH_SUBDIV_LEVEL", "2")
    try:
        lvl = int(raw)
    except ValueError:
        raise ValidationError("TIH_SUBDIV_LEVEL must be an integer")
    return max(lvl, 2)


def max_level(base):
    raw = os.environ.get("TIH_MAX_SUBDIV")
    if raw is None:
        return base + 1
    try:
        return max(int(raw), base + 1)
    except ValueError:
        raise ValidationError("TIH_MAX_SUBDIV must be an integer")


class Model:
    """A filtered complex with a perversity and cached triangulations."""

    def __init__(self, C, filtration=None, perversity="zero", radius=None, conical=False,
                 cone_point=None, condition_C=None, _tri_cache=None):
        self.complex = C
        self.filtration = filtration if filtration is not None else trop_filtration(C)
        if self.filtration.complex is not C:
            raise ModelMismatch("filtration belongs to another complex")
        self.strat = Stratification(C, self.filtration)
        if isinstance(perversity, Perversity):
            if perversity.stratification.filtration != self.filtration:
                raise ModelMismatch("perversity belongs to another filtration")
            self.pbar = Perversity(self.strat, perversity.values)
        else:
            self.pbar = perversity_from_spec(self.strat, perversity)
        self.radius = radius
        self.conical = bool(conical)
        if cone_point is None and self.conical:
            zeros = [i for i in C.ids() if C.dim(i) == 0]
            if len(zeros) != 1:
                raise ValidationError("conical model needs a unique vertex or an explicit cone point")
            cone_point = zeros[0]
        self.cone_point = cone_point
        self.condition_C = self.filtration.condition_C if condition_C is None else bool(condition_C)
        self._tri = _tri_cache if _tri_cache is not None else {}
        self._results = {}

    def with_perversity(self, pbar):
        return Model(self.complex, self.filtration, pbar, self.radius, self.conical,
                     self.cone_point, self.condition_C, self._tri)

    @property
    def formal_dim(self):
        return self.filtration.formal_dim

    @property
    def free_dim(self):
        return max((len(c.free_coords) for c in self.complex.cells), default=0)

    @property
    def compact(self):
        C = self.complex
        if C.space == "T":
            return C.is_compact()
        return all(C.cell(i).is_bounded() for i in C.ids())

    def triangulation(self, level):
        if level in self._tri:
            return self._tri[level]
        if 0 not in self._tri:
            self._tri[0] = stratified_triangulation(self.complex, self.radius)
        best = max(k for k in self._tri if k <= level)
        T = self._tri[best]
        while T.subdivision_level < level:
            T = subdivide_to(T, T.subdivision_level + 1)
            self._tri[T.subdivision_level] = T
        return T


# ---------------------------------------------------------------- allowability

def face_profile(T, s, strat):
    """Largest face dimension of s inside each stratum."""
    prof = {}
    n = len(s)
    for mask in range(1, 1 << n):
        f = tuple(s[i] for i in range(n) if mask >> i & 1)
        c = T.carrier.get(f)
        if c is None:
            raise InconsistentStratification("face %r has no carrier" % (f,))
        sid = strat.cell_stratum.get(c)
        if sid is None:
            raise InconsistentStratification("carrier %r is in no stratum" % (c,))
        d = len(f) - 1
        if prof.get(sid, -1) < d:
            prof[sid] = d
    return prof


def is_allowable(simplex, T, strat, pbar):
    q = len(simplex) - 1
    for sid, d in face_profile(T, simplex, strat).items():
        S = strat.strata[sid]
        if d > q - S.codim + pbar[sid]:
            return False
    return True


# ---------------------------------------------------------------- chain complexes

class IChainComplex:
    """Generator module, boundary matrices and IC bases for one bidegree p.

    ``gens[q]`` lists (simplex, k); ``boundaries[q]`` is d_q from degree q
    to q-1 on the whole generator module; ``bases[q]`` is a basis of IC_q
    as sparse vectors over ``gens[q]``.
    """

    def __init__(self, variant, p, gens, boundaries, allowable, bases, level):
        self.variant = variant
        self.p = p
        self.gens = gens
        self.boundaries = boundaries
        self.allowable = allowable
        self.bases = bases
        self.level = level
        self.index = [{g: i for i, g in enumerate(gq)} for gq in gens]

    @property
    def top(self):
        return len(self.gens) - 1

    def dims(self):
        return [len(g) for g in self.gens]

    def ic_ranks(self):
        return [len(b) for b in self.bases]

    def check(self):
        for q in range(2, len(self.boundaries)):
            if not self.boundaries[q - 1].matmul(self.boundaries[q]).is_zero():
                raise NotAComplex("d_%d d_%d != 0" % (q - 1, q))

    def apply(self, q, vec):
        """Boundary of a sparse chain of degree q."""
        out = {}
        if q == 0:
            return out
        B = self.boundaries[q].cols_data
        for g, c in vec.items():
            for r, x in B[g].items():
                s = out.get(r, 0) + c * x
                if s:
                    out[r] = s
                else:
                    out.pop(r, None)
        return out


def _module_simplices(T, strat, variant, subset):
    sigma = strat.filtration.singular_cells()
    out = {}
    for q, simps in T.simplices.items():
        keep = []
        for s in simps:
            if not T.is_active(s):
                continue
            if subset is not None and s not in subset:
                continue
            if variant == NONGM and T.carrier[s] in sigma:
                continue
            keep.append(s)
        out[q] = keep
    return out


def build_ic_complex(T, strat, pbar, p, variant, allow_all=False, subset=None, check=True):
    variant = _variant(variant)
    C = T.complex
    simps = _module_simplices(T, strat, variant, subset)
    top = T.dim
    ranks = {}
    iotas = {}

    def rank_of(c):
        if c not in ranks:
            ranks[c] = multitangent(C, c, p).rank
        return ranks[c]

    def iota(a, b):
        key = (a, b)
        if key not in iotas:
            iotas[key] = restriction(C, a, b, p)
        return iotas[key]

    gens = []
    start = []
    allow_simplex = []
    for q in range(top + 1):
        gq = []
        st = {}
        al = {}
        for s in simps.get(q, []):
            m = rank_of(T.carrier[s])
            if m == 0:
                continue
            st[s] = len(gq)
            gq.extend((s, k) for k in range(m))
            al[s] = True if allow_all else is_allowable(s, T, strat, pbar)
        gens.append(gq)
        start.append(st)
        allow_simplex.append(al)
    boundaries = [IntMatrix(0, len(gens[0]) if gens else 0)]
    for q in range(1, top + 1):
        cols = []
        st_prev = start[q - 1]
        for s, k in gens[q]:
            col = {}
            cs = T.carrier[s]
            for j in range(len(s)):
                f = s[:j] + s[j + 1:]
                off = st_prev.get(f)
                if off is None:
                    continue
                M = iota(cs, T.carrier[f])
                sign = -1 if j % 2 else 1
                for i in range(len(M)):
                    v = M[i][k]
                    if v:
                        r = off + i
                        x = col.get(r, 0) + sign * v
                        if x:
                            col[r] = x
                        else:
                            col.pop(r, None)
            cols.append(col)
        boundaries.append(IntMatrix(len(gens[q - 1]), len(gens[q]), cols))
    allowable = []
    for q in range(top + 1):
        al = allow_simplex[q]
        allowable.append([al[s] for s, _ in gens[q]])
    bases = []
    for q in range(top + 1):
        ok = [i for i, a in enumerate(allowable[q]) if a]
        if q == 0:
            bases.append([{i: 1} for i in ok])
            continue
        bad_rows = allowable[q - 1]
        B = boundaries[q].cols_data
        clean, dirty = [], []
        for i in ok:
            if any(not bad_rows[r] for r in B[i]):
                dirty.append(i)
            else:
                clean.append(i)
        basis = [{i: 1} for i in clean]
        if dirty:
            cols = [{r: x for r, x in B[i].items() if not bad_rows[r]} for i in dirty]
            for vec in sparse_kernel_basis(cols):
                basis.append({dirty[k]: c for k, c in vec.items()})
        bases.append(basis)
    cx = IChainComplex(variant, p, gens, boundaries, allowable, bases, T.subdivision_level)
    if check:
        cx.check()
    return cx


class LatticeComplex:
    """A chain complex given as saturated lattices inside free generator modules.

    ``bases[q]`` are sparse vectors in the ambient degree-q module and
    ``images[q]`` their boundaries in the ambient degree-(q-1) module.
    """

    def __init__(self, dims, bases, boundary):
        self.dims = list(dims)
        self.bases = [list(b) for b in bases]
        self.boundary = boundary
        self.images = [[] if q == 0 else [boundary(q, v) for v in self.bases[q]]
                       for q in range(len(self.bases))]
        self._facs = {}

    def _factors(self, q):
        if q not in self._facs:
            if q <= 0 or q >= len(self.bases):
                self._facs[q] = []
            else:
                M = IntMatrix(self.dims[q - 1], len(self.images[q]), self.images[q])
                self._facs[q] = invariant_factors(M)
        return self._facs[q]

    def homology(self, coeff):
        out = []
        for q in range(len(self.bases)):
            n = len(self.bases[q])
            r_out = len(self._factors(q))
            inc = self._factors(q + 1)
            free = n - r_out - len(inc)
            tors = tuple(d for d in inc if d > 1) if coeff == "Z" else ()
            out.append(HomologyGroup(free, tors))
        return out

    def reduced(self):
        """Boundary matrices D_q in (reduced) lattice bases."""
        solvers = [SparseLatticeBasis(b) for b in self.bases]
        bases = [s.vectors() for s in solvers]
        mats = []
        for q in range(1, len(bases)):
            cols = []
            for v in bases[q]:
                img = self.boundary(q, v)
                c = solvers[q - 1].sparse_coordinates(img)
                if c is None:
                    raise NotAComplex("boundary leaves the allowable lattice in degree %d" % (q - 1))
                cols.append(c)
            mats.append(IntMatrix(len(bases[q - 1]), len(bases[q]), cols))
        return [len(b) for b in bases], mats

    def cohomology(self, coeff):
        dims, mats = self.reduced()
        return cohomology_of_complex(mats, coeff, dims=dims, check=True)

    def homology_via_bases(self, coeff):
        dims, mats = self.reduced()
        return homology_of_complex(mats, coeff, dims=dims, check=True)


def ic_lattice(cx):
    return LatticeComplex(cx.dims(), cx.bases, cx.apply)


def cone_lattice(X, Y):
    """Mapping cone of the inclusion IC(Y) -> IC(X); its homology is IC(X)/IC(Y)."""
    emb = []
    for q in range(len(Y.gens)):
        m = {}
        for i, g in enumerate(Y.gens[q]):
            j = X.index[q].get(g)
            if j is None:
                raise ModelMismatch("subcomplex generator %r missing from the ambient model" % (g,))
            m[i] = j
        emb.append(m)
    top = len(X.gens)
    nx = X.dims() + [0]
    ny = Y.dims() + [0] * (top + 1 - len(Y.gens))
    dims = [nx[q] + (ny[q - 1] if q >= 1 else 0) for q in range(top + 1)]
    bases = []
    for q in range(top + 1):
        b = [dict(v) for v in X.bases[q]] if q < len(X.bases) else []
        if q >= 1 and q - 1 < len(Y.bases):
            off = nx[q]
            for v in Y.bases[q - 1]:
                b.append({off + k: c for k, c in v.items()})
        bases.append(b)

    def boundary(q, vec):
        out = {}

        def add(k, c):
            s = out.get(k, 0) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        xpart = {k: c for k, c in vec.items() if k < nx[q]}
        ypart = {k - nx[q]: c for k, c in vec.items() if k >= nx[q]}
        if xpart:
            for k, c in X.apply(q, xpart).items():
                add(k, c)
        if ypart:
            for k, c in ypart.items():
                add(emb[q - 1][k], c)
            if q - 1 >= 1:
                off = nx[q - 1]
                for k, c in Y.apply(q - 1, ypart).items():
                    add(off + k, -c)
        return out
    return LatticeComplex(dims, bases, boundary)


# ---------------------------------------------------------------- results

@dataclass
class HomologyResult:
    groups: dict
    coeff: str
    variant: str
    flavor: str
    levels: tuple = ()
    uct_checked: bool = False

    def rank(self, p, q):
        g = self.groups.get((p, q))
        return 0 if g is None else g.free_rank

    def group(self, p, q):
        return self.groups.get((p, q), HomologyGroup())

    def ranks(self):
        return {k: g.free_rank for k, g in self.groups.items()}

    def nonzero(self):
        return {k: g for k, g in self.groups.items() if not g.is_zero()}

    def same_groups(self, other):
        keys = set(self.groups) | set(other.groups)
        return all(self.group(*k) == other.group(*k) for k in keys)

    def to_json(self):
        return {
            "variant": self.variant,
            "coeff": self.coeff,
            "flavor": self.flavor,
            "groups": {"%d,%d" % k: self.groups[k].as_dict() for k in sorted(self.groups)},
        }


def _p_range(model, p_range):
    if p_range is None:
        return list(range(model.free_dim + 1))
    return list(p_range)


def _q_filter(groups, q_range):
    if q_range is None:
        return groups
    qs = set(q_range)
    return {k: v for k, v in groups.items() if k[1] in qs}


def _run(model, level, p_range, variant, coeff, mode, allow_all=False, delete=None, rel=None):
    """One evaluation at a fixed subdivision level.

    ``mode`` is "homology" or "cohomology"; ``delete`` is a closed cell set
    removed from the space; ``rel`` is ("cells", Z) or ("delete", Z)
    describing the subcomplex to divide out, or ("link", [v]) for the
    complement of the link of the vertex v.
    """
    if not model.complex.ids():
        return {}, mode != "homology"
    T = model.triangulation(level)
    if delete:
        T = delete_closed(T, delete)
    sub = None
    if rel is not None:
        kind, Z = rel
        if kind == "cells":
            sub = carried_subcomplex(T, Z)
        elif kind == "delete":
            sub = delete_closed(T, Z).active
        elif kind == "link":
            # X minus the link sphere of a vertex; needs a subdivided model
            if T.subdivision_level < 1:
                raise ValidationError("link deletion needs subdivision level >= 1")
            (v,) = Z
            sub = delete_vertices(T, link_vertices(T, v))
        else:
            raise ValidationError("unknown relative mode %r" % (kind,))
    n_q = max(T.dim, model.formal_dim, 0)
    rel_key = None if rel is None else (rel[0], frozenset(rel[1]))
    groups = {}
    for p in p_range:
        key = (level, p, variant, mode, allow_all, frozenset(delete or ()), rel_key)
        hs = model._results.get(key)
        if hs is None:
            X = build_ic_complex(T, model.strat, model.pbar, p, variant, allow_all=allow_all)
            if sub is not None:
                Y = build_ic_complex(T, model.strat, model.pbar, p, variant,
                                     allow_all=allow_all, subset=sub)
                L = cone_lattice(X, Y)
            else:
                L = ic_lattice(X)
            if mode == "homology":
                hs = L.homology("Z")
            else:
                hs = L.cohomology("Z")
                if not uct_consistent(L.homology("Z"), hs):
                    raise NotAComplex("universal coefficient check failed at p=%d" % p)
            model._results[key] = hs
        for q in range(n_q + 1):
            g = hs[q] if q < len(hs) else HomologyGroup()
            groups[(p, q)] = g if coeff == "Z" else HomologyGroup(g.free_rank)
    return groups, mode != "homology"


def _stabilized(model, level, stabilize, fn):
    level = default_level() if level is None else level
    if level < 0:
        raise ValidationError("subdivision level must be non-negative")
    first, uct = fn(level)
    if not stabilize:
        return first, (level,), uct
    cap = max_level(level)
    prev = first
    for L in range(level + 1, cap + 1):
        nxt, uct2 = fn(L)
        if _groups_equal(prev, nxt):
            return prev, (level, L), uct or uct2
        prev = nxt
    raise StabilizationFailure("results at subdivision levels %d..%d disagree" % (level, cap))


def _groups_equal(a, b):
    keys = set(a) | set(b)
    return all(a.get(k, HomologyGroup()) == b.get(k, HomologyGroup()) for k in keys)


def homology(model, p_range=None, variant=NONGM, coeff="Q", level=None, stabilize=True,
             q_range=None, delete=None, allow_all=False, flavor=IH):
    variant, coeff = _variant(variant), _coeff(coeff)
    ps = _p_range(model, p_range)
    groups, levels, _ = _stabilized(model, level, stabilize, lambda L: _run(
        model, L, ps, variant, coeff, "homology", allow_all, delete))
    return HomologyResult(_q_filter(groups, q_range), coeff, variant, flavor, levels)


def tropical_homology(model, p_range=None, coeff="Q", level=None, stabilize=True, q_range=None,
                      delete=None):
    """Plain tropical homology: GM chains without any allowability condition."""
    return homology(model, p_range, GM, coeff, level, stabilize, q_range, delete, True, PLAIN)


def relative_homology(model, sub, p_range=None, variant=NONGM, coeff="Q", level=None,
                      stabilize=True, q_range=None, delete=None, allow_all=False, flavor=IH_REL):
    """Homology of IC(X)/IC(A).

    ``sub`` is ("cells", Z) for the closed subcomplex carried by the cells Z,
    or ("delete", Z) for the open set X minus |Z|.
    """
    variant, coeff = _variant(variant), _coeff(coeff)
    ps = _p_range(model, p_range)
    _check_sub(model, sub)
    groups, levels, _ = _stabilized(model, level, stabilize, lambda L: _run(
        model, L, ps, variant, coeff, "homology", allow_all, delete, sub))
    return HomologyResult(_q_filter(groups, q_range), coeff, variant, flavor, levels)


def _check_sub(model, sub):
    if sub is None:
        return
    kind, Z = sub
    ids = set(model.complex.ids())
    if not set(Z) <= ids:
        raise ModelMismatch("subspace mentions cells outside the model")
    if not model.complex.is_closed(Z):
        raise ModelMismatch("subspace cells must form a closed set")


def _bm_sub(model):
    if model.compact:
        return None
    if not model.conical:
        raise ConicalStructureRequired("Borel-Moore groups need a compact or conical input")
    return ("delete", [model.cone_point])


def bm_homology(model, p_range=None, variant=NONGM, coeff="Q", level=None, stabilize=True,
                q_range=None, allow_all=False):
    sub = _bm_sub(model)
    if sub is None:
        r = homology(model, p_range, variant, coeff, level, stabilize, q_range, allow_all=allow_all)
    else:
        r = relative_homology(model, sub, p_range, variant, coeff, level, stabilize, q_range,
                              allow_all=allow_all)
    r.flavor = IH_BM
    return r


def cohomology(model, p_range=None, variant=NONGM, coeff="Q", level=None, stabilize=True,
               q_range=None, compact_support=False, delete=None, allow_all=False, rel=None):
    variant, coeff = _variant(variant), _coeff(coeff)
    ps = _p_range(model, p_range)
    sub = rel
    if compact_support:
        if delete:
            raise ValidationError("compact supports are only available on the whole model")
        sub = _bm_sub(model)
    groups, levels, uct = _stabilized(model, level, stabilize, lambda L: _run(
        model, L, ps, variant, coeff, "cohomology", allow_all, delete, sub))
    flavor = COHOM_C if compact_support else COHOM
    return HomologyResult(_q_filter(groups, q_range), coeff, variant, flavor, levels, uct)
