"""Exact integer linear algebra.

Hermite and Smith normal forms, lattice saturation, kernel lattices and
homology of free chain complexes over Z and Q.  Everything works on plain
Python ints, so there is no overflow and no rounding.

Dense routines (``hnf``, ``snf``) take lists of lists.  The chain complex
code uses :class:`IntMatrix`, a column-sparse matrix, together with a
unit-pivot elimination that only falls back to a dense Smith form on the
residual block.
"""

from dataclasses import dataclass, field

from .errors import NotAComplex


class IntMatrix:
    """Column-sparse integer matrix; ``cols_data[j]`` maps row -> nonzero entry."""

    __slots__ = ("rows", "cols", "cols_data")

    def __init__(self, rows, cols, cols_data=None):
        self.rows = rows
        self.cols = cols
        if cols_data is None:
            cols_data = [dict() for _ in range(cols)]
        if len(cols_data) != cols:
            raise ValueError("column count mismatch")
        self.cols_data = cols_data

    @classmethod
    def from_dense(cls, dense, cols=None):
        dense = [list(r) for r in dense]
        rows = len(dense)
        if cols is None:
            cols = len(dense[0]) if rows else 0
        data = [dict() for _ in range(cols)]
        for i, row in enumerate(dense):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                if v:
                    data[j][i] = int(v)
        return cls(rows, cols, data)

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self.cols_data):
            for i, v in col.items():
                out[i][j] = v
        return out

    def transpose(self):
        data = [dict() for _ in range(self.rows)]
        for j, col in enumerate(self.cols_data):
            for i, v in col.items():
                data[i][j] = v
        return IntMatrix(self.cols, self.rows, data)

    def matmul(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch %dx%d * %dx%d" % (self.rows, self.cols, other.rows, other.cols))
        out = []
        for col in other.cols_data:
            acc = {}
            for k, b in col.items():
                for i, a in self.cols_data[k].items():
                    s = acc.get(i, 0) + a * b
                    if s:
                        acc[i] = s
                    else:
                        acc.pop(i, None)
            out.append(acc)
        return IntMatrix(self.rows, other.cols, out)

    def is_zero(self):
        return not any(self.cols_data)

    def nnz(self):
        return sum(len(c) for c in self.cols_data)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.cols_data) == (other.rows, other.cols, other.cols_data)

    def __repr__(self):
        return "IntMatrix(%d, %d, nnz=%d)" % (self.rows, self.cols, self.nnz())


def _as_dense(M):
    if isinstance(M, IntMatrix):
        return M.to_dense()
    return [list(map(int, r)) for r in M]


def _as_sparse(M):
    if isinstance(M, IntMatrix):
        return M
    return IntMatrix.from_dense(M)


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)] for i in range(len(A))]


def determinant(A):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(r) for r in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


# ---------------------------------------------------------------- normal forms

def hnf(M):
    """Row Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``H = U*M``.  Pivots are
    positive and entries above a pivot are reduced into ``[0, pivot)``.
    """
    H = _as_dense(M)
    m = len(H)
    n = len(H[0]) if m else (M.cols if isinstance(M, IntMatrix) else 0)
    U = identity(m)
    pr = 0
    for j in range(n):
        if pr >= m:
            break
        while True:
            best = None
            for i in range(pr, m):
                if H[i][j] and (best is None or abs(H[i][j]) < abs(H[best][j])):
                    best = i
            if best is None:
                break
            if best != pr:
                H[pr], H[best] = H[best], H[pr]
                U[pr], U[best] = U[best], U[pr]
            piv = H[pr][j]
            clean = True
            for i in range(pr + 1, m):
                if H[i][j]:
                    q = H[i][j] // piv
                    _row_axpy(H, i, pr, -q)
                    _row_axpy(U, i, pr, -q)
                    if H[i][j]:
                        clean = False
            if clean:
                break
        if H[pr][j] == 0:
            continue
        if H[pr][j] < 0:
            H[pr] = [-x for x in H[pr]]
            U[pr] = [-x for x in U[pr]]
        piv = H[pr][j]
        for i in range(pr):
            q = H[i][j] // piv
            if q:
                _row_axpy(H, i, pr, -q)
                _row_axpy(U, i, pr, -q)
        pr += 1
    return H, U


def _row_axpy(A, dst, src, c):
    if c:
        rs = A[src]
        A[dst] = [a + c * b for a, b in zip(A[dst], rs)]


def _col_axpy(A, dst, src, c):
    if c:
        for row in A:
            row[dst] += c * row[src]


def _swap_cols(A, a, b):
    for row in A:
        row[a], row[b] = row[b], row[a]


def snf(M, transforms=True):
    """Smith normal form ``D = U*M*V`` with ``d_1 | d_2 | ...``.

    Pivot choice is the nonzero entry of least absolute value, first in
    row-major order, so the output is deterministic.
    """
    D = _as_dense(M)
    m = len(D)
    n = len(D[0]) if m else (M.cols if isinstance(M, IntMatrix) else 0)
    U = identity(m) if transforms else None
    V = identity(n) if transforms else None
    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        _move_pivot(D, U, V, t, i, j)
        while True:
            piv = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // piv
                    _row_axpy(D, i, t, -q)
                    if U is not None:
                        _row_axpy(U, i, t, -q)
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // piv
                    _col_axpy(D, j, t, -q)
                    if V is not None:
                        _col_axpy(V, j, t, -q)
                    if D[t][j]:
                        dirty = True
            if dirty:
                best = None
                for i in range(t, m):
                    if D[i][t] and (best is None or abs(D[i][t]) < best[0]):
                        best = (abs(D[i][t]), i, t)
                for j in range(t + 1, n):
                    if D[t][j] and (best is None or abs(D[t][j]) < best[0]):
                        best = (abs(D[t][j]), t, j)
                _move_pivot(D, U, V, t, best[1], best[2])
                continue
            # divisibility of the trailing block
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if D[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            _row_axpy(D, t, bad, 1)
            if U is not None:
                _row_axpy(U, t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            if U is not None:
                U[t] = [-x for x in U[t]]
        t += 1
    return D, U, V


def _move_pivot(D, U, V, t, i, j):
    if i != t:
        D[t], D[i] = D[i], D[t]
        if U is not None:
            U[t], U[i] = U[i], U[t]
    if j != t:
        _swap_cols(D, t, j)
        if V is not None:
            _swap_cols(V, t, j)


def snf_diagonal(M):
    D, _, _ = snf(M, transforms=False)
    out = []
    for i in range(min(len(D), len(D[0]) if D else 0)):
        if D[i][i]:
            out.append(D[i][i])
    return out


def invariant_factors(M):
    """Nonzero invariant factors of a (sparse) integer matrix, ascending.

    Unit pivots are eliminated first, choosing within a row the column with
    the fewest entries to limit fill-in.  Whatever is left is handed to the
    dense Smith form.
    """
    M = _as_sparse(M)
    rows = {}
    colidx = {}
    for j, col in enumerate(M.cols_data):
        for i, v in col.items():
            rows.setdefault(i, {})[j] = v
            colidx.setdefault(j, set()).add(i)
    ones = 0
    progress = True
    while progress:
        progress = False
        for i in sorted(rows, key=lambda k: (len(rows[k]), k)):
            row = rows.get(i)
            if not row:
                continue
            pj = None
            for j, v in row.items():
                if v == 1 or v == -1:
                    if pj is None or (len(colidx[j]), j) < (len(colidx[pj]), pj):
                        pj = j
            if pj is None:
                continue
            pv = row[pj]
            for k in list(colidx[pj]):
                if k == i:
                    continue
                rk = rows[k]
                c = -rk[pj] * pv
                for j, v in row.items():
                    s = rk.get(j, 0) + c * v
                    if s:
                        if j not in rk:
                            colidx[j].add(k)
                        rk[j] = s
                    elif j in rk:
                        del rk[j]
                        colidx[j].discard(k)
                if not rk:
                    del rows[k]
            for j in row:
                colidx[j].discard(i)
            del rows[i]
            ones += 1
            progress = True
    rest = [i for i in sorted(rows) if rows[i]]
    if not rest:
        return [1] * ones
    cols = sorted({j for i in rest for j in rows[i]})
    pos = {j: c for c, j in enumerate(cols)}
    dense = [[0] * len(cols) for _ in rest]
    for r, i in enumerate(rest):
        for j, v in rows[i].items():
            dense[r][pos[j]] = v
    return [1] * ones + snf_diagonal(dense)


def rank(M):
    return len(invariant_factors(M))


# ---------------------------------------------------------------- lattices

def _primitive(v):
    from math import gcd
    g = 0
    for x in v:
        g = gcd(g, x)
    if g > 1:
        return [x // g for x in v]
    return list(v)


class IntegerLattice:
    """Sublattice of Z^n given by a basis in reduced row Hermite form."""

    def __init__(self, ambient_rank, basis=()):
        self.ambient_rank = ambient_rank
        basis = [list(map(int, b)) for b in basis]
        for b in basis:
            if len(b) != ambient_rank:
                raise ValueError("basis vector of wrong length")
        if basis:
            H, _ = hnf(basis)
            basis = [r for r in H if any(r)]
        self.basis = basis
        self._pivots = [next(j for j, x in enumerate(r) if x) for r in basis]

    @property
    def rank(self):
        return len(self.basis)

    def coordinates(self, v):
        """Integer coordinates of ``v`` in the basis, or None if v is not in the lattice."""
        v = list(v)
        c = []
        for b, p in zip(self.basis, self._pivots):
            s = v[p] - sum(cj * bj[p] for cj, bj in zip(c, self.basis))
            if s % b[p]:
                return None
            c.append(s // b[p])
        recon = [0] * self.ambient_rank
        for cj, b in zip(c, self.basis):
            for k, x in enumerate(b):
                recon[k] += cj * x
        if recon != v:
            return None
        return c

    def contains(self, v):
        return self.coordinates(v) is not None

    def contains_lattice(self, other):
        return all(self.contains(b) for b in other.basis)

    def is_saturated(self):
        return all(d == 1 for d in snf_diagonal(self.basis)) if self.basis else True

    def __eq__(self, other):
        if not isinstance(other, IntegerLattice):
            return NotImplemented
        return self.ambient_rank == other.ambient_rank and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_rank, tuple(map(tuple, self.basis))))

    def __repr__(self):
        return "IntegerLattice(%d, %r)" % (self.ambient_rank, self.basis)


def sparse_kernel_basis(columns, ncols=None):
    """Basis of the integer kernel lattice of a column-sparse matrix.

    ``columns`` is a list of dicts (row -> value).  Returns a list of dicts
    (column index -> coefficient).  Column operations are unimodular, so
    the result is a basis of the full kernel lattice, which is saturated.
    """
    if ncols is None:
        ncols = len(columns)
    vec = {c: dict(columns[c]) for c in range(ncols) if columns[c]}
    combo = {c: {c: 1} for c in range(ncols)}
    kernel = [combo[c] for c in range(ncols) if c not in vec]
    live = set(vec)
    # row -> set of live columns touching it
    rowidx = {}
    for c, col in vec.items():
        for r in col:
            rowidx.setdefault(r, set()).add(c)
    progress = True
    while progress:
        progress = False
        for r in sorted(rowidx, key=lambda k: (len(rowidx[k]), k)):
            cols_here = rowidx.get(r)
            if not cols_here:
                continue
            piv = None
            for c in cols_here:
                v = vec[c][r]
                if v == 1 or v == -1:
                    if piv is None or (len(vec[c]), c) < (len(vec[piv]), piv):
                        piv = c
            if piv is None:
                continue
            pv = vec[piv][r]
            pcol = vec[piv]
            pcombo = combo[piv]
            for c in sorted(cols_here - {piv}):
                f = -vec[c][r] * pv
                col = vec[c]
                for rr, x in pcol.items():
                    s = col.get(rr, 0) + f * x
                    if s:
                        if rr not in col:
                            rowidx.setdefault(rr, set()).add(c)
                        col[rr] = s
                    elif rr in col:
                        del col[rr]
                        rowidx[rr].discard(c)
                cc = combo[c]
                for k, x in pcombo.items():
                    s = cc.get(k, 0) + f * x
                    if s:
                        cc[k] = s
                    else:
                        cc.pop(k, None)
                if not col:
                    live.discard(c)
                    kernel.append(cc)
            for rr in pcol:
                rowidx[rr].discard(piv)
            live.discard(piv)
            del vec[piv]
            progress = True
    rest = sorted(c for c in live if vec.get(c))
    if rest:
        rws = sorted({r for c in rest for r in vec[c]})
        dense = [[vec[c].get(r, 0) for c in rest] for r in rws]
        H, U = hnf([list(x) for x in zip(*dense)])
        for k, hrow in enumerate(H):
            if not any(hrow):
                out = {}
                for idx, y in enumerate(U[k]):
                    if y:
                        for key, x in combo[rest[idx]].items():
                            s = out.get(key, 0) + y * x
                            if s:
                                out[key] = s
                            else:
                                out.pop(key, None)
                kernel.append(out)
    kernel.sort(key=lambda d: sorted(d))
    return kernel


def kernel_lattice(M):
    """Saturated lattice {x in Z^cols : M x = 0}, HNF basis."""
    S = _as_sparse(M)
    basis = []
    for d in sparse_kernel_basis(S.cols_data, S.cols):
        v = [0] * S.cols
        for k, x in d.items():
            v[k] = x
        basis.append(v)
    return IntegerLattice(S.cols, basis)


def saturate(gens, ambient_rank=None):
    """Saturation of the span of ``gens`` inside Z^n."""
    gens = [list(map(int, g)) for g in gens]
    if ambient_rank is None:
        if not gens:
            raise ValueError("ambient rank needed for an empty generator list")
        ambient_rank = len(gens[0])
    gens = [g for g in gens if any(g)]
    if not gens:
        return IntegerLattice(ambient_rank, [])
    # orthogonal complement, then its complement again
    perp = kernel_lattice(gens)
    if perp.rank == 0:
        return IntegerLattice(ambient_rank, identity(ambient_rank))
    return kernel_lattice(perp.basis)


# ---------------------------------------------------------------- homology

@dataclass(frozen=True)
class HomologyGroup:
    free_rank: int = 0
    torsion: tuple = field(default_factory=tuple)

    def __post_init__(self):
        t = tuple(self.torsion)
        for a, b in zip(t, t[1:]):
            if b % a:
                raise ValueError("torsion must be a divisibility chain")
        if any(d < 2 for d in t):
            raise ValueError("torsion coefficients must be >= 2")
        object.__setattr__(self, "torsion", t)

    def is_zero(self):
        return self.free_rank == 0 and not self.torsion

    def as_dict(self):
        return {"rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = []
        if self.free_rank:
            parts.append("Z^%d" % self.free_rank if self.free_rank > 1 else "Z")
        parts += ["Z/%d" % d for d in self.torsion]
        return " + ".join(parts) if parts else "0"


def _check_coeff(coeff):
    c = str(coeff).upper()
    if c not in ("Z", "Q"):
        raise ValueError("coefficient ring must be Z or Q, got %r" % (coeff,))
    return c


def _chain_dims(boundaries, dims):
    if dims is not None:
        dims = list(dims)
        for q, d in enumerate(boundaries, start=1):
            if d.rows != dims[q - 1] or d.cols != dims[q]:
                raise ValueError("boundary %d has shape %dx%d, expected %dx%d"
                                 % (q, d.rows, d.cols, dims[q - 1], dims[q]))
        return dims
    if not boundaries:
        return []
    dims = [boundaries[0].rows]
    for d in boundaries:
        if d.rows != dims[-1]:
            raise ValueError("inconsistent boundary shapes")
        dims.append(d.cols)
    return dims


def check_complex(boundaries):
    for q in range(len(boundaries) - 1):
        if not boundaries[q].matmul(boundaries[q + 1]).is_zero():
            raise NotAComplex("boundary %d composed with boundary %d is nonzero" % (q + 1, q + 2))


def homology_of_complex(boundaries, coeff="Z", dims=None, check=True):
    """Homology of a free chain complex.

    ``boundaries[k]`` is the matrix of d_{k+1}: C_{k+1} -> C_k.  Returns one
    :class:`HomologyGroup` per degree 0..len(dims)-1.
    """
    coeff = _check_coeff(coeff)
    boundaries = [_as_sparse(b) for b in boundaries]
    dims = _chain_dims(boundaries, dims)
    if check:
        check_complex(boundaries)
    facs = [invariant_factors(b) for b in boundaries]
    out = []
    for q, n in enumerate(dims):
        r_out = len(facs[q - 1]) if q >= 1 else 0
        incoming = facs[q] if q < len(facs) else []
        free = n - r_out - len(incoming)
        tors = tuple(d for d in incoming if d > 1) if coeff == "Z" else ()
        out.append(HomologyGroup(free, tors))
    return out


def cohomology_of_complex(boundaries, coeff="Z", dims=None, check=True):
    """Cohomology: homology of the transposed (cochain) complex."""
    coeff = _check_coeff(coeff)
    boundaries = [_as_sparse(b) for b in boundaries]
    dims = _chain_dims(boundaries, dims)
    if check:
        check_complex(boundaries)
    # delta^q = d_{q+1}^T : C^q -> C^{q+1}
    cob = [b.transpose() for b in boundaries]
    facs = [invariant_factors(c) for c in cob]
    out = []
    for q, n in enumerate(dims):
        r_out = len(facs[q]) if q < len(facs) else 0
        incoming = facs[q - 1] if q >= 1 else []
        free = n - r_out - len(incoming)
        tors = tuple(d for d in incoming if d > 1) if coeff == "Z" else ()
        out.append(HomologyGroup(free, tors))
    return out


def uct_consistent(homology, cohomology):
    """Check H^q = Hom(H_q, Z) + Ext(H_{q-1}, Z) degreewise over Z."""
    if len(homology) != len(cohomology):
        return False
    for q, (h, c) in enumerate(zip(homology, cohomology)):
        if c.free_rank != h.free_rank:
            return False
        prev = homology[q - 1].torsion if q >= 1 else ()
        if tuple(c.torsion) != tuple(prev):
            return False
    return True


class SparseLatticeBasis:
    """Basis of a lattice given by sparse vectors, kept in a reduced form
    that makes coordinate solving cheap.

    Unit pivots are cleared from every other vector (so their coordinates
    are read off directly); vectors without a unit entry are put into HNF.
    """

    def __init__(self, vectors):
        rows = [dict(v) for v in vectors if v]
        colidx = {}
        for i, r in enumerate(rows):
            for j in r:
                colidx.setdefault(j, set()).add(i)
        pivot_of = {}
        pivoted = set()
        progress = True
        while progress:
            progress = False
            for i in sorted(range(len(rows)), key=lambda k: (len(rows[k]), k)):
                if i in pivoted or not rows[i]:
                    continue
                row = rows[i]
                pj = None
                for j, v in row.items():
                    if (v == 1 or v == -1) and j not in pivot_of:
                        if pj is None or (len(colidx[j]), j) < (len(colidx[pj]), pj):
                            pj = j
                if pj is None:
                    continue
                if row[pj] == -1:
                    for j in row:
                        row[j] = -row[j]
                for k in list(colidx[pj]):
                    if k == i:
                        continue
                    rk = rows[k]
                    f = -rk[pj]
                    for j, v in row.items():
                        s = rk.get(j, 0) + f * v
                        if s:
                            if j not in rk:
                                colidx.setdefault(j, set()).add(k)
                            rk[j] = s
                        elif j in rk:
                            del rk[j]
                            colidx[j].discard(k)
                pivot_of[pj] = i
                pivoted.add(i)
                progress = True
        self.unit_rows = [(j, rows[i]) for j, i in sorted(pivot_of.items())]
        rest = [rows[i] for i in range(len(rows)) if i not in pivoted and rows[i]]
        self.rest_cols = sorted({j for r in rest for j in r})
        if rest:
            pos = {j: c for c, j in enumerate(self.rest_cols)}
            dense = []
            for r in rest:
                v = [0] * len(self.rest_cols)
                for j, x in r.items():
                    v[pos[j]] = x
                dense.append(v)
            self.rest = IntegerLattice(len(self.rest_cols), dense)
        else:
            self.rest = None
        self.rank = len(self.unit_rows) + (self.rest.rank if self.rest else 0)
        self._pivot_pos = {j: k for k, (j, _) in enumerate(self.unit_rows)}

    def vectors(self):
        out = [dict(r) for _, r in self.unit_rows]
        if self.rest:
            for b in self.rest.basis:
                out.append({self.rest_cols[k]: x for k, x in enumerate(b) if x})
        return out

    def sparse_coordinates(self, v):
        """Like coordinates, as a dict {position: coefficient}."""
        # a pivot column occurs only in its own row, so its coefficient is read off v
        v = dict(v)
        out = {}
        hits = [(self._pivot_pos[j], c) for j, c in v.items() if j in self._pivot_pos]
        for k, c in hits:
            out[k] = c
            for j, x in self.unit_rows[k][1].items():
                s = v.get(j, 0) - c * x
                if s:
                    v[j] = s
                else:
                    v.pop(j, None)
        if self.rest is not None:
            pos = set(self.rest_cols)
            if any(k not in pos for k in v):
                return None
            if v:
                c = self.rest.coordinates([v.get(j, 0) for j in self.rest_cols])
                if c is None:
                    return None
                off = len(self.unit_rows)
                for i, x in enumerate(c):
                    if x:
                        out[off + i] = x
        elif v:
            return None
        return out

    def coordinates(self, v):
        """Coordinates of the sparse vector v (list, unit rows first), or None."""
        v = dict(v)
        coords = []
        for j, row in self.unit_rows:
            c = v.get(j, 0)
            coords.append(c)
            if c:
                for k, x in row.items():
                    s = v.get(k, 0) - c * x
                    if s:
                        v[k] = s
                    else:
                        v.pop(k, None)
        if self.rest is not None:
            pos = set(self.rest_cols)
            if any(k not in pos for k in v):
                return None
            dense = [v.get(j, 0) for j in self.rest_cols]
            c = self.rest.coordinates(dense)
            if c is None:
                return None
            coords.extend(c)
        elif v:
            return None
        return coords
