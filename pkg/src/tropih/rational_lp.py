"""Small exact linear programs over the rationals.

Dense two-phase simplex on Fractions with Bland's rule.  The polyhedra in
this package live in dimension <= 4 or so, so clarity wins over speed.
"""

from fractions import Fraction

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


def rref(rows, ncols):
    """Reduced row echelon form over Q.  Returns (rows, pivot columns)."""
    M = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    pr = 0
    for j in range(ncols):
        sel = None
        for i in range(pr, len(M)):
            if M[i][j] != 0:
                sel = i
                break
        if sel is None:
            continue
        M[pr], M[sel] = M[sel], M[pr]
        pv = M[pr][j]
        M[pr] = [x / pv for x in M[pr]]
        for i in range(len(M)):
            if i != pr and M[i][j] != 0:
                f = M[i][j]
                M[i] = [a - f * b for a, b in zip(M[i], M[pr])]
        pivots.append(j)
        pr += 1
        if pr == len(M):
            break
    return M[:pr], pivots


def affine_param(E, e, n):
    """Solve E x = e.  Returns (x0, N) with solutions x0 + N*y, or None."""
    aug = [list(row) + [rhs] for row, rhs in zip(E, e)]
    R, piv = rref(aug, n + 1)
    if n in piv:
        return None
    x0 = [Fraction(0)] * n
    for row, p in zip(R, piv):
        x0[p] = row[n]
    free = [j for j in range(n) if j not in piv]
    N = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(R, piv):
            v[p] = -row[f]
        N.append(v)
    # N as list of column vectors
    return x0, N


def _pivot(T, basis, r, c):
    pv = T[r][c]
    T[r] = [x / pv for x in T[r]]
    for i in range(len(T)):
        if i != r and T[i][c] != 0:
            f = T[i][c]
            T[i] = [a - f * b for a, b in zip(T[i], T[r])]
    basis[r] = c


def _simplex(T, basis, obj_row, allowed):
    """Maximize using the tableau; obj_row holds reduced costs (negated)."""
    m = len(T)
    while True:
        col = None
        for j in allowed:
            if T[obj_row][j] < 0:
                col = j
                break
        if col is None:
            return OPTIMAL
        best = None
        for i in range(m):
            if i == obj_row:
                continue
            a = T[i][col]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return UNBOUNDED
        _pivot(T, basis, best[1], col)


def lp_max(c, A, b, E=(), e=()):
    """Maximize c.x subject to A x <= b and E x = e, x free.

    Returns (status, value, x).  Value and x are None unless optimal.
    """
    n = len(c)
    par = affine_param(E, e, n) if E else ([Fraction(0)] * n, [[Fraction(int(i == j)) for i in range(n)] for j in range(n)])
    if par is None:
        return INFEASIBLE, None, None
    x0, N = par
    k = len(N)
    # reduced problem in y: A N y <= b - A x0
    A2 = [[sum(Fraction(row[i]) * N[j][i] for i in range(n)) for j in range(k)] for row in A]
    b2 = [Fraction(bi) - sum(Fraction(row[i]) * x0[i] for i in range(n)) for row, bi in zip(A, b)]
    c2 = [sum(Fraction(c[i]) * N[j][i] for i in range(n)) for j in range(k)]
    shift = sum(Fraction(c[i]) * x0[i] for i in range(n))
    status, val, y = _lp_free(c2, A2, b2)
    if status != OPTIMAL:
        return status, None, None
    x = [x0[i] + sum(N[j][i] * y[j] for j in range(k)) for i in range(n)]
    return OPTIMAL, val + shift, x


def _lp_free(c, A, b):
    """max c.y, A y <= b, y free (variables split as y+ - y-)."""
    m = len(A)
    k = len(c)
    if m == 0:
        if any(x != 0 for x in c):
            return UNBOUNDED, None, None
        return OPTIMAL, Fraction(0), [Fraction(0)] * k
    # columns: y+ (k), y- (k), slacks (m), artificials (m)
    nv = 2 * k + m
    T = []
    basis = []
    art = []
    for i in range(m):
        row = [Fraction(0)] * (nv + m + 1)
        sgn = 1 if b[i] >= 0 else -1
        for j in range(k):
            row[j] = sgn * A[i][j]
            row[k + j] = -sgn * A[i][j]
        row[2 * k + i] = Fraction(sgn)
        row[-1] = sgn * b[i]
        if sgn > 0:
            basis.append(2 * k + i)
        else:
            row[nv + i] = Fraction(1)
            basis.append(nv + i)
            art.append(i)
        T.append(row)
    # phase 1: minimize sum of artificials
    if art:
        obj = [Fraction(0)] * (nv + m + 1)
        for i in art:
            obj[nv + i] = Fraction(1)
        for i in art:
            obj = [a - r for a, r in zip(obj, T[i])]
        T.append(obj)
        _simplex(T, basis, m, list(range(nv + m)))
        if T[m][-1] != 0:
            return INFEASIBLE, None, None
        T.pop()
        # drive artificials out of the basis
        for i in range(m):
            if basis[i] >= nv:
                for j in range(nv):
                    if T[i][j] != 0:
                        _pivot(T, basis, i, j)
                        break
    obj = [Fraction(0)] * (nv + m + 1)
    for j in range(k):
        obj[j] = -c[j]
        obj[k + j] = c[j]
    for i in range(m):
        bj = basis[i]
        if bj < nv and obj[bj] != 0:
            f = obj[bj]
            obj = [a - f * r for a, r in zip(obj, T[i])]
    T.append(obj)
    status = _simplex(T, basis, m, list(range(nv)))
    if status == UNBOUNDED:
        return UNBOUNDED, None, None
    vals = [Fraction(0)] * (nv + m)
    for i in range(m):
        vals[basis[i]] = T[i][-1]
    y = [vals[j] - vals[k + j] for j in range(k)]
    return OPTIMAL, T[m][-1], y


def feasible_point(A, b, E=(), e=(), n=None):
    if n is None:
        n = len(A[0]) if A else len(E[0])
    status, _, x = lp_max([0] * n, A, b, E, e)
    return x if status == OPTIMAL else None
