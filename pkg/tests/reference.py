"""Independent dense references used by the engine tests.

Everything here works over Q with Fraction elimination and a direct reading
of the allowability rule, so it shares no code with the sparse engine.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd

from tropih.exact_linalg import determinant


def q_rank(rows):
    A = [[Fraction(x) for x in r] for r in rows if any(r)]
    rk = 0
    ncols = len(A[0]) if A else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[rk], A[piv] = A[piv], A[rk]
        for i in range(rk + 1, len(A)):
            if A[i][c] != 0:
                f = A[i][c] / A[rk][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[rk])]
        rk += 1
    return rk


def determinantal_divisors(M):
    """d_k = gcd of all k x k minors; invariant factors are d_k / d_{k-1}."""
    r, c = len(M), len(M[0])
    out = []
    for k in range(1, min(r, c) + 1):
        g = 0
        for rows in combinations(range(r), k):
            for cols in combinations(range(c), k):
                g = gcd(g, determinant([[M[i][j] for j in cols] for i in rows]))
        if g == 0:
            break
        out.append(g)
    return out


def brute_invariant_factors(M):
    d = determinantal_divisors(M)
    return [d[0]] + [d[i] // d[i - 1] for i in range(1, len(d))] if d else []


def allowable(s, T, strat, pbar):
    q = len(s) - 1
    for k in range(1, len(s) + 1):
        for f in combinations(s, k):
            S = strat.strata[strat.cell_stratum[T.carrier[f]]]
            if S.codim and k - 1 > q - S.codim + pbar[S.id]:
                return False
    return True


def classical_ih_ranks(T, strat, pbar, keep=None):
    """Betti numbers of the allowable chains with constant Q coefficients.

    ``keep`` restricts to a set of simplices (an open part of the model)."""
    simp = {}
    for s in T.all_simplices():
        if T.is_active(s) and (keep is None or s in keep):
            simp.setdefault(len(s) - 1, []).append(s)
    top = max(simp, default=-1)
    A = {q: [s for s in simp.get(q, []) if allowable(s, T, strat, pbar)] for q in range(top + 2)}
    bad = {q: [s for s in simp.get(q, []) if s not in set(A[q])] for q in range(top + 2)}

    def bnd(q, rows):
        idx = {s: i for i, s in enumerate(rows)}
        M = [[0] * len(A[q]) for _ in rows]
        for j, s in enumerate(A[q]):
            for k in range(len(s)):
                f = s[:k] + s[k + 1:]
                if f in idx:
                    M[idx[f]][j] += (-1) ** k
        return M

    def dim_ic(q):
        return len(A[q]) - (q_rank(bnd(q, bad[q - 1])) if q > 0 else 0)

    def rank_d(q):
        if q == 0:
            return 0
        g = bnd(q, bad[q - 1])
        f = bnd(q, A[q - 1])
        return q_rank(g + f) - q_rank(g)

    return [dim_ic(q) - rank_d(q) - rank_d(q + 1) for q in range(top + 1)]
