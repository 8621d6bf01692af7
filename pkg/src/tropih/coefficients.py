"""Multi-tangent lattices F_p(sigma) and the maps between them.

F_p(sigma) is the saturation, inside the p-th exterior power of
Z^(free coordinates), of the p-fold wedges of tangent vectors of all
cofaces of sigma with the same sedentarity.  Wedge coordinates are indexed
by lexicographically ordered p-subsets of the free coordinates.
"""

import itertools
import threading
from dataclasses import dataclass

from .errors import CellNotFound, ImageNotContained, NotAFace
from .exact_linalg import IntegerLattice, determinant, saturate


@dataclass(frozen=True)
class MultiTangent:
    cell: int
    p: int
    free_coords: tuple
    subsets: tuple
    lattice: IntegerLattice

    @property
    def rank(self):
        return self.lattice.rank

    @property
    def basis(self):
        return self.lattice.basis


def wedge_subsets(k, p):
    return tuple(itertools.combinations(range(k), p))


def wedge(vectors, subsets):
    """Coordinates of v_1 ^ ... ^ v_p on the basis e_S, S in ``subsets``."""
    out = []
    for S in subsets:
        out.append(determinant([[v[j] for j in S] for v in vectors]))
    return out


_lock = threading.Lock()


def _cache(C):
    c = getattr(C, "_multitangent_cache", None)
    if c is None:
        c = {}
        C._multitangent_cache = c
    return c


def multitangent(C, sigma, p):
    if p < 0:
        raise ValueError("p must be non-negative")
    if not isinstance(sigma, int) or sigma < 0 or sigma >= len(C):
        raise CellNotFound("no cell with id %r" % (sigma,))
    cache = _cache(C)
    key = (sigma, p)
    with _lock:
        hit = cache.get(key)
    if hit is not None:
        return hit
    cell = C.cell(sigma)
    fc = tuple(cell.free_coords)
    k = len(fc)
    subsets = wedge_subsets(k, p)
    amb = len(subsets)
    if p == 0:
        lat = IntegerLattice(1, [[1]])
    elif p > k:
        lat = IntegerLattice(0, [])
    else:
        gens = []
        for t in C.cofaces(sigma):
            tc = C.cell(t)
            if tc.sedentarity != cell.sedentarity:
                continue
            basis = tc.tangent_lattice().basis
            for combo in itertools.combinations(basis, p):
                w = wedge(combo, subsets)
                if any(w):
                    gens.append(w)
        lat = saturate(gens, amb)
    mt = MultiTangent(sigma, p, fc, subsets, lat)
    with _lock:
        cache.setdefault(key, mt)
    return mt


def _project_wedge(vec, src, dst):
    """Project a wedge vector from free coords ``src`` to the subset ``dst``."""
    pos = {c: i for i, c in enumerate(dst.free_coords)}
    index = {S: i for i, S in enumerate(dst.subsets)}
    out = [0] * len(dst.subsets)
    for S, x in zip(src.subsets, vec):
        if not x:
            continue
        coords = [src.free_coords[j] for j in S]
        if all(c in pos for c in coords):
            out[index[tuple(pos[c] for c in coords)]] += x
    return out


def restriction(C, sigma, tau, p):
    """Matrix of iota: F_p(sigma) -> F_p(tau) in the HNF bases (rows index tau's basis)."""
    if not C.is_face(tau, sigma):
        raise NotAFace("cell %d is not a face of cell %d" % (tau, sigma))
    src = multitangent(C, sigma, p)
    dst = multitangent(C, tau, p)
    same = C.cell(sigma).sedentarity == C.cell(tau).sedentarity
    cols = []
    for b in src.basis:
        img = b if same else _project_wedge(b, src, dst)
        c = dst.lattice.coordinates(img)
        if c is None:
            raise ImageNotContained("image of F_%d(%d) is not inside F_%d(%d)" % (p, sigma, p, tau))
        cols.append(c)
    return [[cols[j][i] for j in range(len(cols))] for i in range(dst.rank)]
