"""Named test instances: fans, small 1-dimensional spaces and random graphs."""

import json
import os
import random

from .instances import Instance, canonical_json
from .polyhedral_core import FaceComplex, plane_cone, ray, segment, validate_complex
from .stratification import face_filtration, trop_filtration

DATA_VERSION = "v1"


def _origin(C):
    zs = [i for i in C.ids() if C.dim(i) == 0 and all(c == 0 for c in C.cell(i).interior_point().coords)]
    return zs[0]


def _fan(rays=(), cones=()):
    cells = [ray([0, 0], r) for r in rays] + [plane_cone([0, 0], a, b) for a, b in cones]
    return FaceComplex.from_maximal(cells)


def u31(pv=0):
    C = _fan([(1, 0), (0, 1), (-1, -1)])
    v = _origin(C)
    return Instance(C, "trop", {"cell:%d" % v: pv}, conical=True, cone_point=v,
                    condition_C_asserted=True, name="u31_p%d" % pv, provenance="[PAPER]")


def line_fan():
    C = _fan([(1, 0), (-1, 0)])
    v = _origin(C)
    return Instance(C, "face", "zero", conical=True, cone_point=v, name="line_fan",
                    provenance="[DERIVED]")


def quadrant_fan():
    C = _fan(cones=[((1, 0), (0, 1))])
    v = _origin(C)
    return Instance(C, "face", "zero", conical=True, cone_point=v, name="quadrant_fan",
                    provenance="[DERIVED]")


def four_quadrants():
    C = _fan(cones=[((1, 0), (0, 1)), ((0, 1), (-1, 0)), ((-1, 0), (0, -1)), ((0, -1), (1, 0))])
    v = _origin(C)
    return Instance(C, "face", "zero", conical=True, cone_point=v, name="four_quadrants",
                    provenance="[DERIVED]")


def cone_corpus():
    return [u31(0), line_fan(), quadrant_fan(), four_quadrants()] + \
        [u31(k) for k in (-2, -1, 1, 2)]


def segment_inst(pv=0):
    C = FaceComplex.from_maximal([segment([0], [1])])
    return Instance(C, "trop", "constant:%d" % pv, name="segment_p%d" % pv, provenance="[PAPER]")


def triangle_cycle(pv=0):
    C = FaceComplex.from_maximal([segment([0, 0], [1, 0]), segment([1, 0], [0, 1]),
                                  segment([0, 1], [0, 0])])
    return Instance(C, "trop", "constant:%d" % pv, name="triangle_p%d" % pv, provenance="[DERIVED]")


def tripod():
    return FaceComplex.from_maximal([segment([0, 0], [1, 0]), segment([0, 0], [0, 1]),
                                     segment([0, 0], [-1, -1])])


def _pair(C, Z, m, name):
    U = sorted(set(C.ids()) - set(Z))
    return Instance(C, {"pair": U}, "constant:%d" % m, name=name, provenance="[PAPER]")


def _vertex_at(C, coords):
    for i in C.ids():
        if C.dim(i) == 0 and [float(c) for c in C.cell(i).interior_point().coords] == list(coords):
            return i
    raise KeyError(coords)


def tms_pairs(m):
    """Compact 1-dimensional pairs (X, U) with U a tropical manifold.

    Every point of U is 2-valent straight or a balanced trivalent vertex;
    the filtration is X > X minus U > empty.
    """
    out = []
    S = FaceComplex.from_maximal([segment([0], [1])])
    out.append(_pair(S, [_vertex_at(S, [0]), _vertex_at(S, [1])], m, "tms_open_segment_m%d" % m))
    S2 = FaceComplex.from_maximal([segment([0], [1]), segment([1], [2])])
    out.append(_pair(S2, [_vertex_at(S2, [0]), _vertex_at(S2, [2])], m,
                     "tms_open_subdivided_segment_m%d" % m))
    T = tripod()
    ends = [_vertex_at(T, c) for c in ([1, 0], [0, 1], [-1, -1])]
    out.append(_pair(T, ends, m, "tms_open_tripod_m%d" % m))
    R = triangle_cycle().complex
    corners = [_vertex_at(R, c) for c in ([0, 0], [1, 0], [0, 1])]
    out.append(_pair(R, corners, m, "tms_triangle_edges_m%d" % m))
    return out


def non_manifold_pairs(m):
    """Pairs whose open part has 1-valent points, outside the duality hypothesis."""
    S = FaceComplex.from_maximal([segment([0], [1])])
    T = tripod()
    return [_pair(S, [_vertex_at(S, [0])], m, "halfopen_segment_m%d" % m),
            _pair(T, [_vertex_at(T, [1, 0])], m, "tripod_one_end_m%d" % m)]


# ---------------------------------------------------------------- random graphs

def random_onedim(seed, max_tries=200):
    """A random valid 1-dimensional complex in R^2 whose trop filtration is its face filtration.

    Graph shapes are trees, cycles and graphs with rays; vertex perversities
    are drawn from [-2, 2].
    """
    rng = random.Random(seed)
    for _ in range(max_tries):
        shape = ("tree", "cycle", "rays")[seed % 3]
        k = rng.randint(3 if shape == "cycle" else 2, 5)
        pts = []
        while len(pts) < k:
            p = (rng.randint(-4, 4), rng.randint(-4, 4))
            if p not in pts:
                pts.append(p)
        edges = []
        if shape == "tree":
            for i in range(1, k):
                edges.append((rng.randrange(i), i))
        else:
            for i in range(1, k):
                edges.append((i - 1, i))
            if shape == "cycle" and k >= 3:
                edges.append((k - 1, 0))
        cells = [segment(list(pts[a]), list(pts[b])) for a, b in edges]
        if shape == "rays":
            for _ in range(rng.randint(1, 3)):
                base = pts[rng.randrange(k)]
                d = (rng.randint(-2, 2), rng.randint(-2, 2))
                if d != (0, 0):
                    cells.append(ray(list(base), list(d)))
        try:
            C = FaceComplex.from_maximal(cells)
        except Exception:
            continue
        if not validate_complex(C)["valid"]:
            continue
        if trop_filtration(C).levels != face_filtration(C).levels:
            continue
        vals = {"cell:%d" % i: rng.randint(-2, 2) for i in C.ids() if C.dim(i) == 0}
        return Instance(C, "trop", vals, name="random_%d" % seed, provenance="[DERIVED]")
    raise RuntimeError("no valid random complex found for seed %d" % seed)


# ---------------------------------------------------------------- shipped files

def named_instances():
    out = cone_corpus() + [segment_inst(0), segment_inst(-1), triangle_cycle(0)]
    for m in (-1, 0, 1):
        out += tms_pairs(m)
    return out


def data_dir():
    return os.path.join(os.path.dirname(os.path.abspath(__file__)), "data", DATA_VERSION)


def shipped_instance(name):
    with open(os.path.join(data_dir(), name + ".json")) as fh:
        return Instance.from_json(json.load(fh))


def _table(groups):
    return {"%d,%d" % k: g.as_dict() for k, g in sorted(groups.items())}


def oracle_predictions(inst):
    """Closed-form predictions for an instance, keyed by oracle name.

    Cone predictions are over Z, the others over Q.
    """
    from .oracles import FLAVORS, cone_formula, onedim_gm, onedim_nongm, tms_oracle
    m = inst.model()
    out = {}
    if inst.conical:
        for flavor in FLAVORS:
            groups = {}
            for p in range(m.free_dim + 1):
                pred = cone_formula(m, p, flavor, "Z")
                groups.update({(p, q): g for q, g in pred.groups.items()})
            out["cone_" + flavor] = _table(groups)
    elif inst.filtration.kind == "pair":
        name, _, arg = str(inst.perversity).partition(":")
        out["tms"] = _table(tms_oracle(m, int(arg)))
    elif m.complex.max_dim == 1:
        out["onedim_NONGM"] = _table(onedim_nongm(m))
        out["onedim_GM"] = _table(onedim_gm(m))
    return out


def write_data(target=None):
    target = target or data_dir()
    os.makedirs(target, exist_ok=True)
    for inst in named_instances():
        inst.expected = oracle_predictions(inst)
        with open(os.path.join(target, inst.name + ".json"), "w") as fh:
            fh.write(canonical_json(inst.to_json()))
