"""Closed-form predictions used as independent oracles, and the duality checker.

Each oracle evaluates a case split literally and only calls the engine for
the auxiliary groups the formula itself mentions (punctured fans, open
complements, plain tropical homology).
"""

from dataclasses import dataclass, field

from .coefficients import multitangent, restriction
from .errors import (BadPair, ConditionCNotAsserted, FieldRequired, NotAFan, NotOneDimensional,
                     ValidationError)
from .exact_linalg import HomologyGroup, saturate
from .ic_engine import (GM, NONGM, Model, _variant, bm_homology, cohomology, homology,
                        relative_homology, tropical_homology)
from .stratification import dual_perversity, pair_filtration

VANISH = "VANISH"
VERTEX_MULTITANGENT = "VERTEX_MULTITANGENT"
ALLOWABLE_SUM = "ALLOWABLE_SUM"
PUNCTURED = "PUNCTURED"
SHIFTED_PUNCTURED = "SHIFTED_PUNCTURED"
EXT_TERM = "EXT_TERM"

FLAVORS = ("GM", "NONGM", "NONGM_BM", "NONGM_COHOM")


@dataclass
class ConePrediction:
    flavor: str
    p: int
    n: int
    vertex_perversity: int
    cases: dict
    groups: dict
    alternative: dict = field(default_factory=dict)

    def group(self, q):
        return self.groups.get(q, HomologyGroup())


def _check_fan(model):
    C = model.complex
    v = model.cone_point
    if v is None or not model.conical:
        raise NotAFan("cone formulas need a conical model with a vertex")
    if C.dim(v) != 0:
        raise NotAFan("cone point must be a 0-cell")
    for i in C.ids():
        if not C.is_face(v, i):
            raise NotAFan("cell %d does not contain the vertex" % i)
    S = model.strat.stratum_of(v)
    if S.cells != frozenset([v]) or S.formal_dim != 0:
        raise NotAFan("the vertex must be a 0-dimensional stratum of its own")
    return v


def _strip(g, coeff):
    return g if coeff == "Z" else HomologyGroup(g.free_rank)


def allowable_sum_rank(model, p):
    """Rank of the sum of the images of F_p(s) in F_p(v) over cofaces s with p(s) >= codim(s)."""
    C = model.complex
    v = model.cone_point
    gens = []
    for s in C.cofaces(v):
        if s == v:
            continue
        S = model.strat.stratum_of(s)
        if model.pbar[S.id] < S.codim:
            continue
        M = restriction(C, s, v, p)
        for j in range(len(M[0]) if M else 0):
            gens.append([M[i][j] for i in range(len(M))])
    amb = multitangent(C, v, p).rank
    return saturate(gens, amb).rank if gens else 0


def cone_formula(model, p, flavor, coeff="Q", level=None, stabilize=True):
    flavor = str(flavor).upper()
    if flavor not in FLAVORS:
        raise ValidationError("unknown cone flavor %r" % (flavor,))
    v = _check_fan(model)
    n = model.formal_dim
    pv = model.pbar.of_cell(v)
    t = n - pv
    kw = dict(coeff=coeff, level=level, stabilize=stabilize)
    cases, groups, alt = {}, {}, {}
    punct = {}

    def punctured(kind):
        if kind not in punct:
            if kind == "GM":
                punct[kind] = homology(model, [p], GM, delete=[v], **kw)
            elif kind == "NONGM":
                punct[kind] = homology(model, [p], NONGM, delete=[v], **kw)
            elif kind == "COHOM":
                punct[kind] = cohomology(model, [p], NONGM, delete=[v], **kw)
            elif kind == "Z":
                punct[kind] = homology(model, [p], NONGM, delete=[v], coeff="Z",
                                       level=level, stabilize=stabilize)
            elif kind == "BM_PUNCT":
                punct[kind] = relative_homology(model, ("link", [v]), [p], NONGM, **kw)
        return punct[kind]

    for q in range(n + 1):
        if flavor == "GM":
            if q == 0 and q >= t:
                cases[q] = VERTEX_MULTITANGENT
                groups[q] = HomologyGroup(multitangent(model.complex, v, p).rank)
            elif q == 0 and q == t - 1:
                cases[q] = ALLOWABLE_SUM
                groups[q] = HomologyGroup(allowable_sum_rank(model, p))
            elif q >= t - 1:
                cases[q] = VANISH
                groups[q] = HomologyGroup()
            else:
                cases[q] = PUNCTURED
                groups[q] = punctured("GM").group(p, q)
        elif flavor == "NONGM":
            if q >= t - 1:
                cases[q] = VANISH
                groups[q] = HomologyGroup()
            else:
                cases[q] = PUNCTURED
                groups[q] = punctured("NONGM").group(p, q)
        elif flavor == "NONGM_BM":
            if q >= t:
                cases[q] = SHIFTED_PUNCTURED
                groups[q] = punctured("NONGM").group(p, q - 1) if q >= 1 else HomologyGroup()
                alt[q] = punctured("BM_PUNCT").group(p, q)
            else:
                cases[q] = VANISH
                groups[q] = HomologyGroup()
        else:
            if q > t - 1:
                cases[q] = VANISH
                groups[q] = HomologyGroup()
            elif q == t - 1:
                cases[q] = EXT_TERM
                if q >= 1 and coeff == "Z":
                    groups[q] = HomologyGroup(0, punctured("Z").group(p, q - 1).torsion)
                else:
                    groups[q] = HomologyGroup()
            else:
                cases[q] = PUNCTURED
                groups[q] = punctured("COHOM").group(p, q)
        groups[q] = _strip(groups[q], coeff)
    return ConePrediction(flavor, p, n, pv, cases, groups, alt)


def engine_for_flavor(model, flavor, p_range, coeff="Q", level=None, stabilize=True):
    kw = dict(coeff=coeff, level=level, stabilize=stabilize)
    if flavor == "GM":
        return homology(model, p_range, GM, **kw)
    if flavor == "NONGM":
        return homology(model, p_range, NONGM, **kw)
    if flavor == "NONGM_BM":
        return bm_homology(model, p_range, NONGM, **kw)
    if flavor == "NONGM_COHOM":
        return cohomology(model, p_range, NONGM, **kw)
    raise ValidationError("unknown cone flavor %r" % (flavor,))


def compare_cone(model, flavor, coeff="Q", p_range=None, level=None, stabilize=True):
    """Engine against the cone formula; returns a list of (p, q, engine, predicted) diffs."""
    ps = list(range(model.free_dim + 1)) if p_range is None else list(p_range)
    res = engine_for_flavor(model, flavor, ps, coeff, level, stabilize)
    diffs = []
    for p in ps:
        pred = cone_formula(model, p, flavor, coeff, level, stabilize)
        for q in range(pred.n + 1):
            got = res.group(p, q)
            if got != pred.group(q):
                diffs.append((p, q, got, pred.group(q)))
            if q in pred.alternative and pred.alternative[q] != pred.group(q):
                diffs.append((p, q, pred.alternative[q], pred.group(q)))
    return diffs


# ---------------------------------------------------------------- one-dimensional spaces

def _check_onedim(model):
    C = model.complex
    if C.max_dim != 1 or model.formal_dim != 1:
        raise NotOneDimensional("expected a 1-dimensional complex")
    for i in C.ids():
        if C.dim(i) == 0 and len(C.cofaces(i)) < 2:
            raise NotOneDimensional("isolated point %d; the space must be pure" % i)


def edge_classes(model):
    """Split edge strata into A (two vertices, both p >= 0) and B (no vertex, or all p < 0)."""
    _check_onedim(model)
    C = model.complex
    st = model.strat
    A, B = [], []
    for S in st.strata:
        if S.formal_dim != 1:
            continue
        verts = set()
        for c in S.cells:
            for f in C.proper_faces(c):
                if f not in S.cells:
                    verts.add(st.cell_stratum[f])
        vals = [model.pbar[w] for w in verts]
        if len(verts) == 2 and all(x >= 0 for x in vals):
            A.append(S.id)
        elif all(x < 0 for x in vals):
            B.append(S.id)
    return A, B


def onedim_nongm(model, p_range=None):
    A, B = edge_classes(model)
    a, b = len(A), len(B)
    ps = list(range(model.free_dim + 1)) if p_range is None else list(p_range)
    groups = {}
    for p in ps:
        groups[(p, 0)] = HomologyGroup(b if p in (0, 1) else 0)
        groups[(p, 1)] = HomologyGroup(a if p in (0, 1) else 0)
    return groups


def onedim_gm(model, p_range=None, level=None, stabilize=True):
    _check_onedim(model)
    C = model.complex
    V = [i for i in C.ids() if C.dim(i) == 0 and model.pbar.of_cell(i) < 0
         and model.strat.stratum_of(i).formal_dim == 0]
    r = tropical_homology(model, p_range, "Q", level, stabilize, delete=V)
    return dict(r.groups)


# ---------------------------------------------------------------- tropical manifolds with singularities

def tms_model(C, U, m, level=None):
    U = frozenset(U)
    if C.max_dim != 1:
        raise BadPair("expected a 1-dimensional space")
    try:
        F = pair_filtration(C, U)
    except ValidationError as e:
        raise BadPair(str(e))
    model = Model(C, F, "constant:%d" % m)
    if not model.compact:
        raise BadPair("X must be compact")
    return model


def tms_oracle(model, m, p_range=None, level=None, stabilize=True):
    """H(U) for m < 0 and H^BM(U) = H(X, X minus U) for m >= 0."""
    F = model.filtration
    if F.open_set is None:
        raise BadPair("model must carry a pair filtration")
    Z = sorted(set(model.complex.ids()) - F.open_set)
    if m < 0:
        r = tropical_homology(model, p_range, "Q", level, stabilize, delete=Z)
    else:
        r = relative_homology(model, ("cells", Z), p_range, GM, "Q", level, stabilize,
                              allow_all=True)
    return dict(r.groups)


# ---------------------------------------------------------------- duality

@dataclass
class DualityReport:
    variant: str
    n: int
    entries: dict
    mismatches: list

    @property
    def ok(self):
        return not self.mismatches

    def to_json(self):
        return {
            "variant": self.variant,
            "ok": self.ok,
            "entries": {"%d,%d" % k: list(v) for k, v in sorted(self.entries.items())},
            "mismatches": ["%d,%d" % k for k in self.mismatches],
        }


def duality_check(model, coeff="Q", variant=NONGM, p_range=None, level=None, stabilize=True):
    """Compare dim IH^{n-p,n-q} (perversity p) with dim IH^{Dp,BM}_{p,q}."""
    if str(coeff).upper() != "Q":
        raise FieldRequired("duality is only checked over a field")
    if not model.condition_C:
        raise ConditionCNotAsserted("filtration is not known to satisfy condition (C)")
    variant = _variant(variant)
    n = model.formal_dim
    if n < 0 or not model.complex.ids():
        return DualityReport(variant, n, {}, [])
    ps = list(range(model.free_dim + 1)) if p_range is None else list(p_range)
    coh = cohomology(model, None, variant, "Q", level, stabilize)
    dual = model.with_perversity(dual_perversity(model.strat, model.pbar))
    bm = bm_homology(dual, ps, variant, "Q", level, stabilize)
    entries, bad = {}, []
    for p in ps:
        for q in range(n + 1):
            lhs = coh.rank(n - p, n - q) if n - p >= 0 else 0
            rhs = bm.rank(p, q)
            entries[(p, q)] = (lhs, rhs)
            if lhs != rhs:
                bad.append((p, q))
    return DualityReport(variant, n, entries, bad)
