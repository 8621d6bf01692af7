"""Command-line front end: homology, oracle, info, validate."""

import argparse
import json
import sys

from . import corpus
from .coefficients import multitangent
from .errors import StabilizationFailure, TropIHError, UnsupportedInput, ValidationError
from .exact_linalg import HomologyGroup
from .ic_engine import (bm_homology, cohomology, homology, relative_homology,
                        tropical_homology)
from .instances import canonical_json, load_instance
from .oracles import (FLAVORS, compare_cone, duality_check, onedim_gm, onedim_nongm,
                      tms_oracle)
from .polyhedral_core import format_rational, validate_complex
from .stratification import Stratification

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_STABILIZATION = 3
EXIT_UNSUPPORTED = 4
EXIT_MISMATCH = 5

SUITES = ("cone", "onedim", "tms", "duality", "all")


def parse_range(text):
    """'2', '0-2' or '0,1,3' -> list of ints."""
    if text is None:
        return None
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            i = part.index("-", 1)
            a, b = int(part[:i]), int(part[i + 1:])
            out.extend(range(a, b + 1))
        else:
            out.append(int(part))
    return out


def _ids(text):
    return [int(x) for x in text.split(",") if x.strip()] if text else []


# ---------------------------------------------------------------- homology

def _fmt_group(g, coeff):
    if coeff == "Z":
        return str(g)
    if not g.free_rank:
        return "0"
    return "Q" if g.free_rank == 1 else "Q^%d" % g.free_rank


def cmd_homology(args):
    inst = load_instance(args.instance)
    model = inst.model()
    ps = parse_range(args.p)
    qs = parse_range(args.q)
    kw = dict(coeff=args.coeff.upper(), level=args.level, q_range=qs)
    variant = args.variant.upper()
    flavor = args.flavor
    rel = _ids(args.rel)
    if rel and flavor not in ("ih", "plain"):
        raise ValidationError("--rel is only available with --flavor ih or plain")
    if flavor == "ih":
        if rel:
            r = relative_homology(model, ("delete", rel), ps, variant, **kw)
        else:
            r = homology(model, ps, variant, **kw)
    elif flavor == "plain":
        if rel:
            r = relative_homology(model, ("delete", rel), ps, "GM", allow_all=True, **kw)
        else:
            r = tropical_homology(model, ps, **kw)
    elif flavor == "bm":
        r = bm_homology(model, ps, variant, **kw)
    elif flavor == "cohom":
        r = cohomology(model, ps, variant, **kw)
    elif flavor == "cohom-c":
        r = cohomology(model, ps, variant, compact_support=True, **kw)
    else:
        raise ValidationError("unknown flavor %r" % flavor)
    if args.format == "table":
        for (p, q) in sorted(r.groups):
            print("%d,%d\t%s" % (p, q, _fmt_group(r.groups[(p, q)], r.coeff)))
    else:
        sys.stdout.write(canonical_json(r.to_json()))
    return EXIT_OK


# ---------------------------------------------------------------- oracle suites

def _diff_groups(got, want):
    keys = sorted(set(got) | set(want))
    z = HomologyGroup()
    return [(k, got.get(k, z), want.get(k, z)) for k in keys if got.get(k, z) != want.get(k, z)]


def _fmt_diffs(diffs):
    return "; ".join("(%d,%d) engine=%s oracle=%s" % (k[0], k[1], a, b) for k, a, b in diffs)


def suite_cone(instances=None):
    lines = []
    for inst in instances or corpus.cone_corpus():
        m = inst.model()
        for flavor in FLAVORS:
            for coeff in ("Q", "Z"):
                d = compare_cone(m, flavor, coeff)
                tag = "%s %s %s" % (inst.name, flavor, coeff)
                if d:
                    txt = "; ".join("(%d,%d) engine=%s oracle=%s" % (p, q, a, b) for p, q, a, b in d)
                    lines.append((False, tag, txt))
                else:
                    lines.append((True, tag, ""))
    return lines


def suite_onedim(instances=None):
    lines = []
    insts = instances or ([corpus.random_onedim(s) for s in range(12)] +
                          [corpus.segment_inst(0), corpus.segment_inst(-1), corpus.triangle_cycle(0)])
    for inst in insts:
        m = inst.model()
        e = homology(m, variant="NONGM")
        d = _diff_groups(e.groups, onedim_nongm(m))
        lines.append((not d, "%s NONGM" % inst.name, _fmt_diffs(d)))
        e = homology(m, variant="GM")
        d = _diff_groups(e.groups, onedim_gm(m))
        lines.append((not d, "%s GM" % inst.name, _fmt_diffs(d)))
    return lines


def _tms_m(inst):
    name, _, arg = str(inst.perversity).partition(":")
    if name != "constant":
        raise ValidationError("tms instances need a constant perversity")
    return int(arg)


def suite_tms(instances=None):
    lines = []
    insts = instances or [i for m in (-1, 0, 1) for i in corpus.tms_pairs(m)]
    for inst in insts:
        m = inst.model()
        e = homology(m, variant="NONGM")
        d = _diff_groups(e.groups, tms_oracle(m, _tms_m(inst)))
        lines.append((not d, inst.name, _fmt_diffs(d)))
    return lines


def suite_duality(instances=None):
    lines = []
    insts = instances or ([i for m in (-1, 0, 1) for i in corpus.tms_pairs(m)] + [corpus.u31(0)])
    for inst in insts:
        rep = duality_check(inst.model(), "Q", "NONGM")
        lines.append((rep.ok, "%s NONGM" % inst.name, ", ".join("(%d,%d)" % k for k in rep.mismatches)))
    if instances is None:
        rep = duality_check(corpus.u31(0).model(), "Q", "GM")
        ok = (1, 1) in rep.mismatches
        lines.append((ok, "u31_p0 GM (expected mismatch)",
                      "mismatches at " + ", ".join("(%d,%d)" % k for k in rep.mismatches)))
    return lines


def _instance_suites(inst):
    m = inst.model()
    lines = []
    if inst.conical:
        lines += suite_cone([inst])
    if m.formal_dim == 1 and m.complex.max_dim == 1 and inst.filtration.kind != "pair":
        lines += suite_onedim([inst])
    if inst.filtration.kind == "pair" and m.compact and m.formal_dim == 1:
        lines += suite_tms([inst])
    if m.condition_C and (m.compact or m.conical):
        lines += suite_duality([inst])
    return lines


def cmd_oracle(args):
    if args.instance:
        lines = _instance_suites(load_instance(args.instance))
    else:
        suite = args.suite or "all"
        if suite not in SUITES:
            raise ValidationError("unknown suite %r (expected one of %s)" % (suite, ", ".join(SUITES)))
        runs = {"cone": suite_cone, "onedim": suite_onedim, "tms": suite_tms,
                "duality": suite_duality}
        lines = []
        for name in ("cone", "onedim", "tms", "duality"):
            if suite in (name, "all"):
                lines += runs[name]()
    for ok, tag, detail in lines:
        print(("PASS " if ok else "FAIL ") + tag + ((": " + detail) if detail and not ok else ""))
    bad = sum(1 for ok, _, _ in lines if not ok)
    print("%d checks, %d failed" % (len(lines), bad))
    return EXIT_MISMATCH if bad else EXIT_OK


# ---------------------------------------------------------------- info / validate

def cmd_info(args):
    inst = load_instance(args.instance)
    C = inst.complex
    m = inst.model()
    st = m.strat
    pmax = m.free_dim
    out = {
        "cells": [{"id": i, "dim": C.dim(i), "sedentarity": sorted(C.cell(i).sedentarity),
                   "stratum": st.cell_stratum[i],
                   "multitangent_ranks": [multitangent(C, i, p).rank for p in range(pmax + 1)]}
                  for i in C.ids()],
        "strata": [{"id": S.id, "formal_dim": S.formal_dim, "codim": S.codim,
                    "cells": sorted(S.cells), "perversity": m.pbar[S.id]} for S in st.strata],
        "formal_dim": m.formal_dim,
        "space": C.space,
        "compact": m.compact,
        "conical": m.conical,
        "truncation_radius": None if inst.truncation_radius is None else format_rational(inst.truncation_radius),
    }
    sys.stdout.write(canonical_json(out))
    return EXIT_OK


def cmd_validate(args):
    inst = load_instance(args.instance)
    rep = validate_complex(inst.complex)
    Stratification(inst.complex, inst.filtration)
    sys.stdout.write(canonical_json({"valid": rep["valid"], "violations": [str(v) for v in rep["violations"]]}))
    return EXIT_OK if rep["valid"] else EXIT_VALIDATION


# ---------------------------------------------------------------- entry point

def build_parser():
    ap = argparse.ArgumentParser(prog="tropih", description="Tropical intersection homology of polyhedral complexes.")
    ap.add_argument("--level", type=int, default=None, help="base subdivision level (default from TIH_SUBDIV_LEVEL)")
    sub = ap.add_subparsers(dest="command", required=True)

    h = sub.add_parser("homology", help="compute a homology table")
    h.add_argument("instance")
    h.add_argument("--p", default=None, help="p range, e.g. 0-2 or 0,1")
    h.add_argument("--q", default=None, help="q range")
    h.add_argument("--variant", choices=["gm", "nongm"], default="nongm")
    h.add_argument("--coeff", choices=["z", "q"], default="q")
    h.add_argument("--flavor", choices=["ih", "bm", "cohom", "cohom-c", "plain"], default="ih")
    h.add_argument("--rel", default=None, help="comma separated closed cell set; divide out X minus these")
    h.add_argument("--format", choices=["json", "table"], default="json")
    h.set_defaults(func=cmd_homology)

    o = sub.add_parser("oracle", help="compare the engine with closed-form predictions")
    o.add_argument("instance", nargs="?")
    o.add_argument("--suite", default=None)
    o.set_defaults(func=cmd_oracle)

    i = sub.add_parser("info", help="cells, strata, perversity and multi-tangent ranks")
    i.add_argument("instance")
    i.set_defaults(func=cmd_info)

    v = sub.add_parser("validate", help="check that the instance is a valid complex")
    v.add_argument("instance")
    v.set_defaults(func=cmd_validate)
    return ap


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_VALIDATION if e.code else EXIT_OK
    try:
        return args.func(args)
    except StabilizationFailure as e:
        print("stabilization failure: %s" % e, file=sys.stderr)
        return EXIT_STABILIZATION
    except UnsupportedInput as e:
        print("unsupported input: %s" % e, file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (ValidationError, OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as e:
        print("invalid input: %s" % e, file=sys.stderr)
        return EXIT_VALIDATION
    except TropIHError as e:
        print("error: %s" % e, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
