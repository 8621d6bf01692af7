"""Instance files: a complex with its filtration, perversity and flags, as JSON."""

import json

from .errors import ValidationError
from .ic_engine import Model
from .polyhedral_core import FaceComplex, format_rational, parse_rational
from .stratification import Filtration, face_filtration, pair_filtration, trop_filtration

VERSION = 1


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _filtration(C, spec):
    if spec is None or spec == "trop":
        return trop_filtration(C)
    if spec == "face":
        return face_filtration(C)
    if isinstance(spec, dict):
        if "pair" in spec:
            return pair_filtration(C, [int(i) for i in spec["pair"]])
        if "levels" in spec:
            return Filtration(C, [[int(i) for i in lev] for lev in spec["levels"]])
    raise ValidationError("unknown filtration spec %r" % (spec,))


def _filtration_spec(F, spec):
    if isinstance(spec, str):
        return spec
    if F.kind == "pair":
        return {"pair": sorted(F.open_set)}
    return {"levels": [sorted(l) for l in F.levels]}


class Instance:
    def __init__(self, complex_, filtration="trop", perversity="zero", conical=False,
                 cone_point=None, condition_C_asserted=False, truncation_radius=None,
                 name=None, expected=None, provenance=None):
        self.complex = complex_
        self.filtration_spec = filtration
        self.filtration = _filtration(complex_, filtration)
        self.perversity = perversity
        self.conical = bool(conical)
        self.cone_point = cone_point
        self.condition_C_asserted = bool(condition_C_asserted)
        self.truncation_radius = (None if truncation_radius is None
                                  else parse_rational(truncation_radius))
        self.name = name
        self.expected = expected
        self.provenance = provenance

    def model(self):
        cc = True if self.condition_C_asserted else None
        return Model(self.complex, self.filtration, self.perversity, self.truncation_radius,
                     self.conical, self.cone_point, cc)

    def to_json(self):
        flags = {
            "conical": self.conical,
            "condition_C_asserted": self.condition_C_asserted,
            "truncation_radius": (None if self.truncation_radius is None
                                  else format_rational(self.truncation_radius)),
        }
        if self.cone_point is not None:
            flags["cone_point"] = self.cone_point
        out = {
            "version": VERSION,
            "complex": self.complex.to_json(),
            "filtration": _filtration_spec(self.filtration, self.filtration_spec),
            "perversity": self.perversity,
            "flags": flags,
        }
        if self.name is not None:
            out["name"] = self.name
        if self.expected is not None:
            out["expected"] = self.expected
        if self.provenance is not None:
            out["provenance"] = self.provenance
        return out

    @classmethod
    def from_json(cls, d):
        if not isinstance(d, dict) or "complex" not in d:
            raise ValidationError("instance must be an object with a 'complex' entry")
        v = d.get("version", VERSION)
        if v != VERSION:
            raise ValidationError("unsupported instance version %r" % (v,))
        flags = d.get("flags", {}) or {}
        C = FaceComplex.from_json(d["complex"])
        return cls(C, d.get("filtration", "trop"), d.get("perversity", "zero"),
                   flags.get("conical", False), flags.get("cone_point"),
                   flags.get("condition_C_asserted", False), flags.get("truncation_radius"),
                   d.get("name"), d.get("expected"), d.get("provenance"))


def load_instance(path):
    try:
        with open(path) as fh:
            d = json.load(fh)
    except json.JSONDecodeError as e:
        raise ValidationError("malformed JSON in %s: %s" % (path, e))
    return Instance.from_json(d)


def dump_instance(inst, path):
    with open(path, "w") as fh:
        fh.write(canonical_json(inst.to_json()))
