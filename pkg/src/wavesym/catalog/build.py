"""Catalog object model: cases, sub-cases, transformation families, and
instantiation of their templates into concrete members, fields and maps."""

from __future__ import annotations

from fractions import Fraction

from ..deteq import ClassMember
from ..expr import Expr, ExprError, const, substitute
from ..jets import GEOMETRIC_COORDS, VectorField
from ..parser import parse
from ..ptrans import PointTransformation
from ..sampling import Chart
from . import data

__all__ = [
    "Catalog",
    "CatalogCase",
    "SubCase",
    "TransformationFamily",
    "load_catalog",
]


def _bind_params(binds: dict) -> dict:
    out = {}
    for k, v in binds.items():
        if isinstance(v, str) and not _is_rational(v):
            continue  # slot body, handled separately
        out[k] = const(Fraction(v)) if not isinstance(v, Expr) else v
    return out


def _is_rational(s: str) -> bool:
    try:
        Fraction(s)
        return True
    except ValueError:
        return False


def _instantiate_expr(template: str, slots: dict, binds: dict) -> Expr:
    """Substitute rational parameters and slot bodies into a template."""
    e = parse(template)
    param_binds = {}
    slot_binds = {}
    for k, v in binds.items():
        if k in slots:
            arg = substitute(parse(slots[k]), param_binds_of(binds))
            slot_binds[k] = substitute(parse(str(v)), {"w": arg})
        else:
            param_binds[k] = const(Fraction(v))
    e = substitute(e, {**param_binds, **slot_binds})
    return e


def param_binds_of(binds: dict) -> dict:
    out = {}
    for k, v in binds.items():
        if isinstance(v, (int, Fraction)) or (isinstance(v, str) and _is_rational(v)):
            out[k] = const(Fraction(v))
    return out


class SubCase:
    """One of the 45 classification sub-cases: a row with its discrete
    parameters fixed."""

    def __init__(self, case, spec):
        self.case = case
        self.id = spec["id"]
        self.assign = dict(spec["assign"])
        self.defaults = [dict(self.assign, **d) for d in spec["defaults"]]
        self.slice_fields = spec.get("slice", [])

    def member(self, inst: dict) -> ClassMember:
        binds = dict(self.assign, **inst)
        f = _instantiate_expr(self.case.f_template, self.case.slots, binds)
        g = _instantiate_expr(self.case.g_template, self.case.slots, binds)
        return ClassMember(f, g, chart=self.case.chart)

    def basis(self, inst: dict):
        binds = param_binds_of(dict(self.assign, **inst))
        fields = []
        for comps in self.case.basis_templates:
            fields.append(
                VectorField(
                    GEOMETRIC_COORDS,
                    tuple(substitute(parse(c), binds) for c in comps),
                )
            )
        return fields

    def extra_slice(self, inst: dict):
        binds = param_binds_of(dict(self.assign, **inst))
        return [
            VectorField(
                GEOMETRIC_COORDS, tuple(substitute(parse(c), binds) for c in comps)
            )
            for comps in self.slice_fields
        ]


class CatalogCase:
    """A Table row: arbitrary-element templates plus extension basis."""

    def __init__(self, cid, spec):
        self.id = cid
        self.f_template = spec["f"]
        self.g_template = spec["g"]
        self.slots = dict(spec.get("slots", {}))
        self.basis_templates = list(spec["basis"])
        self.constraints = spec.get("constraints", "")
        self.regular = spec["regular"]
        self.singular_witness = spec.get("singular_witness")
        self.probe = spec.get("probe")
        self.chart = Chart({"u": "+", "x": "+"})
        self.subcases = [SubCase(self, s) for s in spec["subcases"]]
        self.citation = f"classification case {cid}"

    def subcase(self, sid: str) -> SubCase:
        for s in self.subcases:
            if s.id == sid:
                return s
        raise KeyError(sid)

    @property
    def extension_basis(self):
        return self.basis_templates


class FamilyInstance:
    """A concrete admissible transformation drawn from a family."""

    def __init__(self, family, inst):
        self.family = family
        self.inst = dict(inst)

    def _binds(self):
        return self.inst

    def source(self) -> ClassMember:
        f = _instantiate_expr(self.family.source_t[0], self.family.slots, self.inst)
        g = _instantiate_expr(self.family.source_t[1], self.family.slots, self.inst)
        return ClassMember(f, g, chart={"u": "+", "x": "+"})

    def target(self) -> ClassMember:
        f = _instantiate_expr(self.family.target_t[0], self.family.slots, self.inst)
        g = _instantiate_expr(self.family.target_t[1], self.family.slots, self.inst)
        return ClassMember(f, g, chart={"u": "+", "x": "+"})

    def map(self, check=False) -> PointTransformation:
        fam = self.family
        if fam.id == "T9":
            idx = int(self.inst["index"])
            rec = fam.spec["instances"][idx]
            comps = [parse(c) for c in rec["map"]]
            inv = None
            if "inverse" in rec:
                inv = PointTransformation(*(parse(c) for c in rec["inverse"]), check=False)
            return PointTransformation(*comps, inverse=inv, check=check, chart=fam.chart)
        binds = param_binds_of(self.inst)
        comps = [substitute(parse(c), binds) for c in fam.map_t]
        inv = None
        if fam.inverse_t is not None:
            icomps = [substitute(parse(c), binds) for c in fam.inverse_t]
            inv = PointTransformation(*icomps, check=False)
        return PointTransformation(*comps, inverse=inv, check=check, chart=fam.chart)

    def member_binds(self):
        if self.family.id == "T9":
            idx = int(self.inst["index"])
            rec = self.family.spec["instances"][idx]
            return {k: v for k, v in rec.items() if k not in ("map", "inverse")}
        return self.inst


class TransformationFamily:
    def __init__(self, fid, spec):
        self.id = fid
        self.spec = spec
        self.slots = dict(spec.get("slots", {}))
        self.source_t = spec["source"]
        self.target_t = spec["target"]
        self.map_t = spec.get("map")
        self.inverse_t = spec.get("inverse")
        self.mode = spec.get("mode", "exact")
        ch = spec.get("chart", {})
        self.chart = Chart(ch.get("signs", {}), ch.get("box", {}))
        self.defaults = list(spec["defaults"])
        self.citation = f"transformation family {fid}"

    def instances(self):
        out = []
        for d in self.defaults:
            inst = dict(d)
            if self.id == "T9":
                rec = self.spec["instances"][int(inst["index"])]
                inst.update({k: v for k, v in rec.items() if k not in ("map", "inverse")})
            out.append(FamilyInstance(self, inst))
        return out

    def instance(self, **binds) -> FamilyInstance:
        return FamilyInstance(self, binds)


class Catalog:
    """The full built-in catalog."""

    def __init__(self):
        self.cases = {cid: CatalogCase(cid, spec) for cid, spec in data.CASES.items()}
        self.families = {
            fid: TransformationFamily(fid, spec) for fid, spec in data.FAMILIES.items()
        }
        self.additional_equivalences = list(data.ADDITIONAL_EQUIVALENCES)
        self.subalgebras = list(data.SUBALGEBRAS)
        self.forbidden_subalgebras = list(data.FORBIDDEN_SUBALGEBRAS)
        self.special_kernels = dict(data.SPECIAL_KERNELS)
        self.special_mu_samples = list(data.SPECIAL_MU_SAMPLES)
        self.special_normalized_samples = list(data.SPECIAL_NORMALIZED_SAMPLES)
        self.regular_cases = tuple(data.REGULAR_CASES)

    def case(self, cid: str) -> CatalogCase:
        return self.cases[cid]

    def family(self, fid: str) -> TransformationFamily:
        return self.families[fid]

    def subcases(self):
        for case in self.cases.values():
            for sc in case.subcases:
                yield case, sc

    @property
    def n_subcases(self):
        return sum(len(c.subcases) for c in self.cases.values())

    def to_json(self) -> dict:
        return {
            "cases": {
                cid: {
                    "f": c.f_template,
                    "g": c.g_template,
                    "slots": c.slots,
                    "basis": [list(b) for b in c.basis_templates],
                    "constraints": c.constraints,
                    "regular": c.regular,
                    "citation": c.citation,
                    "subcases": [
                        {"id": s.id, "assign": {k: str(v) for k, v in s.assign.items()},
                         "defaults": [{k: str(v) for k, v in d.items()} for d in s.defaults]}
                        for s in c.subcases
                    ],
                }
                for cid, c in self.cases.items()
            },
            "families": {
                fid: {
                    "source": list(f.source_t),
                    "target": list(f.target_t),
                    "map": list(f.map_t) if f.map_t else None,
                    "inverse": list(f.inverse_t) if f.inverse_t else None,
                    "mode": f.mode,
                    "citation": f.citation,
                    "defaults": [{k: str(v) for k, v in d.items()} for d in f.defaults],
                }
                for fid, f in self.families.items()
            },
            "additional_equivalences": [
                {
                    "id": a["id"],
                    "family": a["family"],
                    "source": [a["source"][0], {k: str(v) for k, v in a["source"][1].items()}],
                    "target": [a["target"][0], {k: str(v) for k, v in a["target"][1].items()}],
                    "flip_u": bool(a.get("flip_u")),
                }
                for a in self.additional_equivalences
            ],
            "subalgebras": self.subalgebras,
            "counts": {
                "cases": self.n_subcases,
                "rows": len(self.cases),
                "families": len(self.families),
                "additional_equivalences": len(self.additional_equivalences),
            },
        }


_catalog = None


def load_catalog() -> Catalog:
    global _catalog
    if _catalog is None:
        _catalog = Catalog()
    return _catalog
