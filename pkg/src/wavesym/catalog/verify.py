"""Verification drivers that re-check every catalog entry mechanically."""

from __future__ import annotations

import random
import time
from fractions import Fraction

from ..deteq import ClassMember, is_symmetry
from ..equiv import equivalence_algebra_generator
from ..expr import (
    Expr,
    ZERO,
    add_list,
    const,
    differentiate,
    div,
    func,
    mul,
    neg,
    pow_,
    sub,
    substitute,
    sym,
)
from ..jets import EQUIV_COORDS, GEOMETRIC_COORDS, VectorField
from ..liealg import LieAlgebraSpan, NotClosed, closure_check, subspace_equal
from ..linalg import solve as linsolve
from ..parser import parse
from ..ptrans import (
    PointTransformation,
    pushforward_field,
    pushforward_theta,
    verify_admissible,
)
from ..sampling import Chart, ExactSampler
from ..solver import SolverConfig, solve_symmetries
from ..zerotest import is_zero
from .build import Catalog, load_catalog, param_binds_of

__all__ = [
    "CheckReport",
    "verify_case",
    "verify_family",
    "verify_additional_equivalence",
    "verify_additional_equivalences",
    "verify_subalgebra_entry",
    "verify_subalgebra_lists",
    "verify_special_subclass",
    "verify_singular_witness",
    "all_check_ids",
    "run_check",
    "verify_catalog",
]

_DT = VectorField(GEOMETRIC_COORDS, ("1", "0", "0"))
_CHART = Chart({"u": "+", "x": "+"})


class CheckReport:
    __slots__ = ("id", "citation", "verdict", "witness", "mode", "millis")

    def __init__(self, id, citation, verdict, witness=None, mode="exact", millis=0.0):
        self.id = id
        self.citation = citation
        self.verdict = bool(verdict)
        self.witness = witness
        self.mode = mode
        self.millis = millis

    def to_json(self):
        out = {
            "id": self.id,
            "citation": self.citation,
            "verdict": "PASS" if self.verdict else "FAIL",
            "mode": self.mode,
            "millis": round(self.millis, 2),
        }
        if self.witness is not None:
            out["witness"] = str(self.witness)
        return out

    def __repr__(self):
        tag = "PASS" if self.verdict else "FAIL"
        return f"[{tag}] {self.id} ({self.mode}, {self.millis:.0f} ms)"


def _timed(check_id, citation, fn):
    t0 = time.perf_counter()
    witness = None
    mode = "exact"
    try:
        result = fn()
        if isinstance(result, tuple):
            ok, mode = result
        else:
            ok = result
    except Exception as exc:  # verification failures carry the reason
        ok = False
        witness = f"{type(exc).__name__}: {exc}"
    ms = (time.perf_counter() - t0) * 1000
    return CheckReport(check_id, citation, ok, witness, mode, ms)


# ---------------------------------------------------------------------------
# classification cases


def verify_case(case, subcase, inst_index=None, probe=False, seed=0):
    """Invariance + closure of one sub-case under its default
    instantiations; optionally the solver maximality probe."""

    def run():
        mode = "exact"
        insts = subcase.defaults
        if inst_index is not None:
            insts = [insts[inst_index]]
        for inst in insts:
            theta = subcase.member(inst)
            fields = subcase.basis(inst)
            for q in fields:
                rep = is_symmetry(q, theta, seed=seed)
                if not rep.is_symmetry:
                    raise AssertionError(f"{subcase.id}: {q} fails on {theta}: {rep}")
                for v in list(rep.residuals) + [rep.criterion]:
                    if v.mode == "float":
                        mode = "float"
            for q in subcase.extra_slice(inst):
                rep = is_symmetry(q, theta, seed=seed)
                if not rep.is_symmetry:
                    raise AssertionError(f"{subcase.id}: slice field {q} fails: {rep}")
            span = LieAlgebraSpan(fields + [_DT], seed=seed, chart=theta.chart)
            cc = closure_check(span)
            if isinstance(cc, NotClosed):
                raise AssertionError(f"{subcase.id}: basis not closed: {cc}")
        if probe and case.probe is not None:
            _run_probe(case, subcase, seed)
        return True, mode

    cid = f"case:{subcase.id}" + ("" if inst_index is None else f"#{inst_index}")
    return _timed(cid, case.citation, run)


def _run_probe(case, subcase, seed=0):
    pr = case.probe
    inst = subcase.defaults[pr["inst"]]
    theta = subcase.member(inst)
    cfg = SolverConfig(seed=seed, extra_basis=tuple(pr.get("extra_basis", ())))
    res = solve_symmetries(theta, pr["degree"], cfg)
    if res.dimension != pr["expect_dim"]:
        raise AssertionError(
            f"{subcase.id}: solver found dimension {res.dimension}, "
            f"documented {pr['expect_dim']}"
        )
    documented = LieAlgebraSpan(
        subcase.basis(inst) + [_DT], seed=seed, chart=theta.chart
    )
    if not subspace_equal(res.span, documented):
        raise AssertionError(f"{subcase.id}: solver span differs from documented span")


# ---------------------------------------------------------------------------
# transformation families


def verify_family(family, instance, seed=0):
    def run():
        theta = instance.source()
        target = instance.target()
        phi = instance.map()
        rep = verify_admissible(theta, phi, target, chart=family.chart, seed=seed)
        if not rep.verified:
            raise AssertionError(f"{family.id}: failures {rep.failures()}: {rep.to_json()}")
        if family.mode == "exact" and rep.mode != "exact":
            raise AssertionError(f"{family.id}: expected exact-mode verification")
        return True, rep.mode

    label = ",".join(f"{k}={v}" for k, v in sorted(instance.inst.items()))
    return _timed(f"family:{family.id}({label})", family.citation, run)


# ---------------------------------------------------------------------------
# additional equivalences


def _arrow_map(catalog, arrow):
    fam = catalog.family(arrow["family"])
    inst_binds = dict(arrow["source"][1])
    inst = fam.instance(**inst_binds)
    phi = inst.map()
    if arrow.get("flip_u"):
        flip = PointTransformation("t", "x", "-u", inverse=PointTransformation("t", "x", "-u", check=False), check=False)
        phi = phi.compose_with(flip)
    return phi


def verify_additional_equivalence(catalog, arrow, seed=0):
    """Check that the family map sends the instantiated source case to the
    instantiated target case.

    The admissibility residuals determine the target elements uniquely
    (their coefficients are nonzero on the chart), so verifying the triple
    (source, map, expected target) is equivalent to pushing the source
    forward and comparing, without composing with the map's inverse.
    """

    def run():
        src_case = catalog.case(arrow["source"][0])
        tgt_case = catalog.case(arrow["target"][0])
        theta = _case_member(src_case, arrow["source"][1])
        expected = _case_member(tgt_case, arrow["target"][1])
        phi = _arrow_map(catalog, arrow)
        fam = catalog.family(arrow["family"])
        rep = verify_admissible(theta, phi, expected, chart=fam.chart, seed=seed)
        if not rep.verified:
            raise AssertionError(f"{arrow['id']}: failures {rep.failures()}")
        return True, rep.mode

    return _timed(
        f"addequiv:{arrow['id']}",
        f"additional equivalence {arrow['id']}",
        run,
    )


def _case_member(case, binds) -> ClassMember:
    from .build import _instantiate_expr

    f = _instantiate_expr(case.f_template, case.slots, binds)
    g = _instantiate_expr(case.g_template, case.slots, binds)
    return ClassMember(f, g, chart=case.chart)


def verify_additional_equivalences(catalog=None, seed=0):
    catalog = catalog or load_catalog()
    return [
        verify_additional_equivalence(catalog, a, seed=seed)
        for a in catalog.additional_equivalences
    ]


# ---------------------------------------------------------------------------
# subalgebras of the essential equivalence algebra


def _build_generator(terms, binds):
    out = VectorField.zero(EQUIV_COORDS)
    for kind, coeff, param in terms:
        c = substitute(parse(str(coeff)), binds)
        if c.kind != 0:
            raise AssertionError(f"coefficient {coeff} not rational under {binds}")
        if c.data == 0:
            continue
        p = substitute(parse(str(param)), binds) if param is not None else None
        gen = equivalence_algebra_generator(kind, p)
        out = out + gen.scale(c.data)
    return out


def _span_fields(entry, sample):
    binds = param_binds_of({k: v for k, v in sample.items() if k != "case_inst"})
    fields = [_build_generator(terms, binds) for terms in entry["generators"]]
    return [f for f in fields if not f.is_zero()]


def _intersection_violations(fields, seed=0):
    """Check the two intersection constraints on a candidate span.

    Returns a list of violated constraint names.  A combo lies in the
    span of the u-scaling and shift generators iff its (t, x, f) components
    vanish; in the span of the time scaling iff its (x, u) components do.
    """
    out = []
    for name, comp_idx in (("Du+Z", (0, 1, 3)), ("Dt", (1, 2))):
        exprs = [f.comps[i] for f in fields for i in comp_idx]
        sampler = ExactSampler(exprs, _CHART)
        if sampler.float_only:
            raise AssertionError("subalgebra components must be exactly sampleable")
        rng = random.Random(seed)
        k = len(comp_idx)
        cols = [[] for _ in fields]
        got = 0
        while got < 3 * len(fields) + 4:
            _, values = sampler.draw(rng)
            row = sampler.eval_row(values)
            if row is None:
                continue
            for i in range(len(fields)):
                cols[i].extend(row[i * k : (i + 1) * k])
            got += 1
        from ..linalg import nullspace

        ker = nullspace(list(map(list, zip(*cols))))
        for vec in ker:
            combo = VectorField.zero(EQUIV_COORDS)
            for f, c in zip(fields, vec):
                if c:
                    combo = combo + f.scale(c)
            if all(
                is_zero(combo.comps[i], chart=_CHART, seed=seed).is_zero
                for i in comp_idx
            ) and not combo.is_zero():
                out.append(name)
                break
    return out


def verify_subalgebra_entry(catalog, entry, seed=0):
    def run():
        case = catalog.case(entry["case"])
        for sample in entry["samples"]:
            fields = _span_fields(entry, sample)
            span = LieAlgebraSpan(fields, seed=seed, chart=_CHART)
            cc = closure_check(span)
            if isinstance(cc, NotClosed):
                raise AssertionError(f"{entry['id']}: span not closed: {cc}")
            bad = _intersection_violations(fields, seed=seed)
            if bad:
                raise AssertionError(f"{entry['id']}: intersection constraints violated: {bad}")
            # projection correspondence with the classification case
            case_inst = dict(sample.get("case_inst", {}))
            scase = case.subcases[0]
            for sc in case.subcases:
                if all(case_inst.get(k) == v for k, v in sc.assign.items()):
                    scase = sc
                    break
            inst = dict(scase.defaults[0])
            inst.update(case_inst)
            proj = [
                VectorField(GEOMETRIC_COORDS, f.comps[:3]) for f in fields
            ]
            left = LieAlgebraSpan(proj + [_DT], seed=seed, chart=_CHART)
            right = LieAlgebraSpan(scase.basis(inst) + [_DT], seed=seed, chart=_CHART)
            if not subspace_equal(left, right):
                raise AssertionError(
                    f"{entry['id']}: projection does not match case {case.id} basis"
                )
        return True

    return _timed(f"subalgebra:{entry['id']}", f"subalgebra list entry {entry['id']}", run)


def verify_forbidden_entry(entry, seed=0):
    def run():
        binds = {}
        fields = [_build_generator(terms, binds) for terms in entry["generators"]]
        bad = _intersection_violations(fields, seed=seed)
        if not bad:
            raise AssertionError(f"{entry['id']}: expected an intersection violation")
        return True

    return _timed(
        f"subalgebra:{entry['id']}", "intersection-constraint negative control", run
    )


def verify_subalgebra_lists(catalog=None, seed=0):
    catalog = catalog or load_catalog()
    out = [verify_subalgebra_entry(catalog, e, seed=seed) for e in catalog.subalgebras]
    out += [verify_forbidden_entry(e, seed=seed) for e in catalog.forbidden_subalgebras]
    return out


# ---------------------------------------------------------------------------
# the special subclass u_tt = eps u^-4 u_xx + mu(x) u^-3 + sigma u


def _special_member(eps, sigma, mu_body) -> ClassMember:
    mu = substitute(parse(mu_body), {"w": sym("x")})
    f = mul(const(eps), pow_(sym("u"), const(-4)))
    g = add_list([mul(mu, pow_(sym("u"), const(-3))), mul(const(sigma), sym("u"))])
    return ClassMember(f, g)


def _kernel_fields(catalog, sigma):
    return [
        VectorField(GEOMETRIC_COORDS, comps)
        for comps in catalog.special_kernels[sigma]
    ]


def verify_special_subclass(catalog=None, seed=0):
    """Kernel algebras of the special subclass, their conjugation to the
    time-rational case, and the normalized-subclass group action."""
    catalog = catalog or load_catalog()
    reports = []

    def kernels():
        for sigma in (0, 1, -1):
            fields = _kernel_fields(catalog, sigma)
            for mu_body in catalog.special_mu_samples:
                for eps in (1, -1):
                    theta = _special_member(eps, sigma, mu_body)
                    for q in fields:
                        if not is_symmetry(q, theta, seed=seed).is_symmetry:
                            raise AssertionError(
                                f"sigma={sigma}, mu={mu_body}: {q} is not a symmetry"
                            )
            span = LieAlgebraSpan(fields, seed=seed)
            if isinstance(closure_check(span), NotClosed):
                raise AssertionError(f"kernel for sigma={sigma} not closed")
        return True

    reports.append(_timed("special:kernels", "special-subclass kernel algebras", kernels))

    def conjugation():
        maps = {
            1: PointTransformation(
                "1/2*exp(2*t)", "x", "exp(t)*u",
                inverse=PointTransformation("1/2*ln(2*t)", "x", "u*(2*t)^(-1/2)", check=False),
                check=False,
            ),
            -1: PointTransformation(
                "tan(t)", "x", "u/cos(t)",
                inverse=PointTransformation("arctan(t)", "x", "u*(1+t^2)^(-1/2)", check=False),
                check=False,
            ),
        }
        target = LieAlgebraSpan(_kernel_fields(catalog, 0), seed=seed)
        for sigma in (1, -1):
            pushed = [pushforward_field(maps[sigma], q) for q in _kernel_fields(catalog, sigma)]
            got = LieAlgebraSpan(pushed, seed=seed)
            if not subspace_equal(got, target):
                raise AssertionError(f"kernel for sigma={sigma} does not conjugate onto sigma=0")
        return True

    reports.append(
        _timed("special:conjugation", "kernel conjugation onto the rational-time case", conjugation)
    )

    def normalized():
        for sample in catalog.special_normalized_samples:
            a0, a1, a2, a3 = (Fraction(v) for v in sample["a"])
            b0, b1 = (Fraction(v) for v in sample["b"])
            det = a1 * a2 - a0 * a3
            if det <= 0 or b1 <= 0:
                raise AssertionError("sample must have positive determinant and b1")
            t, x, u = sym("t"), sym("x"), sym("u")
            T = div(add_list([mul(const(a1), t), const(a0)]), add_list([mul(const(a3), t), const(a2)]))
            X = add_list([mul(const(b1), x), const(b0)])
            T_t = differentiate(T, "t")
            U = mul(pow_(div(T_t, const(b1)), const(Fraction(1, 2))), u)
            phi = PointTransformation(T, X, U, check=False)
            Xi = div(sub(x, const(b0)), const(b1))
            for mu_body in catalog.special_mu_samples:
                theta = _special_member(1, 0, mu_body)
                # the residual system pins the target uniquely, so checking
                # the claimed target is equivalent to pushing forward
                mu_t = substitute(parse(mu_body), {"w": Xi})
                expected = ClassMember(
                    theta.f,
                    mul(pow_(const(b1), const(-2)), mu_t, pow_(sym("u"), const(-3))),
                )
                rep = verify_admissible(theta, phi, expected, seed=seed)
                if not rep.verified:
                    raise AssertionError(
                        f"normalized-subclass action mismatch for mu={mu_body}: "
                        f"{rep.failures()}"
                    )
        return True

    reports.append(
        _timed("special:normalized", "normalized-subclass group action on mu", normalized)
    )
    return reports


# ---------------------------------------------------------------------------
# singular witnesses


_PROBE_DEGREE = 4


def verify_singular_witness(catalog, case, seed=0):
    """No equivalence-generator combination (over the documented probe
    slice) projects onto the witness field while leaving the member's
    arbitrary elements invariant."""

    def run():
        subcase = case.subcases[0]
        inst = subcase.defaults[0]
        theta = subcase.member(inst)
        w = subcase.basis(inst)[case.singular_witness]
        gens = [equivalence_algebra_generator("Pt")]
        gens.append(equivalence_algebra_generator("Dt"))
        gens.append(equivalence_algebra_generator("Du"))
        xs = sym("x")
        for k in range(_PROBE_DEGREE + 1):
            gens.append(equivalence_algebra_generator("D", pow_(xs, const(k))))
            gens.append(equivalence_algebra_generator("Z", pow_(xs, const(k))))
        # linear conditions on combo coefficients: projection matches w and
        # the member stays invariant
        coeffs = [sym(f"_s{i}") for i in range(len(gens))]
        combo = [
            add_list([mul(c, g.comps[i]) for c, g in zip(coeffs, gens)])
            for i in range(5)
        ]
        f, g = theta.f, theta.g
        conds = [sub(combo[0], w.comps[0]), sub(combo[1], w.comps[1]), sub(combo[2], w.comps[2])]
        on_theta = {"f": f, "g": g}
        r_f = sub(
            add_list([mul(combo[1], differentiate(f, "x")), mul(combo[2], differentiate(f, "u"))]),
            substitute(combo[3], on_theta),
        )
        r_g = sub(
            add_list([mul(combo[1], differentiate(g, "x")), mul(combo[2], differentiate(g, "u"))]),
            substitute(combo[4], on_theta),
        )
        conds += [r_f, r_g]
        # assemble the inhomogeneous exact system and try to solve it
        col_exprs = []
        rhs_exprs = []
        zero_binds = {c.data: ZERO for c in coeffs}
        for cond in conds:
            rhs_exprs.append(neg(substitute(cond, zero_binds)))
            col_exprs.append([differentiate(cond, c.data) for c in coeffs])
        flat = [e for row in col_exprs for e in row] + rhs_exprs
        sampler = ExactSampler(flat, theta.chart)
        if sampler.float_only:
            raise AssertionError("witness check requires exact sampling")
        rng = random.Random(seed)
        rows = []
        rhs = []
        got = 0
        n = len(coeffs)
        while got < 3 * n + 6:
            _, values = sampler.draw(rng)
            vals = sampler.eval_row(values)
            if vals is None:
                continue
            m = len(conds)
            for ci in range(m):
                rows.append(vals[ci * n : (ci + 1) * n])
                rhs.append(vals[len(conds) * n + ci])
            got += 1
        x = linsolve(rows, rhs)
        if x is not None:
            # a candidate combo exists; believe it only if symbolic
            combo_field = VectorField.zero(EQUIV_COORDS)
            for gen, c in zip(gens, x):
                if c:
                    combo_field = combo_field + gen.scale(c)
            checks = [
                sub(combo_field.comps[i], w.comps[i]) for i in range(3)
            ]
            if all(is_zero(e, chart=theta.chart, seed=seed).is_zero for e in checks):
                raise AssertionError(
                    f"{case.id}: witness field is a projection of an equivalence combo"
                )
        return True

    return _timed(
        f"singular:{case.id}",
        f"singular-extension witness for case {case.id}",
        run,
    )


# ---------------------------------------------------------------------------
# whole-catalog driver


def all_check_ids(catalog=None):
    catalog = catalog or load_catalog()
    ids = []
    for case, sc in catalog.subcases():
        ids.append(f"case:{sc.id}")
    for fid, fam in catalog.families.items():
        for inst in fam.instances():
            label = ",".join(f"{k}={v}" for k, v in sorted(inst.inst.items()))
            ids.append(f"family:{fid}({label})")
    for a in catalog.additional_equivalences:
        ids.append(f"addequiv:{a['id']}")
    for e in catalog.subalgebras:
        ids.append(f"subalgebra:{e['id']}")
    for e in catalog.forbidden_subalgebras:
        ids.append(f"subalgebra:{e['id']}")
    for cid, case in catalog.cases.items():
        if not case.regular and case.singular_witness is not None:
            ids.append(f"singular:{cid}")
    ids += ["special:kernels", "special:conjugation", "special:normalized"]
    return ids


def run_check(check_id, seed=0, probe=False):
    """Run one named check; used by the CLI worker pool."""
    catalog = load_catalog()
    kind, _, rest = check_id.partition(":")
    if kind == "case":
        sid = rest
        for case, sc in catalog.subcases():
            if sc.id == sid:
                return verify_case(case, sc, probe=probe, seed=seed)
        raise KeyError(check_id)
    if kind == "family":
        fid, _, label = rest.partition("(")
        fam = catalog.family(fid)
        for inst in fam.instances():
            l = ",".join(f"{k}={v}" for k, v in sorted(inst.inst.items()))
            if l == label.rstrip(")"):
                return verify_family(fam, inst, seed=seed)
        raise KeyError(check_id)
    if kind == "addequiv":
        for a in catalog.additional_equivalences:
            if a["id"] == rest:
                return verify_additional_equivalence(catalog, a, seed=seed)
        raise KeyError(check_id)
    if kind == "subalgebra":
        for e in catalog.subalgebras:
            if e["id"] == rest:
                return verify_subalgebra_entry(catalog, e, seed=seed)
        for e in catalog.forbidden_subalgebras:
            if e["id"] == rest:
                return verify_forbidden_entry(e, seed=seed)
        raise KeyError(check_id)
    if kind == "singular":
        return verify_singular_witness(catalog, catalog.case(rest), seed=seed)
    if kind == "special":
        reports = {r.id: r for r in verify_special_subclass(catalog, seed=seed)}
        return reports[check_id]
    raise KeyError(check_id)


def verify_catalog(seed=0, probe=False, jobs=None, check_ids=None):
    """Run every catalog check; returns the list of reports sorted by id."""
    ids = check_ids or all_check_ids()
    if jobs is not None and jobs > 1:
        import concurrent.futures as cf

        with cf.ProcessPoolExecutor(max_workers=jobs) as ex:
            futs = {ex.submit(run_check, i, seed, probe): i for i in ids}
            reports = [f.result() for f in cf.as_completed(futs)]
    else:
        reports = [run_check(i, seed=seed, probe=probe) for i in ids]
    return sorted(reports, key=lambda r: r.id)
