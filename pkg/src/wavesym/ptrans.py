"""Point transformations of (t,x,u), admissible-transformation
verification, push-forward of class members and of vector fields, and the
groupoid operations (composition, units, inverses)."""

from __future__ import annotations

import json

from .deteq import ClassMember, MemberError
from .expr import (
    Expr,
    ExprError,
    ZERO,
    add_list,
    const,
    differentiate,
    mul,
    neg,
    pow_,
    sub,
    substitute,
    sym,
)
from .jets import GEOMETRIC_COORDS, VectorField
from .parser import parse
from .sampling import Chart
from .zerotest import ZeroVerdict, is_zero

__all__ = [
    "PointTransformation",
    "AdmissibleTransformation",
    "AdmissibilityReport",
    "NotAdmissible",
    "verify_admissible",
    "pushforward_theta",
    "pushforward_field",
    "compose_admissible",
    "invert_admissible",
    "identity_transformation",
    "identity_at",
    "raw_identity_residual",
]


class NotAdmissible(ExprError):
    pass


def _expr(v) -> Expr:
    return v if isinstance(v, Expr) else parse(str(v))


class PointTransformation:
    """Map (t,x,u) -> (T,X,U); the optional inverse is written in the same
    symbols, read as the target coordinates."""

    __slots__ = ("T", "X", "U", "inverse")

    def __init__(self, T, X, U, inverse=None, check=True, chart=None):
        self.T = _expr(T)
        self.X = _expr(X)
        self.U = _expr(U)
        if inverse is not None and not isinstance(inverse, PointTransformation):
            inverse = PointTransformation(*inverse, check=False)
        self.inverse = inverse
        if inverse is not None and inverse.inverse is None:
            inverse.inverse = self
        if check:
            self._check(chart)

    def _check(self, chart):
        chart = chart or Chart()
        jac = _det3(
            [
                [differentiate(c, v) for v in GEOMETRIC_COORDS]
                for c in (self.T, self.X, self.U)
            ]
        )
        verdict = is_zero(jac, chart=chart)
        if verdict.is_zero:
            raise NotAdmissible(f"Jacobian {jac} vanishes on the chart")
        if self.inverse is not None:
            comp = self.compose_with(self.inverse)  # self after inverse: id
            for got, want in zip((comp.T, comp.X, comp.U), ("t", "x", "u")):
                if not is_zero(sub(got, sym(want)), chart=chart).is_zero:
                    raise NotAdmissible(
                        f"stored inverse fails round-trip: {want} -> {got}"
                    )

    def apply_point(self, e: Expr) -> Expr:
        """Substitute (t,x,u) -> (T,X,U) into an expression."""
        return substitute(e, {"t": self.T, "x": self.X, "u": self.U})

    def compose_with(self, first: "PointTransformation") -> "PointTransformation":
        """self ∘ first: apply `first`, then self."""
        inv = None
        if self.inverse is not None and first.inverse is not None:
            inv = PointTransformation(
                first.inverse.apply_point(self.inverse.T),
                first.inverse.apply_point(self.inverse.X),
                first.inverse.apply_point(self.inverse.U),
                check=False,
            )
        return PointTransformation(
            first.apply_point(self.T),
            first.apply_point(self.X),
            first.apply_point(self.U),
            inverse=inv,
            check=False,
        )

    def to_json(self) -> dict:
        out = {"T": str(self.T), "X": str(self.X), "U": str(self.U)}
        if self.inverse is not None:
            out["inverse"] = {
                "T": str(self.inverse.T),
                "X": str(self.inverse.X),
                "U": str(self.inverse.U),
            }
        return out

    @classmethod
    def from_json(cls, data, check=True):
        if isinstance(data, str):
            data = json.loads(data)
        inv = data.get("inverse")
        inverse = None
        if inv is not None:
            inverse = cls(inv["T"], inv["X"], inv["U"], check=False)
        return cls(data["T"], data["X"], data["U"], inverse=inverse, check=check)

    def __repr__(self):
        return f"PointTransformation(T={self.T}, X={self.X}, U={self.U})"


def identity_transformation() -> PointTransformation:
    t, x, u = sym("t"), sym("x"), sym("u")
    inv = PointTransformation(t, x, u, check=False)
    return PointTransformation(t, x, u, inverse=inv, check=False)


def _det3(m):
    return add_list(
        [
            mul(m[0][0], sub(mul(m[1][1], m[2][2]), mul(m[1][2], m[2][1]))),
            neg(mul(m[0][1], sub(mul(m[1][0], m[2][2]), mul(m[1][2], m[2][0])))),
            mul(m[0][2], sub(mul(m[1][0], m[2][1]), mul(m[1][1], m[2][0]))),
        ]
    )


class AdmissibilityReport:
    """Per-condition verdicts of the admissible-transformation system."""

    ORDER = (
        "fiber_preserving_T",
        "fiber_preserving_X",
        "U_affine",
        "nondegenerate",
        "regular_chart",
        "eq_3_7",
        "eq_3_8",
        "eq_3_10",
        "eq_3_11",
        "eq_3_12",
    )

    def __init__(self):
        self.conditions: dict = {}

    def record(self, name, verdict_ok, detail=None):
        self.conditions[name] = (bool(verdict_ok), detail)

    @property
    def verified(self):
        return all(ok for ok, _ in self.conditions.values())

    @property
    def mode(self):
        for _, detail in self.conditions.values():
            if isinstance(detail, ZeroVerdict) and detail.mode == "float":
                return "float"
        return "exact"

    def failures(self):
        return [n for n, (ok, _) in self.conditions.items() if not ok]

    def to_json(self):
        return {
            name: {"ok": ok, "detail": repr(detail)}
            for name, (ok, detail) in self.conditions.items()
        }

    def __repr__(self):
        bad = self.failures()
        return f"AdmissibilityReport(verified={self.verified}" + (
            f", failures={bad})" if bad else ")"
        )


def _merged_chart(theta: ClassMember, extra=None):
    signs = dict(theta.chart.signs)
    box = dict(theta.chart.box)
    if extra is not None:
        extra = extra if isinstance(extra, Chart) else Chart(extra)
        signs.update(extra.signs)
        box.update(extra.box)
    return Chart(signs, box)


def verify_admissible(
    source: ClassMember,
    phi: PointTransformation,
    target: ClassMember,
    chart=None,
    seed: int = 0,
) -> AdmissibilityReport:
    """Check the split determining system for admissibility of
    (source, phi, target): fiber preservation, affineness of U in u,
    nondegeneracy, and the five residual equations."""
    rep = AdmissibilityReport()
    ch = _merged_chart(source, chart)
    T, X, U = phi.T, phi.X, phi.U
    f, g = source.f, source.g
    d = differentiate

    def zcheck(name, expr):
        v = is_zero(expr, chart=ch, seed=seed)
        rep.record(name, v.is_zero, v)
        return v

    def nonzero(name, expr):
        v = is_zero(expr, chart=ch, seed=seed)
        rep.record(name, v.status == ZeroVerdict.NONZERO, v)
        return v

    zcheck("fiber_preserving_T", d(T, "u"))
    zcheck("fiber_preserving_X", d(X, "u"))
    zcheck("U_affine", d(d(U, "u"), "u"))

    U_u = d(U, "u")
    jac2 = sub(mul(d(T, "t"), d(X, "x")), mul(d(T, "x"), d(X, "t")))
    nondeg = mul(U_u, jac2)
    nonzero("nondegenerate", nondeg)

    T_t, T_x = d(T, "t"), d(T, "x")
    X_t, X_x = d(X, "t"), d(X, "x")
    nonzero("regular_chart", sub(mul(T_t, T_t), mul(f, T_x, T_x)))

    zcheck("eq_3_7", sub(mul(T_t, X_t), mul(f, T_x, X_x)))

    ft = phi.apply_point(target.f)  #.. target arbitrary elements at (X, U)
    gt = phi.apply_point(target.g)
    zcheck(
        "eq_3_8",
        sub(
            add_list([mul(ft, T_t, T_t), mul(X_t, X_t)]),
            mul(f, add_list([mul(ft, T_x, T_x), mul(X_x, X_x)])),
        ),
    )

    U_ut = d(U_u, "t")
    U_ux = d(U_u, "x")
    for name, W in (("eq_3_10", T), ("eq_3_11", X)):
        W_t, W_x = d(W, "t"), d(W, "x")
        res = add_list(
            [
                mul(U_u, d(W_t, "t")),
                neg(mul(const(2), U_ut, W_t)),
                neg(mul(f, U_u, d(W_x, "x"))),
                mul(const(2), f, U_ux, W_x),
            ]
        )
        zcheck(name, res)

    U_t, U_x = d(U, "t"), d(U, "x")
    res12 = add_list(
        [
            mul(U_u, sub(mul(gt, T_t, T_t), d(U_t, "t"))),
            mul(const(2), U_ut, U_t),
            neg(mul(f, U_u, sub(mul(gt, T_x, T_x), d(U_x, "x")))),
            neg(mul(const(2), f, U_ux, U_x)),
            neg(mul(g, U_u, U_u)),
        ]
    )
    zcheck("eq_3_12", res12)
    return rep


def pushforward_theta(
    phi: PointTransformation,
    theta: ClassMember,
    target_chart=None,
    seed: int = 0,
    verify: bool = True,
) -> ClassMember:
    """Target member (f~, g~) solved from the residual equations and
    composed with the stored inverse of phi."""
    if phi.inverse is None:
        raise NotAdmissible("pushforward_theta requires a transformation with an inverse")
    ch = _merged_chart(theta)
    T, X, U = phi.T, phi.X, phi.U
    f, g = theta.f, theta.g
    d = differentiate
    T_t, T_x = d(T, "t"), d(T, "x")
    X_t, X_x = d(X, "t"), d(X, "x")
    U_u = d(U, "u")
    denom = sub(mul(T_t, T_t), mul(f, T_x, T_x))
    if is_zero(denom, chart=ch, seed=seed).is_zero:
        raise NotAdmissible(f"singular chart: T_t^2 - f T_x^2 = {denom}")

    ft_src = mul(sub(mul(f, X_x, X_x), mul(X_t, X_t)), pow_(denom, const(-1)))
    U_t, U_x = d(U, "t"), d(U, "x")
    U_ut, U_ux = d(U_u, "t"), d(U_u, "x")
    num = add_list(
        [
            d(U_t, "t"),
            neg(mul(f, d(U_x, "x"))),
            neg(mul(const(2), sub(mul(U_ut, U_t), mul(f, U_ux, U_x)), pow_(U_u, const(-1)))),
            mul(g, U_u),
        ]
    )
    gt_src = mul(num, pow_(denom, const(-1)))

    inv = phi.inverse
    ft = inv.apply_point(ft_src)
    gt = inv.apply_point(gt_src)
    for name, e in (("f~", ft), ("g~", gt)):
        dt = differentiate(e, "t")
        if not is_zero(dt, chart=ch, seed=seed).is_zero:
            raise NotAdmissible(
                f"{name} depends on the target time coordinate ({dt}); "
                "phi does not map theta into the class"
            )
    target = ClassMember(ft, gt, chart=target_chart or dict(theta.chart.signs))
    if verify:
        rep = verify_admissible(theta, phi, target, seed=seed)
        if not rep.verified:
            raise NotAdmissible(f"postcondition failed: {rep}")
    return target


class AdmissibleTransformation:
    """Groupoid arrow (source member, point map, target member)."""

    __slots__ = ("source", "map", "target")

    def __init__(self, source, map, target, verify=True, chart=None, seed=0):
        self.source = source
        self.map = map
        self.target = target
        if verify:
            rep = verify_admissible(source, map, target, chart=chart, seed=seed)
            if not rep.verified:
                raise NotAdmissible(f"not admissible: failures {rep.failures()}")

    def __repr__(self):
        return f"AdmissibleTransformation({self.source} -> {self.target})"


def identity_at(theta: ClassMember) -> AdmissibleTransformation:
    return AdmissibleTransformation(theta, identity_transformation(), theta, verify=False)


def _members_equal(a: ClassMember, b: ClassMember) -> bool:
    return a.f is b.f and a.g is b.g


def compose_admissible(
    t1: AdmissibleTransformation, t2: AdmissibleTransformation, verify=True
) -> AdmissibleTransformation:
    """t1 * t2 = (source(t1), map2 ∘ map1, target(t2))."""
    if not _members_equal(t1.target, t2.source):
        raise NotAdmissible(
            "non-composable pair: target "
            f"{t1.target.to_json()} != source {t2.source.to_json()}"
        )
    composed = t2.map.compose_with(t1.map)
    return AdmissibleTransformation(t1.source, composed, t2.target, verify=verify)


def invert_admissible(t: AdmissibleTransformation, verify=True) -> AdmissibleTransformation:
    if t.map.inverse is None:
        raise NotAdmissible("missing inverse")
    return AdmissibleTransformation(t.target, t.map.inverse, t.source, verify=verify)


def pushforward_field(phi: PointTransformation, q: VectorField) -> VectorField:
    """Phi_* Q: components Q(Phi^i) re-expressed in the new coordinates."""
    if phi.inverse is None:
        raise NotAdmissible("pushforward_field requires a transformation with an inverse")
    if q.coords != GEOMETRIC_COORDS:
        raise ExprError(f"expected field on {GEOMETRIC_COORDS}")
    inv = phi.inverse
    comps = tuple(inv.apply_point(q.apply(c)) for c in (phi.T, phi.X, phi.U))
    return VectorField(GEOMETRIC_COORDS, comps)


def raw_identity_residual(
    source: ClassMember, phi: PointTransformation, target: ClassMember
) -> Expr:
    """Residual of the raw second-order transformation identity.

    Cross-check route, independent of the split system: the first-order
    target derivatives are eliminated by the chain rule (Cramer), the
    target equation replaces the second time derivative, and the source
    equation is used once for u_tt - f u_xx = g.  The result lives over
    (t, x, u, u_t, u_x) plus the free target derivatives w_tx, w_xx; it is
    zero iff phi maps solutions of the source equation to solutions of the
    target equation.
    """
    T, X, U = phi.T, phi.X, phi.U
    u_t, u_x = sym("u_t"), sym("u_x")
    d = differentiate

    def Dt(e):
        return add_list([d(e, "t"), mul(u_t, d(e, "u"))])

    def Dx(e):
        return add_list([d(e, "x"), mul(u_x, d(e, "u"))])

    def Vt(e):
        return add_list(
            [
                d(d(e, "t"), "t"),
                mul(const(2), u_t, d(d(e, "t"), "u")),
                mul(u_t, u_t, d(d(e, "u"), "u")),
            ]
        )

    def Vx(e):
        return add_list(
            [
                d(d(e, "x"), "x"),
                mul(const(2), u_x, d(d(e, "x"), "u")),
                mul(u_x, u_x, d(d(e, "u"), "u")),
            ]
        )

    DtT, DtX, DtU = Dt(T), Dt(X), Dt(U)
    DxT, DxX, DxU = Dx(T), Dx(X), Dx(U)
    J1 = sub(mul(DtT, DxX), mul(DxT, DtX))
    wt = sub(mul(DtU, DxX), mul(DxU, DtX))  # J1 * u~_t~
    wx = sub(mul(DtT, DxU), mul(DxT, DtU))  # J1 * u~_x~

    ft = phi.apply_point(target.f)
    gt = phi.apply_point(target.g)
    w_tx, w_xx = sym("w_tx"), sym("w_xx")
    f, g = source.f, source.g

    a_coef = sub(mul(DtT, DtT), mul(f, DxT, DxT))
    b_coef = sub(mul(DtT, DtX), mul(f, DxT, DxX))
    c_coef = sub(mul(DtX, DtX), mul(f, DxX, DxX))

    return add_list(
        [
            mul(add_list([mul(ft, w_xx), gt]), a_coef, J1),
            mul(const(2), w_tx, b_coef, J1),
            mul(w_xx, c_coef, J1),
            neg(add_list([mul(J1, Vt(U)), neg(mul(wt, Vt(T))), neg(mul(wx, Vt(X)))])),
            mul(f, add_list([mul(J1, Vx(U)), neg(mul(wt, Vx(T))), neg(mul(wx, Vx(X)))])),
            neg(
                mul(
                    g,
                    add_list(
                        [mul(J1, d(U, "u")), neg(mul(wt, d(T, "u"))), neg(mul(wx, d(X, "u")))]
                    ),
                )
            ),
        ]
    )
