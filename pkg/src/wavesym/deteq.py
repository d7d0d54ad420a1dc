"""The equation class u_tt = f(x,u) u_xx + g(x,u): membership and the
determining equations for Lie symmetries of one member."""

from __future__ import annotations

import json

from .expr import (
    Expr,
    ExprError,
    ZERO,
    add_list,
    assume_positive,
    const,
    differentiate,
    free_symbols,
    mul,
    neg,
    sub,
    substitute,
    sym,
)
from .jets import GEOMETRIC_COORDS, VectorField, prolong2
from .parser import parse
from .zerotest import Chart, ZeroVerdict, is_zero

__all__ = ["ClassMember", "MemberError", "invariance_residuals", "residual_system", "is_symmetry", "SymmetryReport"]


class MemberError(ExprError):
    pass


class ClassMember:
    """Arbitrary-element pair (f, g) over (x, u) on a sign chart.

    The auxiliary inequality f != 0 and the nonlinearity condition
    (f_u, g_uu) != (0, 0) are checked at construction; a LikelyZero f is
    treated as a violation.
    """

    __slots__ = ("f", "g", "chart")

    def __init__(self, f, g, chart=None, check=True):
        if isinstance(f, str):
            f = parse(f)
        if isinstance(g, str):
            g = parse(g)
        if chart is None:
            chart = Chart({"u": "+", "x": "+"})
        elif not isinstance(chart, Chart):
            chart = Chart(chart)
        positives = {s for s, sgn in chart.signs.items() if sgn == "+"}
        f = assume_positive(f, positives)
        g = assume_positive(g, positives)
        bad = (free_symbols(f) | free_symbols(g)) - {"x", "u"} - _parameter_names(f, g)
        self.f = f
        self.g = g
        self.chart = chart
        if check:
            self.validate()

    def validate(self):
        if is_zero(self.f, chart=self.chart).is_zero:
            raise MemberError(f"f = {self.f} violates the auxiliary inequality f != 0")
        f_u = differentiate(self.f, "u")
        g_uu = differentiate(differentiate(self.g, "u"), "u")
        if is_zero(f_u, chart=self.chart).is_zero and is_zero(g_uu, chart=self.chart).is_zero:
            raise MemberError(
                f"(f_u, g_uu) = ({f_u}, {g_uu}) violates the nonlinearity condition"
            )

    def __eq__(self, other):
        return (
            isinstance(other, ClassMember)
            and self.f is other.f
            and self.g is other.g
            and self.chart.signs == other.chart.signs
        )

    def __hash__(self):
        return hash((self.f, self.g, tuple(sorted(self.chart.signs.items()))))

    def __repr__(self):
        return f"ClassMember(f={self.f}, g={self.g})"

    def to_json(self) -> dict:
        return {"f": str(self.f), "g": str(self.g), "chart": dict(self.chart.signs)}

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(data["f"], data["g"], chart=data.get("chart"))


def _parameter_names(f, g):
    # symbols beyond (x, u) are treated as rational parameters of templates
    return (free_symbols(f) | free_symbols(g)) - {"x", "u"}


def _check_projectable(q: VectorField):
    tau, xi, eta = q.comps
    for name, comp in (("tau_u", tau), ("xi_u", xi)):
        d = differentiate(comp, "u")
        if d is not ZERO:
            raise MemberError(f"field violates projectability: {name} = {d}")
    eta_uu = differentiate(differentiate(eta, "u"), "u")
    if eta_uu is not ZERO:
        raise MemberError(f"field violates affineness in u: eta_uu = {eta_uu}")


def invariance_residuals(q: VectorField, theta: ClassMember):
    """Left minus right of the five determining equations.

    The field must satisfy tau_u = xi_u = eta_uu = 0 (all symmetries of the
    class do); q is a symmetry of theta iff all five residuals vanish.
    """
    if q.coords != GEOMETRIC_COORDS:
        raise MemberError(f"field must live on {GEOMETRIC_COORDS}")
    _check_projectable(q)
    tau, xi, eta = q.comps
    return residual_system(tau, xi, eta, theta.f, theta.g)


def residual_system(tau, xi, eta, f, g):
    """The five residuals for raw component expressions (no field checks)."""
    d = differentiate
    f_x, f_u = d(f, "x"), d(f, "u")
    g_x, g_u = d(g, "x"), d(g, "u")

    r1 = sub(d(xi, "t"), mul(d(tau, "x"), f))
    r2 = sub(sub(d(d(tau, "t"), "t"), mul(d(d(tau, "x"), "x"), f)), mul(const(2), d(d(eta, "t"), "u")))
    r3 = add_list(
        [
            d(d(xi, "t"), "t"),
            neg(mul(d(d(xi, "x"), "x"), f)),
            mul(const(2), d(d(eta, "x"), "u"), f),
        ]
    )
    r4 = sub(
        add_list([mul(xi, f_x), mul(eta, f_u)]),
        mul(const(2), sub(d(xi, "x"), d(tau, "t")), f),
    )
    r5 = sub(
        add_list([mul(xi, g_x), mul(eta, g_u)]),
        add_list(
            [
                mul(sub(d(eta, "u"), mul(const(2), d(tau, "t"))), g),
                neg(mul(d(d(eta, "x"), "x"), f)),
                d(d(eta, "t"), "t"),
            ]
        ),
    )
    return (r1, r2, r3, r4, r5)


class SymmetryReport:
    """Verdicts of both symmetry routes: five residuals plus jet criterion."""

    __slots__ = ("residuals", "criterion", "field")

    def __init__(self, field, residuals, criterion):
        self.field = field
        self.residuals = residuals
        self.criterion = criterion

    @property
    def is_symmetry(self):
        return all(v.is_zero for v in self.residuals) and self.criterion.is_zero

    def __bool__(self):
        return self.is_symmetry

    def __repr__(self):
        parts = ", ".join(repr(v) for v in self.residuals)
        return f"SymmetryReport(residuals=[{parts}], criterion={self.criterion!r})"


def _jet_criterion_residual(q: VectorField, theta: ClassMember) -> Expr:
    """Direct route: prolong, apply the invariance criterion, substitute
    u_tt = f u_xx + g, and require independence of u_tt."""
    p = prolong2(q)
    tau, xi, eta = q.comps
    f, g = theta.f, theta.g
    d = differentiate
    u_xx = sym("u_xx")
    res = add_list(
        [
            p.eta_tt,
            neg(mul(add_list([mul(xi, d(f, "x")), mul(eta, d(f, "u"))]), u_xx)),
            neg(mul(f, p.eta_xx)),
            neg(mul(xi, d(g, "x"))),
            neg(mul(eta, d(g, "u"))),
        ]
    )
    res = substitute(res, {"u_tt": add_list([mul(f, u_xx), g])})
    left = differentiate(res, "u_tt")
    if left is not ZERO:
        raise MemberError(f"criterion residual still depends on u_tt: {left}")
    return res


def is_symmetry(q: VectorField, theta: ClassMember, samples=None, seed: int = 0) -> SymmetryReport:
    """Aggregate verdict of the five-residual route and the direct
    jet-space criterion; disagreement between them is a hard error."""
    kwargs = {"seed": seed}
    if samples is not None:
        kwargs["samples"] = samples
    residuals = [is_zero(r, chart=theta.chart, **kwargs) for r in invariance_residuals(q, theta)]
    criterion = is_zero(_jet_criterion_residual(q, theta), chart=theta.chart, **kwargs)
    five_ok = all(v.is_zero for v in residuals)
    if five_ok != criterion.is_zero:
        raise MemberError(
            "internal consistency failure: residual route and jet criterion disagree "
            f"for {q} on {theta}: {residuals} vs {criterion}"
        )
    return SymmetryReport(q, residuals, criterion)
