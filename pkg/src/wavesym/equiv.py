"""The equivalence group of the class: parametrized elements acting on
members, factorization into elementary transformations, the equivalence
algebra on (t,x,u,f,g), and adjoint actions of the group on the algebra.

The x-dependent elementary transformation carries the correction term
-alpha(x) u f in its g-component, with
alpha(x) = (2 phi_xxx phi_x - 3 phi_xx^2) / (4 |phi_x|^(3/2));
the sign is fixed by consistency with the full group formula and was
verified mechanically against the residual-equation route.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .deteq import ClassMember
from .expr import (
    Expr,
    ExprError,
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
from .jets import EQUIV_COORDS, VectorField
from .parser import parse
from .ptrans import PointTransformation, pushforward_theta
from .sampling import Chart
from .zerotest import is_zero

__all__ = [
    "EquivalenceElement",
    "ElementaryKind",
    "EquivalenceMap",
    "elementary_map",
    "apply_to_member",
    "factor_elementary",
    "compose_equiv",
    "invert_equiv",
    "equivalence_algebra_generator",
    "adjoint_on_generator",
    "discrete_involution",
    "HALF_POW",
]

_X = sym("x")
_U = sym("u")
_T = sym("t")
_F = sym("f")
_G = sym("g")
HALF_POW = const(Fraction(1, 2))


def _expr(v) -> Expr:
    if isinstance(v, Expr):
        return v
    if isinstance(v, (int, Fraction)):
        return const(v)
    return parse(str(v))


def _compose_x(outer: Expr, inner: Expr) -> Expr:
    """outer(inner) for functions of x."""
    return substitute(outer, {"x": inner})


def alpha_of(phi: Expr) -> Expr:
    """(2 phi_xxx phi_x - 3 phi_xx^2) / (4 |phi_x|^(3/2))."""
    d = differentiate
    phi_x = d(phi, "x")
    phi_xx = d(phi_x, "x")
    phi_xxx = d(phi_xx, "x")
    num = sub(mul(const(2), phi_xxx, phi_x), mul(const(3), phi_xx, phi_xx))
    return div(num, mul(const(4), pow_(func("abs", phi_x), const(Fraction(3, 2)))))


class EquivalenceMap:
    """Point transformation of (t,x,u,f,g), projectable to (t,x,u)."""

    __slots__ = ("comps", "inverse")

    def __init__(self, comps, inverse=None):
        self.comps = tuple(_expr(c) for c in comps)
        if len(self.comps) != 5:
            raise ExprError("equivalence map needs 5 components")
        self.inverse = inverse
        if inverse is not None and inverse.inverse is None:
            inverse.inverse = self

    def apply_point(self, e: Expr) -> Expr:
        return substitute(e, dict(zip(EQUIV_COORDS, self.comps)))

    def compose_with(self, first: "EquivalenceMap") -> "EquivalenceMap":
        inv = None
        if self.inverse is not None and first.inverse is not None:
            inv = EquivalenceMap(
                tuple(first.inverse.apply_point(c) for c in self.inverse.comps)
            )
        return EquivalenceMap(
            tuple(first.apply_point(c) for c in self.comps), inverse=inv
        )

    def geometric(self) -> PointTransformation:
        """The (t,x,u)-part as a PointTransformation with inverse."""
        inv = None
        if self.inverse is not None:
            ic = self.inverse.comps
            inv = PointTransformation(ic[0], ic[1], ic[2], check=False)
        return PointTransformation(
            self.comps[0], self.comps[1], self.comps[2], inverse=inv, check=False
        )

    def pushforward(self, q: VectorField) -> VectorField:
        """Pushforward of a field on (t,x,u,f,g) by this map."""
        if self.inverse is None:
            raise ExprError("pushforward requires an inverse")
        if q.coords != EQUIV_COORDS:
            raise ExprError(f"expected field on {EQUIV_COORDS}")
        inv = self.inverse
        comps = tuple(inv.apply_point(q.apply(c)) for c in self.comps)
        return VectorField(EQUIV_COORDS, comps)

    def __repr__(self):
        return f"EquivalenceMap{self.comps}"


class ElementaryKind:
    """Tagged elementary equivalence transformation with its parameter."""

    TAGS = ("Pt", "Dt", "Du", "D", "Z")

    def __init__(self, tag: str, param, param_inverse=None):
        if tag not in self.TAGS:
            raise ExprError(f"unknown elementary tag {tag!r}")
        self.tag = tag
        if tag in ("Pt", "Dt", "Du"):
            self.param = Fraction(param)
            if tag != "Pt" and self.param == 0:
                raise ExprError(f"{tag} parameter must be nonzero")
            self.param_inverse = None
        else:
            self.param = _expr(param)
            self.param_inverse = _expr(param_inverse) if param_inverse is not None else None
            if tag == "D":
                if self.param_inverse is None:
                    raise ExprError("D(phi) needs the inverse function of phi")
                phi_x = differentiate(self.param, "x")
                if is_zero(phi_x).is_zero:
                    raise ExprError("phi_x must not vanish")

    def __repr__(self):
        return f"{self.tag}({self.param})"

    def map(self) -> EquivalenceMap:
        return elementary_map(self)


def elementary_map(kind: ElementaryKind) -> EquivalenceMap:
    """The 5-coordinate action of one elementary transformation."""
    t, x, u, f, g = _T, _X, _U, _F, _G
    tag, p = kind.tag, kind.param
    if tag == "Pt":
        fwd = (add_list([t, const(p)]), x, u, f, g)
        inv = (sub(t, const(p)), x, u, f, g)
        return EquivalenceMap(fwd, EquivalenceMap(inv))
    if tag == "Dt":
        c = const(p)
        fwd = (mul(c, t), x, u, mul(pow_(c, const(-2)), f), mul(pow_(c, const(-2)), g))
        inv = (div(t, c), x, u, mul(pow_(c, const(2)), f), mul(pow_(c, const(2)), g))
        return EquivalenceMap(fwd, EquivalenceMap(inv))
    if tag == "Du":
        c = const(p)
        fwd = (t, x, mul(c, u), f, mul(c, g))
        inv = (t, x, div(u, c), f, div(g, c))
        return EquivalenceMap(fwd, EquivalenceMap(inv))
    if tag == "Z":
        psi = kind.param
        psi_xx = differentiate(differentiate(psi, "x"), "x")
        fwd = (t, x, add_list([u, psi]), f, sub(g, mul(psi_xx, f)))
        inv = (t, x, sub(u, psi), f, add_list([g, mul(psi_xx, f)]))
        return EquivalenceMap(fwd, EquivalenceMap(inv))
    # D(phi)
    phi = kind.param
    phi_hat = kind.param_inverse
    return EquivalenceMap(_d_comps(phi), EquivalenceMap(_d_comps(phi_hat)))


def _d_comps(phi: Expr):
    phi_x = differentiate(phi, "x")
    root = pow_(func("abs", phi_x), HALF_POW)
    return (
        _T,
        phi,
        mul(root, _U),
        mul(pow_(phi_x, const(2)), _F),
        sub(mul(root, _G), mul(alpha_of(phi), _U, _F)),
    )


class EquivalenceElement:
    """Group element: t -> c1 t + c0, x -> phi(x),
    u -> c2 |phi_x|^(1/2) u + psi(x), with the induced action on (f, g)."""

    __slots__ = ("c0", "c1", "c2", "phi", "phi_inv", "psi")

    def __init__(self, c0=0, c1=1, c2=1, phi=None, phi_inv=None, psi=0):
        self.c0 = Fraction(c0)
        self.c1 = Fraction(c1)
        self.c2 = Fraction(c2)
        if self.c1 == 0 or self.c2 == 0:
            raise ExprError("c1 and c2 must be nonzero")
        self.phi = _expr(phi) if phi is not None else _X
        self.phi_inv = _expr(phi_inv) if phi_inv is not None else (_X if phi is None else None)
        if self.phi_inv is None:
            raise ExprError("phi needs an explicit inverse")
        self.psi = _expr(psi)
        phi_x = differentiate(self.phi, "x")
        if is_zero(phi_x).is_zero:
            raise ExprError("phi_x must not vanish")

    @classmethod
    def identity(cls):
        return cls()

    def to_json(self):
        return {
            "c0": str(self.c0),
            "c1": str(self.c1),
            "c2": str(self.c2),
            "phi": str(self.phi),
            "phi_inv": str(self.phi_inv),
            "psi": str(self.psi),
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            Fraction(data.get("c0", "0")),
            Fraction(data.get("c1", "1")),
            Fraction(data.get("c2", "1")),
            data.get("phi", "x"),
            data.get("phi_inv", "x"),
            data.get("psi", "0"),
        )

    def __repr__(self):
        return (
            f"EquivalenceElement(c0={self.c0}, c1={self.c1}, c2={self.c2}, "
            f"phi={self.phi}, psi={self.psi})"
        )

    # -- geometric data ------------------------------------------------------

    def phi_x(self) -> Expr:
        return differentiate(self.phi, "x")

    def u_component(self) -> Expr:
        return add_list(
            [mul(const(self.c2), pow_(func("abs", self.phi_x()), HALF_POW), _U), self.psi]
        )

    def geometric(self) -> PointTransformation:
        root = pow_(func("abs", self.phi_x()), HALF_POW)
        tmap = add_list([mul(const(self.c1), _T), const(self.c0)])
        # inverse: x = phi_inv(x~), u = (u~ - psi(phi_inv)) / (c2 |phi_x(phi_inv)|^(1/2))
        phx_at = _compose_x(self.phi_x(), self.phi_inv)
        inv_u = div(
            sub(_U, _compose_x(self.psi, self.phi_inv)),
            mul(const(self.c2), pow_(func("abs", phx_at), HALF_POW)),
        )
        inv = PointTransformation(
            div(sub(_T, const(self.c0)), const(self.c1)), self.phi_inv, inv_u, check=False
        )
        return PointTransformation(
            tmap, self.phi, mul(const(self.c2), root, _U, ) + self.psi, inverse=inv, check=False
        )

    def full_map(self) -> EquivalenceMap:
        """The 5-coordinate map, built from the elementary factorization."""
        maps = [k.map() for k in factor_elementary(self)]
        out = maps[-1]
        for m in reversed(maps[:-1]):
            out = m.compose_with(out)
        return out

    def theorem_map(self) -> EquivalenceMap:
        """The 5-coordinate map written directly from the group formulas."""
        d = differentiate
        phi_x = self.phi_x()
        psi_x = d(self.psi, "x")
        psi_xx = d(psi_x, "x")
        root = pow_(func("abs", phi_x), HALF_POW)
        c1sq = pow_(const(self.c1), const(-2))
        comps = (
            add_list([mul(const(self.c1), _T), const(self.c0)]),
            self.phi,
            self.u_component(),
            mul(pow_(phi_x, const(2)), c1sq, _F),
            sub(
                mul(const(Fraction(self.c2, self.c1 * self.c1)), root, _G),
                mul(
                    c1sq,
                    add_list(
                        [
                            mul(const(self.c2), alpha_of(self.phi), _U),
                            psi_xx,
                            neg(mul(div(d(phi_x, "x"), phi_x), psi_x)),
                        ]
                    ),
                    _F,
                ),
            ),
        )
        return EquivalenceMap(comps)


def apply_to_member(elem: EquivalenceElement, theta: ClassMember, cross_check=False) -> ClassMember:
    """Action on the arbitrary elements via the closed group formulas."""
    f, g = theta.f, theta.g
    c0, c1, c2 = elem.c0, elem.c1, elem.c2
    phi, psi = elem.phi, elem.psi
    d = differentiate
    phi_x = d(phi, "x")
    psi_x = d(psi, "x")
    psi_xx = d(psi_x, "x")
    root = pow_(func("abs", phi_x), HALF_POW)

    f_new = mul(pow_(phi_x, const(2)), pow_(const(c1), const(-2)), f)
    g_new = sub(
        mul(const(Fraction(c2, c1 * c1)), root, g),
        mul(
            pow_(const(c1), const(-2)),
            add_list(
                [
                    mul(const(c2), alpha_of(phi), _U),
                    psi_xx,
                    neg(mul(div(d(phi_x, "x"), phi_x), psi_x)),
                ]
            ),
            f,
        ),
    )
    # express in the target coordinates
    phx_at = _compose_x(phi_x, elem.phi_inv)
    u_old = div(
        sub(_U, _compose_x(psi, elem.phi_inv)),
        mul(const(c2), pow_(func("abs", phx_at), HALF_POW)),
    )
    binds = {"x": elem.phi_inv, "u": u_old}
    out = ClassMember(
        substitute(f_new, binds), substitute(g_new, binds), chart=dict(theta.chart.signs)
    )
    if cross_check:
        alt = pushforward_theta(elem.geometric(), theta, verify=False)
        ch = Chart(dict(theta.chart.signs))
        if not (
            is_zero(sub(out.f, alt.f), chart=ch).is_zero
            and is_zero(sub(out.g, alt.g), chart=ch).is_zero
        ):
            raise ExprError(
                f"group formula and residual route disagree: {out} vs {alt}"
            )
    return out


def factor_elementary(elem: EquivalenceElement):
    """Five-factor decomposition [Pt(c0), Dt(c1), Z(.), D(phi), Du(c2)].

    Factors apply rightmost first; the shift slot carries psi expressed in
    the intermediate variable, psi(phi_inv(x)).
    """
    psi_hat = _compose_x(elem.psi, elem.phi_inv)
    return [
        ElementaryKind("Pt", elem.c0),
        ElementaryKind("Dt", elem.c1),
        ElementaryKind("Z", psi_hat),
        ElementaryKind("D", elem.phi, elem.phi_inv),
        ElementaryKind("Du", elem.c2),
    ]


def compose_equiv(s1: EquivalenceElement, s2: EquivalenceElement) -> EquivalenceElement:
    """Element acting as s1 followed by s2."""
    phi = _compose_x(s2.phi, s1.phi)
    phi_inv = _compose_x(s1.phi_inv, s2.phi_inv)
    s2_phx_at = _compose_x(differentiate(s2.phi, "x"), s1.phi)
    psi = add_list(
        [
            mul(
                const(s2.c2),
                pow_(func("abs", s2_phx_at), HALF_POW),
                s1.psi,
            ),
            _compose_x(s2.psi, s1.phi),
        ]
    )
    return EquivalenceElement(
        c0=s2.c1 * s1.c0 + s2.c0,
        c1=s2.c1 * s1.c1,
        c2=s2.c2 * s1.c2,
        phi=phi,
        phi_inv=phi_inv,
        psi=psi,
    )


def invert_equiv(s: EquivalenceElement) -> EquivalenceElement:
    phx_at = _compose_x(differentiate(s.phi, "x"), s.phi_inv)
    psi = neg(
        div(
            _compose_x(s.psi, s.phi_inv),
            mul(const(s.c2), pow_(func("abs", phx_at), HALF_POW)),
        )
    )
    return EquivalenceElement(
        c0=-Fraction(s.c0, s.c1),
        c1=1 / s.c1,
        c2=1 / s.c2,
        phi=s.phi_inv,
        phi_inv=s.phi,
        psi=psi,
    )


def discrete_involution(which: str) -> EquivalenceMap:
    """The three sign involutions: 't', 'x', or 'u'."""
    t, x, u, f, g = _T, _X, _U, _F, _G
    if which == "t":
        comps = (neg(t), x, u, f, g)
    elif which == "x":
        comps = (t, neg(x), u, f, g)
    elif which == "u":
        comps = (t, x, neg(u), f, neg(g))
    else:
        raise ExprError("which must be 't', 'x' or 'u'")
    m = EquivalenceMap(comps)
    m.inverse = m
    return m


def equivalence_algebra_generator(kind: str, param=None) -> VectorField:
    """The printed generators on (t,x,u,f,g)."""
    zero = ZERO
    if kind == "Pt":
        return VectorField(EQUIV_COORDS, (const(1), zero, zero, zero, zero))
    if kind == "Dt":
        return VectorField(
            EQUIV_COORDS, (_T, zero, zero, mul(const(-2), _F), mul(const(-2), _G))
        )
    if kind == "Du":
        return VectorField(EQUIV_COORDS, (zero, zero, _U, zero, _G))
    if kind == "D":
        zeta = _expr(param)
        d = differentiate
        z_x = d(zeta, "x")
        z_xxx = d(d(z_x, "x"), "x")
        return VectorField(
            EQUIV_COORDS,
            (
                zero,
                zeta,
                mul(const(Fraction(1, 2)), z_x, _U),
                mul(const(2), z_x, _F),
                mul(
                    const(Fraction(1, 2)),
                    sub(mul(z_x, _G), mul(z_xxx, _U, _F)),
                ),
            ),
        )
    if kind == "Z":
        chi = _expr(param)
        chi_xx = differentiate(differentiate(chi, "x"), "x")
        return VectorField(
            EQUIV_COORDS, (zero, zero, chi, zero, neg(mul(chi_xx, _F)))
        )
    raise ExprError(f"unknown generator kind {kind!r}")


def adjoint_on_generator(elem: ElementaryKind, gen: VectorField) -> VectorField:
    """Pushforward of an equivalence-algebra generator by an elementary
    group transformation."""
    return elem.map().pushforward(gen)
