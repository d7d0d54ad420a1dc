"""Vector fields, total derivatives on the second-order jet space of
(t, x; u), second prolongation, and commutators."""

from __future__ import annotations

from fractions import Fraction

from .expr import Expr, ExprError, add_list, const, differentiate, free_symbols, mul, mul_list, sub, sym
from .parser import parse

__all__ = [
    "VectorField",
    "ProlongedField",
    "total_derivative",
    "prolong2",
    "commutator",
    "JET_COORDS",
    "GEOMETRIC_COORDS",
    "EQUIV_COORDS",
]

GEOMETRIC_COORDS = ("t", "x", "u")
EQUIV_COORDS = ("t", "x", "u", "f", "g")

# fixed jet symbol names; third order is internal to prolongation
JET1 = ("u_t", "u_x")
JET2 = ("u_tt", "u_tx", "u_xx")
JET3 = ("u_ttt", "u_ttx", "u_txx", "u_xxx")
JET_COORDS = ("t", "x", "u") + JET1 + JET2

# D_v maps each jet symbol to its v-derivative symbol
_SHIFT = {
    "t": {"u": "u_t", "u_t": "u_tt", "u_x": "u_tx", "u_tt": "u_ttt", "u_tx": "u_ttx", "u_xx": "u_txx"},
    "x": {"u": "u_x", "u_t": "u_tx", "u_x": "u_xx", "u_tt": "u_ttx", "u_tx": "u_txx", "u_xx": "u_xxx"},
}


class VectorField:
    """First-order differential operator on an ordered coordinate list."""

    __slots__ = ("coords", "comps")

    def __init__(self, coords, comps):
        coords = tuple(coords)
        comps = tuple(c if isinstance(c, Expr) else parse(str(c)) for c in comps)
        if len(coords) != len(comps):
            raise ExprError("component count must equal coordinate count")
        allowed = set(coords)
        for c in comps:
            bad = free_symbols(c) - allowed
            if bad:
                raise ExprError(f"component {c} uses non-coordinate symbols {sorted(bad)}")
        self.coords = coords
        self.comps = comps

    def component(self, name: str) -> Expr:
        return self.comps[self.coords.index(name)]

    def apply(self, e: Expr) -> Expr:
        """Directional derivative sum_i comp_i * d/dcoord_i of e."""
        return add_list([mul(c, differentiate(e, v)) for v, c in zip(self.coords, self.comps)])

    def is_zero(self) -> bool:
        return all(c.kind == 0 and c.data == 0 for c in self.comps)

    def scale(self, k) -> "VectorField":
        k = k if isinstance(k, Expr) else const(k)
        return VectorField(self.coords, tuple(mul(k, c) for c in self.comps))

    def __add__(self, other: "VectorField") -> "VectorField":
        if self.coords != other.coords:
            raise ExprError("vector fields on different coordinates")
        return VectorField(self.coords, tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other: "VectorField") -> "VectorField":
        return self + other.scale(-1)

    def __eq__(self, other):
        return (
            isinstance(other, VectorField)
            and self.coords == other.coords
            and self.comps == other.comps
        )

    def __hash__(self):
        return hash((self.coords, self.comps))

    def __repr__(self):
        inner = ", ".join(f"{v}={c}" for v, c in zip(self.coords, self.comps) if str(c) != "0")
        return f"VectorField({inner or '0'})"

    @classmethod
    def zero(cls, coords):
        return cls(coords, tuple(const(0) for _ in coords))


class ProlongedField:
    """Second prolongation coefficients of a field on (t, x, u)."""

    __slots__ = ("base", "eta_t", "eta_x", "eta_tt", "eta_tx", "eta_xx")

    def __init__(self, base, eta_t, eta_x, eta_tt, eta_tx, eta_xx):
        self.base = base
        self.eta_t = eta_t
        self.eta_x = eta_x
        self.eta_tt = eta_tt
        self.eta_tx = eta_tx
        self.eta_xx = eta_xx


def _total_derivative_full(e: Expr, v: str) -> Expr:
    """Total derivative allowing jet symbols up to order 2 in the input."""
    shift = _SHIFT[v]
    terms = [differentiate(e, v)]
    for s, ds in shift.items():
        pd = differentiate(e, s)
        if pd.kind != 0 or pd.data != 0:
            terms.append(mul(sym(ds), pd))
    return add_list(terms)


def total_derivative(e: Expr, v: str) -> Expr:
    """D_v for v in {t, x} on expressions of jet order <= 1."""
    if v not in ("t", "x"):
        raise ExprError(f"total derivative direction must be t or x, not {v!r}")
    used = free_symbols(e)
    bad = used & set(JET2) | used & set(JET3)
    if bad:
        raise ExprError(
            f"total_derivative input may depend on jet order <= 1 only; found {sorted(bad)}"
        )
    return _total_derivative_full(e, v)


def prolong2(q: VectorField) -> ProlongedField:
    """Second prolongation via the characteristic formula.

    Third-order jet symbols introduced by the formula must cancel
    identically; their survival is a hard error.
    """
    if q.coords != GEOMETRIC_COORDS:
        raise ExprError(f"prolong2 expects coordinates {GEOMETRIC_COORDS}, got {q.coords}")
    tau, xi, eta = q.comps
    u_t, u_x = sym("u_t"), sym("u_x")
    w = sub(eta, add_list([mul(tau, u_t), mul(xi, u_x)]))

    dt = _total_derivative_full
    wt = dt(w, "t")
    wx = dt(w, "x")
    eta_t = add_list([wt, mul(tau, sym("u_tt")), mul(xi, sym("u_tx"))])
    eta_x = add_list([wx, mul(tau, sym("u_tx")), mul(xi, sym("u_xx"))])
    eta_tt = add_list([dt(wt, "t"), mul(tau, sym("u_ttt")), mul(xi, sym("u_ttx"))])
    eta_tx = add_list([dt(wt, "x"), mul(tau, sym("u_ttx")), mul(xi, sym("u_txx"))])
    eta_xx = add_list([dt(wx, "x"), mul(tau, sym("u_txx")), mul(xi, sym("u_xxx"))])

    for name, coeff in (("eta_tt", eta_tt), ("eta_tx", eta_tx), ("eta_xx", eta_xx)):
        leftover = free_symbols(coeff) & set(JET3)
        if leftover:
            raise ExprError(
                f"third-order jet symbols {sorted(leftover)} failed to cancel in {name}"
            )
    return ProlongedField(q, eta_t, eta_x, eta_tt, eta_tx, eta_xx)


def commutator(q1: VectorField, q2: VectorField) -> VectorField:
    """[Q1, Q2] = Q1(Q2) - Q2(Q1), componentwise."""
    if q1.coords != q2.coords:
        raise ExprError(f"coordinate lists differ: {q1.coords} vs {q2.coords}")
    comps = tuple(sub(q1.apply(c2), q2.apply(c1)) for c1, c2 in zip(q1.comps, q2.comps))
    return VectorField(q1.coords, comps)
