"""Lie-symmetry solver for concrete class members.

With the polynomial ansatz tau(t,x), xi(t,x), eta = eta1(t,x) u + eta0(t,x)
of total degree <= d, the five determining-equation residuals are linear in
the unknown coefficients.  Evaluating the coefficient expressions at random
rational points yields exact linear constraints; the exact nullspace of the
stacked system (fraction-free elimination) gives candidate fields, each of
which must then pass the symbolic symmetry check.  Optional extension
bases {exp(2t), exp(-2t)} and {sin 2t, cos 2t} multiply the polynomial
part, covering the classification cases whose symmetries are not
polynomial in t.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction

from .deteq import ClassMember, is_symmetry, residual_system
from .evaluate import InexactResult, SingularEvaluation
from .expr import (
    Expr,
    ExprError,
    ZERO,
    add_list,
    const,
    differentiate,
    free_symbols,
    func,
    mul,
    mul_list,
    pow_,
    substitute,
    sym,
)
from .jets import GEOMETRIC_COORDS, VectorField
from .liealg import LieAlgebraSpan, NotClosed, closure_check
from .linalg import nullspace_incremental
from .sampling import Chart, ExactSampler

__all__ = ["SolverConfig", "SolveResult", "Ansatz", "solve_symmetries", "dimension_profile"]

_MAX_RESAMPLE = 3


class SolverConfig:
    """Sampling configuration; mirrors the JSON wire format."""

    __slots__ = ("seed", "oversample", "mode", "extra_basis")

    def __init__(self, seed=0, oversample=3.0, mode="exact", extra_basis=()):
        if oversample < 1:
            raise ExprError("oversample must be >= 1")
        if mode not in ("exact", "float"):
            raise ExprError("mode must be 'exact' or 'float'")
        for b in extra_basis:
            if b not in ("exp2t", "trig2t"):
                raise ExprError(f"unknown extra basis {b!r}")
        self.seed = seed
        self.oversample = float(oversample)
        self.mode = mode
        self.extra_basis = tuple(extra_basis)

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls(
            seed=data.get("seed", 0),
            oversample=data.get("oversample", 3.0),
            mode=data.get("mode", "exact"),
            extra_basis=tuple(data.get("extra_basis", ())),
        )


class Ansatz:
    """Unknown-coefficient shapes for (tau, xi, eta1, eta0) at degree d."""

    def __init__(self, degree: int, extra_basis=()):
        if degree < 0:
            raise ExprError("degree must be >= 0")
        self.degree = degree
        t, x = sym("t"), sym("x")
        monomials = [
            mul(pow_(t, const(i)), pow_(x, const(j)))
            for i in range(degree + 1)
            for j in range(degree + 1 - i)
        ]
        waves = [None]  # None = plain polynomial block
        for b in extra_basis:
            if b == "exp2t":
                waves += [func("exp", mul(const(2), t)), func("exp", mul(const(-2), t))]
            elif b == "trig2t":
                waves += [func("sin", mul(const(2), t)), func("cos", mul(const(2), t))]
        self.basis = [m if w is None else mul(w, m) for w in waves for m in monomials]
        self.n_unknowns = 4 * len(self.basis)

    def components(self, prefix="_c"):
        """(tau, xi, eta, coefficient symbol list)."""
        coeffs = [sym(f"{prefix}{k}") for k in range(self.n_unknowns)]
        nb = len(self.basis)
        blocks = []
        for b in range(4):
            blocks.append(
                add_list(
                    [mul(coeffs[b * nb + i], e) for i, e in enumerate(self.basis)]
                )
            )
        tau, xi, eta1, eta0 = blocks
        eta = add_list([mul(eta1, sym("u")), eta0])
        return tau, xi, eta, coeffs


class SolveResult:
    """Confirmed symmetry span of one member at one ansatz degree."""

    def __init__(self, span, degree, mode, closure, cfg):
        self.span = span
        self.degree = degree
        self.mode = mode
        self.closure = closure
        self.cfg = cfg

    @property
    def dimension(self):
        return 0 if self.span is None else len(self.span.basis)

    @property
    def closed(self):
        return self.closure is not None and not isinstance(self.closure, NotClosed)

    def __repr__(self):
        return f"SolveResult(dim={self.dimension}, degree={self.degree}, mode={self.mode})"


def _coefficient_exprs(theta: ClassMember, ansatz: Ansatz):
    """Per-residual coefficient expressions of each unknown."""
    tau, xi, eta, coeffs = ansatz.components()
    residuals = residual_system(tau, xi, eta, theta.f, theta.g)
    rows = []
    zero_binds = {c.data: ZERO for c in coeffs}
    for r in residuals:
        if substitute(r, zero_binds) is not ZERO:
            raise ExprError("determining residual has an inhomogeneous part")
        rows.append([differentiate(r, c.data) for c in coeffs])
    return rows


def solve_symmetries(theta: ClassMember, degree: int, cfg=None) -> SolveResult:
    """All Lie symmetries of theta within the ansatz, symbolically confirmed."""
    cfg = _as_config(cfg)
    ansatz = Ansatz(degree, cfg.extra_basis)
    coeff_rows = _coefficient_exprs(theta, ansatz)
    flat = [e for row in coeff_rows for e in row]
    chart = Chart(dict(theta.chart.signs))

    for attempt in range(_MAX_RESAMPLE):
        seed = cfg.seed + 1000 * attempt
        if cfg.mode == "exact":
            matrix = _exact_matrix(flat, len(coeff_rows), ansatz.n_unknowns, chart, cfg, seed)
        else:
            matrix = _float_matrix(flat, len(coeff_rows), ansatz.n_unknowns, chart, cfg, seed)
        vectors = (
            nullspace_incremental(matrix, ansatz.n_unknowns)
            if cfg.mode == "exact"
            else _float_nullspace(matrix)
        )
        fields = [_reify(ansatz, v) for v in vectors]
        fields = [q for q in fields if not q.is_zero()]
        confirmed = []
        ok = True
        for q in fields:
            if is_symmetry(q, theta, seed=seed).is_symmetry:
                confirmed.append(q)
            else:
                ok = False
                break
        if ok:
            if not confirmed:
                return SolveResult(None, degree, cfg.mode, None, cfg)
            span = LieAlgebraSpan(confirmed, seed=seed, chart=chart)
            closure = closure_check(span)
            return SolveResult(span, degree, cfg.mode, closure, cfg)
    raise ExprError(
        "solver confirmation failed after re-sampling; "
        "sampling degeneracy or an implementation bug"
    )


def _as_config(cfg):
    if cfg is None:
        return SolverConfig()
    if isinstance(cfg, SolverConfig):
        return cfg
    return SolverConfig.from_json(cfg)


def _draw_box(rng: random.Random, sampler: ExactSampler, name: str, chart: Chart):
    k = Fraction(rng.randint(1, 70), 7)
    root = sampler.pow_denoms.get(name)
    if root:
        k = Fraction(rng.randint(1, 8), rng.randint(1, 4)) ** root
    s = chart.sign_of(name)
    if s == "-":
        return -k
    if s == "+":
        return k
    return k if rng.random() < 0.5 else -k


def _exact_matrix(flat, n_res, n_unknowns, chart, cfg, seed):
    sampler = ExactSampler(flat, chart)
    if sampler.float_only:
        raise ExprError(
            "member requires float evaluation; run with mode='float'"
        )
    rng = random.Random(seed)
    npoints = max(int(cfg.oversample * n_unknowns + 1), 8)
    rows = []
    attempts = 0
    got = 0
    while got < npoints:
        if attempts > 30 * npoints:
            raise ExprError("could not draw enough non-singular sample points")
        attempts += 1
        point = {s: _draw_box(rng, sampler, s, chart) for s in sampler.symbols}
        values = dict(point)
        for s in sampler.extra_syms:
            if s.startswith("_E"):
                values[s] = Fraction(rng.randint(1, 19), rng.randint(1, 19))
            elif s.startswith("_C"):
                r = Fraction(rng.randint(-19, 19), rng.randint(1, 19))
                values[s] = (1 - r * r) / (1 + r * r)
                values["_S" + s[2:]] = 2 * r / (1 + r * r)
        try:
            vals = sampler.eval_all(values)
        except SingularEvaluation:
            continue
        except InexactResult:
            raise ExprError("inexact coefficient; run with mode='float'")
        for r in range(n_res):
            row = vals[r * n_unknowns : (r + 1) * n_unknowns]
            if any(row):
                rows.append(row)
        got += 1
    return rows


def _float_matrix(flat, n_res, n_unknowns, chart, cfg, seed):
    import mpmath

    sampler = ExactSampler(flat, chart)
    rng = random.Random(seed)
    npoints = max(int(cfg.oversample * n_unknowns + 1), 8)
    rows = []
    got = 0
    attempts = 0
    while got < npoints:
        if attempts > 30 * npoints:
            raise ExprError("could not draw enough non-singular sample points")
        attempts += 1
        point = {s: _draw_box(rng, sampler, s, chart) for s in sampler.symbols}
        try:
            vals = [sampler.eval_float(i, point).value for i in range(len(flat))]
        except (SingularEvaluation, ZeroDivisionError, ValueError):
            continue
        for r in range(n_res):
            row = vals[r * n_unknowns : (r + 1) * n_unknowns]
            if any(abs(v) > 0 for v in row):
                rows.append(row)
        got += 1
    return rows


def _float_nullspace(rows, tol=None):
    """Numeric nullspace via mpmath SVD-free elimination; marked heuristic."""
    import mpmath

    tol = tol or mpmath.mpf(10) ** (-30)
    m = [list(r) for r in rows]
    ncols = len(m[0])
    piv_cols = []
    r = 0
    import warnings

    for c in range(ncols):
        best, bi = None, None
        for i in range(r, len(m)):
            v = abs(m[i][c])
            if best is None or v > best:
                best, bi = v, i
        if best is None or best <= tol:
            if best is not None and tol / 100 < best <= tol * 100:
                warnings.warn("float-mode rank decision is ill-conditioned")
            continue
        m[r], m[bi] = m[bi], m[r]
        pv = m[r][c]
        m[r] = [v / pv for v in m[r]]
        for i in range(len(m)):
            if i != r and abs(m[i][c]) > 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
    free = [c for c in range(ncols) if c not in piv_cols]
    out = []
    for fc in free:
        v = [mpmath.mpf(0)] * ncols
        v[fc] = mpmath.mpf(1)
        for i, pc in enumerate(piv_cols):
            v[pc] = -m[i][fc]
        # rationalize: small rationals only, else keep float (marked numeric)
        rat = []
        for q in v:
            fr = Fraction(str(q)).limit_denominator(10**6)
            rat.append(fr)
        out.append(rat)
    return out


def _reify(ansatz: Ansatz, vector) -> VectorField:
    tau, xi, eta, coeffs = ansatz.components()
    binds = {c.data: const(v) for c, v in zip(coeffs, vector)}
    return VectorField(
        GEOMETRIC_COORDS,
        (substitute(tau, binds), substitute(xi, binds), substitute(eta, binds)),
    )


def dimension_profile(theta: ClassMember, d_max: int, cfg=None):
    """Nullspace dimensions for d = 0..d_max; monotone non-decreasing."""
    cfg = _as_config(cfg)
    dims = []
    for d in range(d_max + 1):
        dims.append(solve_symmetries(theta, d, cfg).dimension)
    for a, b in zip(dims, dims[1:]):
        if b < a:
            raise ExprError(f"dimension profile not monotone: {dims}")
    return dims
