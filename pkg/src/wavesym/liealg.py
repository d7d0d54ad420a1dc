"""Finite-dimensional spans of vector fields: linear independence,
closure under commutator, structure constants, isomorphism invariants,
and subspace comparison, all over exact rationals.

Numeric rank decisions come from evaluating components at random rational
points (exactly, via the sampling lattice); every dependency or expansion
the numerics suggest is confirmed symbolically before it is believed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .evaluate import InexactResult
from .expr import ExprError, ZERO
from .jets import VectorField, commutator
from .linalg import nullspace, rank, solve
from .sampling import Chart, ExactSampler
from .zerotest import is_zero

__all__ = ["LieAlgebraSpan", "NotClosed", "closure_check", "algebra_invariants", "subspace_equal", "contains", "AlgebraInvariants"]

_MAX_RESAMPLE = 4


class NotClosed:
    """Witness that a span is not closed: offending pair and residual."""

    def __init__(self, i, j, field):
        self.pair = (i, j)
        self.field = field

    def __repr__(self):
        return f"NotClosed(pair={self.pair}, residual={self.field})"


class DependentBasis(ExprError):
    pass


def _component_matrix(fields, npoints, seed, chart=None):
    """Stacked exact evaluations: one row per field, npoints x ncomp cols."""
    exprs = [c for f in fields for c in f.comps]
    sampler = ExactSampler(exprs, chart or Chart())
    if sampler.float_only:
        raise ExprError("field components require float evaluation; exact rank unavailable")
    rng = random.Random(seed)
    ncomp = len(fields[0].comps)
    cols = [[] for _ in fields]
    got = 0
    attempts = 0
    while got < npoints:
        if attempts > 20 * npoints:
            raise ExprError("could not draw enough non-singular points for rank test")
        attempts += 1
        _, values = sampler.draw(rng)
        row = sampler.eval_row(values)
        if row is None:
            continue
        for k in range(len(fields)):
            cols[k].extend(row[k * ncomp : (k + 1) * ncomp])
        got += 1
    return cols


def _symbolically_zero(field: VectorField, chart=None) -> bool:
    return all(is_zero(c, chart=chart).is_zero for c in field.comps)


class LieAlgebraSpan:
    """Basis of vector fields on common coordinates, checked independent."""

    def __init__(self, basis, seed: int = 0, chart=None, check_independent=True):
        basis = [b for b in basis]
        if not basis:
            raise ExprError("empty basis")
        coords = basis[0].coords
        for b in basis:
            if b.coords != coords:
                raise ExprError("basis fields on different coordinate lists")
        self.basis = basis
        self.coords = coords
        self.seed = seed
        self.chart = chart or Chart()
        self.structure = None
        if check_independent and not self._independent():
            raise DependentBasis(f"basis is linearly dependent: {basis}")

    def __len__(self):
        return len(self.basis)

    def _matrix(self, extra=(), scale=3):
        fields = list(self.basis) + list(extra)
        npoints = max(scale * len(fields), 4)
        return _component_matrix(fields, npoints, self.seed, self.chart)

    def _independent(self) -> bool:
        for trial in range(_MAX_RESAMPLE):
            self.seed += trial
            m = self._matrix()
            if rank(m) == len(self.basis):
                return True
            # numeric dependency; confirm symbolically before believing it
            ker = nullspace(list(map(list, zip(*m))))
            for vec in ker:
                combo = _combine(self.basis, vec)
                if _symbolically_zero(combo, self.chart):
                    return False
        return True

    def contains(self, q: VectorField) -> bool:
        return contains(self, q)


def _combine(fields, coeffs) -> VectorField:
    out = VectorField.zero(fields[0].coords)
    for f, c in zip(fields, coeffs):
        if c:
            out = out + f.scale(c)
    return out


def closure_check(span: LieAlgebraSpan):
    """Exact structure constants, or NotClosed with the offending pair.

    [b_i, b_j] = sum_k c[i][j][k] b_k; every representation found
    numerically is confirmed symbolically.
    """
    n = len(span.basis)
    cube = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            com = commutator(span.basis[i], span.basis[j])
            coeffs = _represent(span, com)
            if coeffs is None:
                return NotClosed(i, j, com)
            for k, c in enumerate(coeffs):
                cube[i][j][k] = c
                cube[j][i][k] = -c
    span.structure = cube
    return cube


def _represent(span: LieAlgebraSpan, q: VectorField, seed_shift=0):
    """Coefficients of q in span's basis, or None; symbolically confirmed."""
    if q.coords != span.coords:
        raise ExprError("coordinate mismatch")
    if _symbolically_zero(q, span.chart):
        return [Fraction(0)] * len(span.basis)
    for trial in range(_MAX_RESAMPLE):
        try:
            cols = _component_matrix(
                list(span.basis) + [q],
                max(3 * (len(span.basis) + 1), 4),
                span.seed + seed_shift + trial,
                span.chart,
            )
        except InexactResult:
            raise
        a_cols = cols[:-1]
        b = cols[-1]
        x = solve(list(map(list, zip(*a_cols))), b)
        if x is None:
            continue
        residual = q - _combine(span.basis, x)
        if _symbolically_zero(residual, span.chart):
            return x
    return None


def contains(span: LieAlgebraSpan, q: VectorField) -> bool:
    return _represent(span, q, seed_shift=101) is not None


def subspace_equal(s1: LieAlgebraSpan, s2: LieAlgebraSpan) -> bool:
    """Mutual containment via exact linear algebra plus symbolic checks."""
    if s1.coords != s2.coords:
        raise ExprError("coordinate mismatch")
    if len(s1.basis) != len(s2.basis):
        return False
    return all(contains(s2, b) for b in s1.basis) and all(contains(s1, b) for b in s2.basis)


class AlgebraInvariants:
    __slots__ = ("dim", "derived_dim", "center_dim", "killing_signature")

    def __init__(self, dim, derived_dim, center_dim, killing_signature):
        self.dim = dim
        self.derived_dim = derived_dim
        self.center_dim = center_dim
        self.killing_signature = killing_signature

    def as_tuple(self):
        return (self.dim, self.derived_dim, self.center_dim, self.killing_signature)

    def __eq__(self, other):
        return isinstance(other, AlgebraInvariants) and self.as_tuple() == other.as_tuple()

    def __hash__(self):
        return hash(self.as_tuple())

    def __repr__(self):
        return (
            f"AlgebraInvariants(dim={self.dim}, derived_dim={self.derived_dim}, "
            f"center_dim={self.center_dim}, killing_signature={self.killing_signature})"
        )


def algebra_invariants(span: LieAlgebraSpan) -> AlgebraInvariants:
    """dim, dim[g,g], dim center, Killing signature (n+, n0, n-), exact."""
    cube = span.structure
    if cube is None:
        cube = closure_check(span)
        if isinstance(cube, NotClosed):
            raise ExprError(f"span is not closed: {cube}")
    n = len(span.basis)

    derived_rows = [cube[i][j] for i in range(n) for j in range(i + 1, n)]
    derived_dim = rank(derived_rows) if derived_rows else 0

    # center: v with sum_i v_i c[i][j][k] = 0 for all j, k
    center_rows = []
    for j in range(n):
        for k in range(n):
            center_rows.append([cube[i][j][k] for i in range(n)])
    center_dim = len(nullspace(center_rows)) if center_rows else n

    # Killing form K[a][b] = sum_{c,d} C(a,c,d) C(b,d,c)
    killing = [[Fraction(0)] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            s = Fraction(0)
            for c in range(n):
                for d in range(n):
                    s += cube[a][c][d] * cube[b][d][c]
            killing[a][b] = s
            killing[b][a] = s
    sig = _signature(killing)
    return AlgebraInvariants(n, derived_dim, center_dim, sig)


def _signature(sym_matrix):
    """Signature (n+, n0, n-) by exact symmetric congruence reduction."""
    m = [row[:] for row in sym_matrix]
    n = len(m)
    plus = minus = zero = 0
    idx = list(range(n))
    while idx:
        # find a nonzero diagonal entry, manufacturing one if needed
        pi = None
        for i in idx:
            if m[i][i] != 0:
                pi = i
                break
        if pi is None:
            pair = None
            for i in idx:
                for j in idx:
                    if i != j and m[i][j] != 0:
                        pair = (i, j)
                        break
                if pair:
                    break
            if pair is None:
                zero += len(idx)
                break
            i, j = pair
            # congruence: row/col i += row/col j makes m[i][i] = 2 m[i][j] != 0
            for k in range(n):
                m[i][k] += m[j][k]
            for k in range(n):
                m[k][i] += m[k][j]
            continue
        d = m[pi][pi]
        if d > 0:
            plus += 1
        else:
            minus += 1
        idx.remove(pi)
        for i in idx:
            if m[i][pi] != 0:
                c = Fraction(m[i][pi], d)
                for k in range(n):
                    m[i][k] -= c * m[pi][k]
                for k in range(n):
                    m[k][i] -= c * m[k][pi]
    return (plus, zero, minus)
