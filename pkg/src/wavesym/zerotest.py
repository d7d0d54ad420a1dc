"""Probabilistic zero test with verdicts ProvenZero / LikelyZero / NonZero.

Tier 1 is structural: the canonical form is the zero constant.  Tier 2
samples at random rational points through wavesym.sampling: exact rational
arithmetic whenever the expression's transcendental atoms admit lattice
coordinates, 50-digit floats otherwise.  A NonZero verdict always carries
a witness point that re-evaluates above tolerance with honest evaluation.
"""

from __future__ import annotations

import random
from fractions import Fraction

import mpmath

from .evaluate import SingularEvaluation, InexactResult
from .expr import CONST, Expr, ExprError, ZERO
from .sampling import Chart, ExactSampler

__all__ = ["is_zero", "ZeroVerdict", "Chart", "DEFAULT_SAMPLES", "DEFAULT_TOLERANCE"]

DEFAULT_SAMPLES = 64
DEFAULT_TOLERANCE = Fraction(1, 10**30)
_RETRY_FACTOR = 10


class ZeroVerdict:
    PROVEN = "ProvenZero"
    LIKELY = "LikelyZero"
    NONZERO = "NonZero"

    __slots__ = ("status", "samples", "witness", "value", "mode")

    def __init__(self, status, samples=0, witness=None, value=None, mode="exact"):
        self.status = status
        self.samples = samples
        self.witness = witness
        self.value = value
        self.mode = mode

    @property
    def is_zero(self):
        return self.status in (self.PROVEN, self.LIKELY)

    @property
    def proven(self):
        return self.status == self.PROVEN

    def __bool__(self):
        return self.is_zero

    def __repr__(self):
        if self.status == self.PROVEN:
            return "ProvenZero"
        if self.status == self.LIKELY:
            return f"LikelyZero({self.samples}, mode={self.mode})"
        return f"NonZero(witness={self.witness}, value={self.value})"


def is_zero(
    e: Expr,
    chart: Chart | None = None,
    samples: int = DEFAULT_SAMPLES,
    tolerance=DEFAULT_TOLERANCE,
    seed: int = 0,
) -> ZeroVerdict:
    """Two-tier zero test on the given sign chart."""
    if e is ZERO:
        return ZeroVerdict(ZeroVerdict.PROVEN)
    if e.kind == CONST:
        return ZeroVerdict(ZeroVerdict.NONZERO, witness={}, value=e.data)
    chart = chart or Chart()
    sampler = ExactSampler([e], chart)
    rng = random.Random(seed)
    tol = tolerance if isinstance(tolerance, Fraction) else Fraction(tolerance)

    if not sampler.float_only:
        done = 0
        attempts = 0
        limit = samples * _RETRY_FACTOR
        while done < samples:
            if attempts >= limit:
                raise ExprError(f"could not draw {samples} non-singular samples for {e}")
            attempts += 1
            point, values = sampler.draw(rng)
            try:
                v = sampler.eval_exact(0, values)
            except SingularEvaluation:
                continue
            except InexactResult:
                return _float_pass(e, sampler, rng, samples, tol)
            if v != 0:
                if not sampler.extra_syms:
                    # honest exact witness: the drawn point itself
                    return ZeroVerdict(
                        ZeroVerdict.NONZERO, witness=point, value=v, mode="exact"
                    )
                confirmed = _confirm_nonzero(e, sampler, rng, tol, mode="exact")
                if confirmed is not None:
                    return confirmed
                # lattice sample disagreed with honest evaluation; fall back
                return _float_pass(e, sampler, rng, samples, tol)
            done += 1
        return ZeroVerdict(ZeroVerdict.LIKELY, samples=samples, mode="exact")

    return _float_pass(e, sampler, rng, samples, tol)


def _mp_tol(tol: Fraction):
    return mpmath.mpf(tol.numerator) / tol.denominator


def _confirm_nonzero(e, sampler, rng, tol, tries=12, mode="float"):
    """Back a nonzero indication with honest float evaluation."""
    bound = _mp_tol(tol)
    for _ in range(tries):
        point = {name: sampler.draw_symbol(rng, name) for name in sampler.symbols}
        try:
            r = sampler.eval_float(0, point)
        except (SingularEvaluation, ZeroDivisionError, ValueError):
            continue
        if abs(r.value) > bound and r.bound < abs(r.value) / 2:
            return ZeroVerdict(ZeroVerdict.NONZERO, witness=point, value=r.value, mode=mode)
    return None


def _float_pass(e, sampler, rng, samples, tol):
    bound = _mp_tol(tol)
    done = 0
    attempts = 0
    limit = samples * _RETRY_FACTOR
    while done < samples:
        if attempts >= limit:
            raise ExprError(f"could not draw {samples} non-singular samples for {e}")
        attempts += 1
        point = {name: sampler.draw_symbol(rng, name) for name in sampler.symbols}
        try:
            r = sampler.eval_float(0, point)
        except (SingularEvaluation, ZeroDivisionError, ValueError):
            continue
        if abs(r.value) > bound and r.bound < abs(r.value) / 2:
            return ZeroVerdict(ZeroVerdict.NONZERO, witness=point, value=r.value, mode="float")
        done += 1
    return ZeroVerdict(ZeroVerdict.LIKELY, samples=samples, mode="float")
