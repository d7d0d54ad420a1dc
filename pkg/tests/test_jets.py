"""Total derivatives, second prolongation, commutators."""

import random
from fractions import Fraction

import mpmath
import pytest

from wavesym import (
    ExprError,
    VectorField,
    commutator,
    const,
    evaluate,
    mul,
    parse,
    prolong2,
    sym,
    total_derivative,
)
from wavesym.expr import ZERO

C3 = ("t", "x", "u")


def vf(*comps):
    return VectorField(C3, comps)


class TestTotalDerivative:
    def test_first_order(self):
        assert total_derivative(sym("u"), "t") is sym("u_t")
        assert total_derivative(parse("x*u_x"), "x") is parse("u_x + x*u_xx")

    def test_pure_shift_prolongation(self):
        # for tau = xi = 0, eta = psi(x), the xx-coefficient is psi_xx
        psi = parse("x^3")
        d2 = total_derivative(total_derivative(psi, "x"), "x")
        assert d2 is parse("6*x")

    def test_rejects_second_order_input(self):
        with pytest.raises(ExprError):
            total_derivative(parse("u_xx"), "x")

    def test_rejects_bad_direction(self):
        with pytest.raises(ExprError):
            total_derivative(sym("u"), "u")


class TestProlong2:
    def test_kernel_field(self):
        p = prolong2(vf("1", "0", "0"))
        assert p.eta_t is ZERO and p.eta_x is ZERO
        assert p.eta_tt is ZERO and p.eta_tx is ZERO and p.eta_xx is ZERO

    def test_uniform_scaling(self):
        p = prolong2(vf("t", "x", "0"))
        assert p.eta_tt is parse("-2*u_tt")
        assert p.eta_xx is parse("-2*u_xx")
        assert p.eta_tx is parse("-2*u_tx")

    def test_uniform_scaling_against_finite_differences(self):
        # independent check of eta_tt for Q = t dt + x dx on a sampled
        # smooth u: under (t,x) -> (L t, L x) the pulled function has
        # second derivative L^-2 u_tt at the image of the jet point, so
        # d/deps at L = 1+eps equals -2 u_tt there
        u_tt = parse("-sin(t)*exp(x) + 2*x")
        pt = {"t": Fraction(2, 5), "x": Fraction(1, 3)}
        v0 = evaluate(u_tt, pt).value
        eps = mpmath.mpf(1) / 10**9
        v1 = v0 / (1 + eps) ** 2
        fd = (v1 - v0) / eps
        assert abs(fd - (-2) * v0) < 1e-6

    def test_linear_in_u(self):
        p = prolong2(vf("0", "0", "u"))
        assert p.eta_tt is sym("u_tt")
        assert p.eta_xx is sym("u_xx")
        assert p.eta_tx is sym("u_tx")

    def test_linearity_over_rational_constants(self):
        rng = random.Random(4)
        for _ in range(10):
            q1 = _random_field(rng)
            q2 = _random_field(rng)
            a = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
            b = Fraction(rng.randint(-5, 5), rng.randint(1, 5))
            lhs = prolong2(q1.scale(a) + q2.scale(b))
            p1, p2 = prolong2(q1), prolong2(q2)
            for attr in ("eta_t", "eta_x", "eta_tt", "eta_tx", "eta_xx"):
                want = mul(const(a), getattr(p1, attr)) + mul(const(b), getattr(p2, attr))
                assert getattr(lhs, attr) is want

    def test_eta_tt_affine_in_second_jets(self):
        from wavesym import differentiate

        q = vf("t^2 + x", "t*x", "u*x + t")
        p = prolong2(q)
        for jet in ("u_tt", "u_tx", "u_xx"):
            second = differentiate(differentiate(p.eta_tt, jet), jet)
            assert second is ZERO

    def test_requires_geometric_coordinates(self):
        with pytest.raises(ExprError):
            prolong2(VectorField(("t", "x"), ("1", "0")))


class TestCommutator:
    def test_self_commutator_vanishes(self):
        q = vf("t^2", "x*t", "u")
        assert commutator(q, q).is_zero()

    def test_mismatched_coordinates(self):
        with pytest.raises(ExprError):
            commutator(vf("1", "0", "0"), VectorField(("t", "x"), ("1", "0")))

    def test_antisymmetry(self):
        rng = random.Random(9)
        for _ in range(20):
            q1, q2 = _random_field(rng), _random_field(rng)
            s = commutator(q1, q2) + commutator(q2, q1)
            assert s.is_zero()

    def test_jacobi(self):
        rng = random.Random(10)
        for _ in range(20):
            q1, q2, q3 = (_random_field(rng) for _ in range(3))
            s = (
                commutator(q1, commutator(q2, q3))
                + commutator(q2, commutator(q3, q1))
                + commutator(q3, commutator(q1, q2))
            )
            assert s.is_zero()


def _random_field(rng):
    def poly():
        terms = []
        for _ in range(rng.randint(1, 3)):
            c = rng.randint(-4, 4)
            i, j, k = rng.randint(0, 2), rng.randint(0, 2), rng.randint(0, 1)
            terms.append(f"{c}*t^{i}*x^{j}*u^{k}")
        return "+".join(terms)

    return vf(poly(), poly(), poly())
