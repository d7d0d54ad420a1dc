"""Lie algebra spans: closure, invariants, subspace comparison."""

import random
from fractions import Fraction

import pytest

from wavesym import (
    LieAlgebraSpan,
    NotClosed,
    VectorField,
    algebra_invariants,
    closure_check,
    contains,
    subspace_equal,
)
from wavesym.liealg import DependentBasis

C3 = ("t", "x", "u")


def vf(*comps):
    return VectorField(C3, comps)


def span(*fields):
    return LieAlgebraSpan([vf(*c) for c in fields])


class TestClosure:
    def test_projective_time_algebra(self):
        s = span(("1", "0", "0"), ("2*t", "0", "u"), ("t^2", "0", "t*u"))
        cube = closure_check(s)
        assert not isinstance(cube, NotClosed)
        # [b1,b2] = 2 b1, [b1,b3] = b2, [b2,b3] = 2 b3
        assert cube[0][1] == [Fraction(2), Fraction(0), Fraction(0)]
        assert cube[0][2] == [Fraction(0), Fraction(1), Fraction(0)]
        assert cube[1][2] == [Fraction(0), Fraction(0), Fraction(2)]

    def test_abelian(self):
        s = span(("1", "0", "0"), ("0", "1", "0"))
        cube = closure_check(s)
        assert all(c == 0 for plane in cube for row in plane for c in row)

    def test_not_closed_witness(self):
        nc = closure_check(span(("1", "0", "0"), ("t^2", "0", "0")))
        assert isinstance(nc, NotClosed)
        assert nc.pair == (0, 1)
        assert nc.field.component("t") is not None

    def test_dependent_basis_rejected(self):
        with pytest.raises(DependentBasis):
            span(("1", "0", "0"), ("2", "0", "0"))


class TestInvariants:
    def test_abelian_two_dim(self):
        s = span(("1", "0", "0"), ("0", "1", "0"))
        inv = algebra_invariants(s)
        assert inv.as_tuple() == (2, 0, 2, (0, 2, 0))

    def test_sl2(self):
        s = span(("1", "0", "0"), ("2*t", "0", "u"), ("t^2", "0", "t*u"))
        inv = algebra_invariants(s)
        assert (inv.dim, inv.derived_dim, inv.center_dim) == (3, 3, 0)
        assert inv.killing_signature == (2, 0, 1)

    def test_poincare_dim3(self):
        s = span(("1", "0", "0"), ("0", "1", "0"), ("x", "t", "0"))
        inv = algebra_invariants(s)
        assert inv.dim == 3 and inv.derived_dim == 2

    def test_invariant_under_basis_change(self):
        rng = random.Random(8)
        base = [("1", "0", "0"), ("2*t", "0", "u"), ("t^2", "0", "t*u")]
        s = span(*base)
        ref = algebra_invariants(s).as_tuple()
        fields = [vf(*c) for c in base]
        for _ in range(5):
            # random invertible rational change of basis
            while True:
                m = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
                det = (
                    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                    - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                    + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
                )
                if det != 0:
                    break
            new_basis = []
            for row in m:
                f = VectorField.zero(C3)
                for c, b in zip(row, fields):
                    if c:
                        f = f + b.scale(c)
                new_basis.append(f)
            s2 = LieAlgebraSpan(new_basis)
            assert algebra_invariants(s2).as_tuple() == ref


class TestSubspace:
    def test_equal_up_to_order(self):
        s1 = span(("1", "0", "0"), ("0", "1", "0"))
        s2 = span(("0", "1", "0"), ("1", "0", "0"))
        assert subspace_equal(s1, s2)

    def test_contains(self):
        s = span(("1", "0", "0"), ("2*t", "0", "u"), ("t^2", "0", "t*u"),
                 ("0", "1", "0"), ("0", "2*x", "-u"))
        assert contains(s, vf("0", "2*x", "-u"))
        assert contains(s, vf("4*t", "2*x", "u"))  # combination
        assert not contains(s, vf("0", "x^2", "0"))

    def test_unequal_different_dimension(self):
        s1 = span(("1", "0", "0"))
        s2 = span(("1", "0", "0"), ("0", "1", "0"))
        assert not subspace_equal(s1, s2)

    def test_transcendental_components(self):
        s1 = span(("exp(2*t)", "0", "u*exp(2*t)"), ("exp(-2*t)", "0", "-u*exp(-2*t)"))
        s2 = span(
            ("exp(2*t)+exp(-2*t)", "0", "u*exp(2*t)-u*exp(-2*t)"),
            ("exp(2*t)-exp(-2*t)", "0", "u*exp(2*t)+u*exp(-2*t)"),
        )
        assert subspace_equal(s1, s2)
