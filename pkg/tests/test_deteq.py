"""Class membership and the determining equations for Lie symmetries."""

import random

import pytest

from wavesym import (
    ClassMember,
    MemberError,
    VectorField,
    invariance_residuals,
    is_symmetry,
    is_zero,
    parse,
)
from wavesym.zerotest import ZeroVerdict

C3 = ("t", "x", "u")


def vf(*comps):
    return VectorField(C3, comps)


DT = vf("1", "0", "0")


class TestClassMember:
    def test_f_must_not_vanish(self):
        with pytest.raises(MemberError):
            ClassMember("0", "u^2")

    def test_nonlinearity_required(self):
        with pytest.raises(MemberError):
            ClassMember("1", "u")  # f_u = 0 and g_uu = 0
        ClassMember("u", "0")      # f_u != 0 is enough
        ClassMember("1", "u^3")    # g_uu != 0 is enough

    def test_chart_rewrites_abs(self):
        theta = ClassMember("abs(u)^p", "0", chart={"u": "+", "x": "+"})
        assert theta.f is parse("u^p")

    def test_json_round_trip(self):
        theta = ClassMember("u^(-4)", "x*u^(-3)", chart={"u": "+", "x": "+"})
        again = ClassMember.from_json(theta.to_json())
        assert again == theta


class TestResiduals:
    def test_kernel_field_always_passes(self):
        rng = random.Random(2)
        for _ in range(10):
            theta = _random_member(rng)
            for r in invariance_residuals(DT, theta):
                assert is_zero(r, chart=theta.chart).proven

    def test_power_law_scaling(self):
        theta = ClassMember("x*u", "x^2*u^2")
        q = vf("-t", "0", "2*u")
        for r in invariance_residuals(q, theta):
            assert is_zero(r, chart=theta.chart).proven

    def test_shift_detects_x_dependence(self):
        dx = vf("0", "1", "0")
        ok = ClassMember("u", "u")
        for r in invariance_residuals(dx, ok):
            assert is_zero(r, chart=ok.chart).is_zero
        bad = ClassMember("x*u", "u")
        r4 = invariance_residuals(dx, bad)[3]
        assert is_zero(r4, chart=bad.chart).status == ZeroVerdict.NONZERO

    def test_projectability_enforced(self):
        theta = ClassMember("u", "u^2")
        with pytest.raises(MemberError):
            invariance_residuals(vf("u", "0", "0"), theta)
        with pytest.raises(MemberError):
            invariance_residuals(vf("0", "0", "u^2"), theta)


class TestIsSymmetry:
    def test_shift_on_autonomous_member(self):
        assert is_symmetry(vf("0", "1", "0"), ClassMember("u", "u^2")).is_symmetry

    def test_boost(self):
        theta = ClassMember("1", "u^3")
        assert is_symmetry(vf("x", "t", "0"), theta).is_symmetry

    def test_time_scaling_fails(self):
        theta = ClassMember("1", "u^3")
        rep = is_symmetry(vf("t", "0", "0"), theta)
        assert not rep.is_symmetry

    def test_route_equivalence_random(self):
        # both routes must agree (an internal error is raised otherwise)
        rng = random.Random(7)
        agree = 0
        for _ in range(200):
            theta = _random_member(rng)
            q = _random_candidate(rng)
            rep = is_symmetry(q, theta)
            agree += 1
            assert rep.is_symmetry == all(v.is_zero for v in rep.residuals)
        assert agree == 200


def _random_member(rng):
    fs = ["u", "u^2+1", "x*u", "exp(u)", "x^2*u^(-1)", "u^(-4)", "x + u^2"]
    gs = ["0", "u^2", "u^3 + x", "x*u^2", "exp(u)", "u^(-3)*x"]
    while True:
        try:
            return ClassMember(rng.choice(fs), rng.choice(gs))
        except MemberError:
            continue


def _random_candidate(rng):
    comps = []
    for kind in ("t", "x", "u"):
        c = rng.randint(-2, 2)
        mono = rng.choice(["1", "t", "x", "t*x", "t^2", "x^2"])
        if kind == "u":
            mono = rng.choice(["u", "t*u", "x*u", "1", "t", "x"])
        comps.append(f"{c}*{mono}")
    return vf(*comps)
