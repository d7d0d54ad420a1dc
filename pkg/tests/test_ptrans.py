"""Point transformations, admissibility, groupoid operations."""

import pytest

from wavesym import (
    AdmissibleTransformation,
    Chart,
    ClassMember,
    NotAdmissible,
    PointTransformation,
    VectorField,
    compose_admissible,
    identity_at,
    identity_transformation,
    invert_admissible,
    is_symmetry,
    is_zero,
    parse,
    pushforward_field,
    pushforward_theta,
    raw_identity_residual,
    sub,
    verify_admissible,
)

CH = Chart({"u": "+", "x": "+"})


def swap_map():
    return PointTransformation(
        "x", "t", "u", inverse=PointTransformation("x", "t", "u", check=False)
    )


class TestPointTransformation:
    def test_inverse_round_trip_checked(self):
        with pytest.raises(NotAdmissible):
            PointTransformation("2*t", "x", "u",
                                inverse=PointTransformation("t", "x", "u", check=False))

    def test_degenerate_jacobian_rejected(self):
        with pytest.raises(NotAdmissible):
            PointTransformation("t", "t", "u")

    def test_json_round_trip(self):
        phi = swap_map()
        again = PointTransformation.from_json(phi.to_json())
        assert again.T is phi.T and again.inverse.X is phi.inverse.X


class TestVerifyAdmissible:
    def test_swap_instance(self):
        theta = ClassMember("u", "u^3")
        target = ClassMember("1/u", "-u^2")
        rep = verify_admissible(theta, swap_map(), target)
        assert rep.verified and rep.mode == "exact"

    def test_identity_is_unit(self):
        theta = ClassMember("u", "u^3")
        rep = verify_admissible(theta, identity_transformation(), theta)
        assert rep.verified

    def test_exponential_time_map(self):
        theta = ClassMember("u^(-4)", "x*u^(-3) + u")
        phi = PointTransformation(
            "1/2*exp(2*t)", "x", "exp(t)*u",
            inverse=PointTransformation("1/2*ln(2*t)", "x", "u*(2*t)^(-1/2)", check=False),
        )
        target = ClassMember("u^(-4)", "x*u^(-3)")
        rep = verify_admissible(theta, phi, target)
        assert rep.verified and rep.mode == "exact"

    def test_wrong_target_fails(self):
        theta = ClassMember("u", "u^3")
        wrong = ClassMember("u", "u^3")
        rep = verify_admissible(theta, swap_map(), wrong)
        assert not rep.verified
        assert "eq_3_8" in rep.failures() or "eq_3_12" in rep.failures()

    def test_report_lists_all_conditions(self):
        theta = ClassMember("u", "u^3")
        rep = verify_admissible(theta, identity_transformation(), theta)
        assert set(rep.conditions) == set(rep.ORDER)


class TestRawIdentityCrossCheck:
    # the raw second-order identity route on three instances
    def test_swap(self):
        theta = ClassMember("u", "u^3")
        target = ClassMember("1/u", "-u^2")
        assert is_zero(raw_identity_residual(theta, swap_map(), target), chart=CH).is_zero

    def test_exponential_time_map(self):
        theta = ClassMember("u^(-4)", "x*u^(-3) + u")
        phi = PointTransformation(
            "1/2*exp(2*t)", "x", "exp(t)*u",
            inverse=PointTransformation("1/2*ln(2*t)", "x", "u*(2*t)^(-1/2)", check=False),
        )
        target = ClassMember("u^(-4)", "x*u^(-3)")
        assert is_zero(raw_identity_residual(theta, phi, target), chart=CH).is_zero

    def test_scaling(self):
        theta = ClassMember("u", "u^3")
        phi = PointTransformation(
            "2*t", "x", "u", inverse=PointTransformation("t/2", "x", "u", check=False)
        )
        target = ClassMember("u/4", "u^3/4")
        assert is_zero(raw_identity_residual(theta, phi, target), chart=CH).is_zero

    def test_detects_non_admissible(self):
        theta = ClassMember("u", "u^3")
        bad_target = ClassMember("u", "u^2+u^3")
        r = raw_identity_residual(theta, identity_transformation(), bad_target)
        assert not is_zero(r, chart=CH).is_zero


class TestPushforwardTheta:
    def test_identity(self):
        theta = ClassMember("u", "u^3")
        out = pushforward_theta(identity_transformation(), theta)
        assert out.f is theta.f and out.g is theta.g

    def test_group_scaling(self):
        theta = ClassMember("u", "u^3")
        phi = PointTransformation(
            "2*t", "x", "u", inverse=PointTransformation("t/2", "x", "u", check=False)
        )
        out = pushforward_theta(phi, theta)
        assert out.f is parse("u/4")
        assert out.g is parse("u^3/4")

    def test_swap_on_quartic(self):
        theta = ClassMember("u^(-4)", "0")
        out = pushforward_theta(swap_map(), theta)
        assert out.f is parse("u^4") and out.g is parse("0")

    def test_requires_inverse(self):
        theta = ClassMember("u", "u^3")
        with pytest.raises(NotAdmissible):
            pushforward_theta(PointTransformation("2*t", "x", "u"), theta)

    def test_rejects_maps_leaving_the_class(self):
        theta = ClassMember("u", "u^3")
        phi = PointTransformation(
            "t + x", "t - x", "u",
            inverse=PointTransformation("(t+x)/2", "(t-x)/2", "u", check=False),
        )
        with pytest.raises(NotAdmissible):
            pushforward_theta(phi, theta)


class TestGroupoid:
    def make(self):
        theta = ClassMember("u", "u^3")
        target = ClassMember("1/u", "-u^2")
        return AdmissibleTransformation(theta, swap_map(), target)

    def test_unit_laws(self):
        arrow = self.make()
        right = compose_admissible(arrow, identity_at(arrow.target))
        left = compose_admissible(identity_at(arrow.source), arrow)
        for c in (right, left):
            assert c.source == arrow.source and c.target == arrow.target

    def test_inverse_law(self):
        arrow = self.make()
        inv = invert_admissible(arrow)
        loop = compose_admissible(arrow, inv)
        assert loop.source == loop.target == arrow.source
        for comp, name in ((loop.map.T, "t"), (loop.map.X, "x"), (loop.map.U, "u")):
            assert is_zero(sub(comp, parse(name)), chart=CH).is_zero

    def test_non_composable_pair(self):
        arrow = self.make()
        other = AdmissibleTransformation(
            ClassMember("u^2", "u^3"), identity_transformation(), ClassMember("u^2", "u^3"),
            verify=False,
        )
        with pytest.raises(NotAdmissible):
            compose_admissible(arrow, other)

    def test_construction_verifies(self):
        with pytest.raises(NotAdmissible):
            AdmissibleTransformation(
                ClassMember("u", "u^3"), swap_map(), ClassMember("u", "u^3")
            )


class TestPushforwardField:
    def test_time_shift(self):
        phi = PointTransformation(
            "t + 5", "x", "u", inverse=PointTransformation("t - 5", "x", "u", check=False)
        )
        q = VectorField(("t", "x", "u"), ("1", "0", "0"))
        assert pushforward_field(phi, q) == q

    def test_shift_in_u(self):
        phi = PointTransformation(
            "t", "x", "u + x^2", inverse=PointTransformation("t", "x", "u - x^2", check=False)
        )
        q = VectorField(("t", "x", "u"), ("0", "0", "u"))
        out = pushforward_field(phi, q)
        assert out.component("u") is parse("u - x^2")

    def test_conjugates_symmetries(self):
        theta = ClassMember("u", "u^3")
        target = ClassMember("1/u", "-u^2")
        dx = VectorField(("t", "x", "u"), ("0", "1", "0"))
        assert is_symmetry(dx, theta).is_symmetry
        pushed = pushforward_field(swap_map(), dx)
        assert is_symmetry(pushed, target).is_symmetry
