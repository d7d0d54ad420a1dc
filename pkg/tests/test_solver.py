"""The exact symmetry solver."""

import pytest

from wavesym import (
    ClassMember,
    ExprError,
    LieAlgebraSpan,
    SolverConfig,
    VectorField,
    dimension_profile,
    is_symmetry,
    solve_symmetries,
    subspace_equal,
)
from wavesym.solver import Ansatz

C3 = ("t", "x", "u")


def vf(*comps):
    return VectorField(C3, comps)


def span_of(*fields):
    return LieAlgebraSpan([vf(*c) for c in fields])


class TestAnsatz:
    def test_unknown_count(self):
        for d in range(4):
            a = Ansatz(d)
            assert a.n_unknowns == 4 * (d + 1) * (d + 2) // 2

    def test_extension_blocks(self):
        a = Ansatz(1, ("exp2t",))
        assert a.n_unknowns == 3 * 4 * 3  # 3 wave blocks x 4 components x 3 monomials

    def test_negative_degree_rejected(self):
        with pytest.raises(ExprError):
            Ansatz(-1)


class TestConfig:
    def test_json(self):
        cfg = SolverConfig.from_json('{"seed": 3, "oversample": 4.0, "mode": "exact", "extra_basis": ["exp2t"]}')
        assert cfg.seed == 3 and cfg.oversample == 4.0 and cfg.extra_basis == ("exp2t",)

    def test_validation(self):
        with pytest.raises(ExprError):
            SolverConfig(oversample=0.5)
        with pytest.raises(ExprError):
            SolverConfig(mode="approximate")
        with pytest.raises(ExprError):
            SolverConfig(extra_basis=("waves",))


class TestSolve:
    def test_quartic_decay(self):
        res = solve_symmetries(ClassMember("u^(-4)", "0"), 2)
        assert res.dimension == 5 and res.closed
        want = span_of(
            ("1", "0", "0"), ("2*t", "0", "u"), ("t^2", "0", "t*u"),
            ("0", "1", "0"), ("0", "2*x", "-u"),
        )
        assert subspace_equal(res.span, want)

    def test_soundness(self):
        theta = ClassMember("x*u", "u^3 + x")
        res = solve_symmetries(theta, 2)
        for q in res.span.basis:
            assert is_symmetry(q, theta).is_symmetry

    def test_kernel_always_found(self):
        for f, g in [("u", "u^3"), ("exp(u)", "x^2*exp(u)"), ("x+u^2", "u^3")]:
            res = solve_symmetries(ClassMember(f, g), 1)
            assert res.span.contains(vf("1", "0", "0"))

    def test_determinism(self):
        theta = ClassMember("u^4", "0")
        a = solve_symmetries(theta, 2, SolverConfig(seed=42))
        b = solve_symmetries(theta, 2, SolverConfig(seed=42))
        assert [q.comps for q in a.span.basis] == [q.comps for q in b.span.basis]

    def test_exact_mode_rejects_float_members(self):
        theta = ClassMember("u^2 + 1", "arctan(x)*u^2")
        with pytest.raises(ExprError):
            solve_symmetries(theta, 1, SolverConfig(mode="exact"))

    def test_float_mode(self):
        res = solve_symmetries(ClassMember("u", "u^2"), 1, SolverConfig(mode="float"))
        assert res.mode == "float"
        assert res.dimension >= 2  # d_t and d_x at least


class TestProfile:
    def test_monotone(self):
        dims = dimension_profile(ClassMember("u^(-4)", "0"), 3)
        assert dims == sorted(dims)
        assert dims[2] == 5 and dims[3] == 5  # stabilized

    def test_generic_member_kernel_only(self):
        dims = dimension_profile(ClassMember("exp(x)*u", "u^3 + x"), 2)
        assert dims == [1, 1, 1]
