"""Tests for the damped-recursion bounds and their supporting checks."""
from __future__ import annotations

import math

import numpy as np
import pytest

from steprates.recursions import (
    CertifiedLambda,
    ClassicalParams,
    FunctionDescriptor,
    PreconditionError,
    RecursionSpec,
    check_convexity,
    classical_bound,
    classical_lambda,
    classical_spec,
    expansion_bound,
    extend_bound,
    find_lambda_constant,
    forgetting_bound,
    forgetting_factor,
    general_bound,
    iterate_recursion_exact,
    recursion_convexity,
    tech_inequality_suite,
)


def dyadic_spec(K: int = 16) -> RecursionSpec:
    return RecursionSpec(
        s=FunctionDescriptor(fn=lambda x: 2.0, label="s=2"),
        t=FunctionDescriptor(fn=lambda x: 4.0, label="t=4"),
        b=float,
        interval=(0.0, float(K)),
        horizon=K,
        ratio=FunctionDescriptor(fn=lambda x: 0.5, derivative=lambda x: 0.0, label="1/2"),
    )


def test_exact_iterates_dyadic():
    assert iterate_recursion_exact(dyadic_spec(), 1.0, 3) == [1.0, 0.75, 0.625, 0.5625]


def test_expansion_matches_double_loop_oracle():
    spec = dyadic_spec()
    assert expansion_bound(spec, 1.0, 2) == pytest.approx(0.625, rel=1e-15)
    assert expansion_bound(spec, 0.0, 2) == pytest.approx(0.375, rel=1e-15)


def test_expansion_equals_iteration_on_random_specs():
    rng = np.random.default_rng(11)
    for _ in range(25):
        c = float(rng.uniform(0.5, 2.5))
        gamma = c + float(rng.uniform(0.5, 5.0))
        params = ClassicalParams(
            c=c, d=float(rng.uniform(0.2, 4.0)), nu=1.0,
            q=c * float(rng.uniform(0.1, 0.8)), gamma=gamma,
        )
        K = int(rng.integers(2, 200))
        spec = classical_spec(params, K)
        a0 = float(rng.uniform(0.0, 3.0))
        assert expansion_bound(spec, a0, K) == pytest.approx(
            iterate_recursion_exact(spec, a0, K)[K], rel=1e-10
        )


def test_lambda_certificate_dyadic():
    spec = dyadic_spec(K=32)
    cert = find_lambda_constant(spec)
    assert cert.lam == 1.0
    assert cert.certified_horizon == 32
    assert cert.condition_margin == 0.0


def test_general_bound_dyadic_values_and_tightness():
    spec = dyadic_spec()
    cert = find_lambda_constant(spec)
    assert general_bound(spec, cert, 1.0, 0) == pytest.approx(0.75, rel=1e-15)
    assert general_bound(spec, cert, 1.0, 1) == pytest.approx(0.625, rel=1e-15)
    exact = iterate_recursion_exact(spec, 1.0, 16)
    for k in range(16):
        assert general_bound(spec, cert, 1.0, k) == pytest.approx(
            exact[k + 1], rel=1e-12
        )


def test_general_bound_second_term_vanishes_at_fixed_point():
    spec = dyadic_spec()
    cert = find_lambda_constant(spec)
    a0 = cert.lam * spec.r(spec.b(0))
    for k in (0, 3, 9):
        assert general_bound(spec, cert, a0, k) == cert.lam * spec.r(spec.b(k + 1))


def test_general_bound_rejects_uncertified_index():
    spec = dyadic_spec(K=8)
    cert = find_lambda_constant(spec)
    with pytest.raises(PreconditionError):
        general_bound(spec, cert, 1.0, 8)


def test_classical_lambda_values():
    assert classical_lambda(
        ClassicalParams(c=1.0, d=1.0, nu=0.5, q=0.25, gamma=4.0)
    ) == pytest.approx(8.0 / 7.0, rel=1e-15)
    assert classical_lambda(
        ClassicalParams(c=2.0, d=1.0, nu=1.0, q=1.0, gamma=2.0)
    ) == pytest.approx(2.0, rel=1e-15)
    with pytest.raises(PreconditionError):
        classical_lambda(ClassicalParams(c=1.0, d=1.0, nu=1.0, q=1.5, gamma=3.0))


def test_classical_bound_nu1_examples():
    params = ClassicalParams(c=2.0, d=1.0, nu=1.0, q=1.0, gamma=2.0)
    assert classical_bound(params, 0.0, 0) == pytest.approx(1.0 / 3.0, rel=1e-15)
    assert classical_bound(params, 2.0, 0) == pytest.approx(1.0, rel=1e-15)


def test_classical_bound_nu_below_one_oracle():
    params = ClassicalParams(c=1.0, d=1.0, nu=0.5, q=0.25, gamma=4.0)
    assert classical_bound(params, 2.0, 3) == pytest.approx(
        0.90688340360344081, rel=1e-15
    )


def test_classical_bound_sigma_variant_oracle():
    params = ClassicalParams(c=1.0, d=1.0, nu=0.5, q=0.25, gamma=4.0, varsigma=1.0)
    assert classical_bound(params, 2.0, 3, variant="sigma") == pytest.approx(
        1.478972593541593, rel=1e-14
    )


def test_classical_bound_invariant_violations():
    with pytest.raises(PreconditionError):
        # gamma below c^(1/nu)
        classical_bound(ClassicalParams(c=2.0, d=1.0, nu=0.5, q=0.25, gamma=1.0), 1.0, 0)
    with pytest.raises(PreconditionError):
        # nu = 1 needs c > q
        classical_bound(ClassicalParams(c=1.0, d=1.0, nu=1.0, q=1.5, gamma=3.0), 1.0, 0)
    with pytest.raises(PreconditionError):
        # sigma variant is for nu < 1 only
        classical_bound(
            ClassicalParams(c=2.0, d=1.0, nu=1.0, q=1.0, gamma=2.0, varsigma=1.0),
            1.0, 0, variant="sigma",
        )


def test_classical_general_bounds_agree_at_line_example():
    """Both routes give d/(c-q)(k+1+gamma)^(-q) = 1/3 when a0 = 0."""
    params = ClassicalParams(c=2.0, d=1.0, nu=1.0, q=1.0, gamma=2.0)
    spec = classical_spec(params, 8)
    cert = find_lambda_constant(spec, lambda_target=classical_lambda(params))
    assert cert.certified_horizon == 8
    assert general_bound(spec, cert, 0.0, 0) == pytest.approx(1.0 / 3.0, rel=1e-14)
    assert iterate_recursion_exact(spec, 0.0, 1)[1] == pytest.approx(0.25, rel=1e-14)


def _classical_draw(rng) -> ClassicalParams:
    if rng.uniform() < 0.4:
        c = float(rng.uniform(0.5, 2.5))
        return ClassicalParams(
            c=c, d=float(rng.uniform(0.2, 4.0)), nu=1.0,
            q=c * float(rng.uniform(0.1, 0.8)), gamma=c + float(rng.uniform(0.1, 6.0)),
        )
    nu = float(rng.uniform(0.3, 0.95))
    c = float(rng.uniform(0.5, 2.5))
    q = float(rng.uniform(0.2, 1.5))
    gamma = max(c ** (1.0 / nu), (q / c) ** (1.0 / (1.0 - nu))) * (
        1.0 + float(rng.uniform(0.05, 2.0))
    )
    return ClassicalParams(c=c, d=float(rng.uniform(0.2, 4.0)), nu=nu, q=q, gamma=gamma)


def test_classical_bound_equals_general_bound_on_integral_spec():
    """The closed form and the certified product route agree to 1e-10."""
    rng = np.random.default_rng(5)
    for _ in range(40):
        params = _classical_draw(rng)
        K = int(rng.integers(3, 60))
        lam = classical_lambda(params)
        spec = classical_spec(params, K, decay="integral")
        cert = find_lambda_constant(spec, lambda_target=lam)
        assert cert.certified_horizon == K
        a0 = lam * spec.r(spec.b(0)) * (1.0 + float(rng.uniform(0.0, 2.0)))
        for k in range(K):
            lhs = general_bound(spec, cert, a0, k)
            rhs = classical_bound(params, a0, k)
            assert lhs == pytest.approx(rhs, rel=1e-10)


def test_classical_bound_dominates_direct_spec_chain():
    """closed form >= certified bound >= exact iterate, per draw and index."""
    rng = np.random.default_rng(7)
    for _ in range(40):
        params = _classical_draw(rng)
        K = int(rng.integers(3, 60))
        lam = classical_lambda(params)
        spec = classical_spec(params, K)
        cert = find_lambda_constant(spec, lambda_target=lam)
        assert cert.certified_horizon == K
        a0 = float(rng.uniform(0.0, 3.0))
        exact = iterate_recursion_exact(spec, a0, K)
        for k in range(K):
            mid = general_bound(spec, cert, a0, k)
            assert mid >= exact[k + 1] * (1 - 1e-10) - 1e-14
            assert classical_bound(params, a0, k) >= mid * (1 - 1e-10) - 1e-14


def test_extend_bound_examples():
    spec = dyadic_spec()
    assert extend_bound(spec, 0.5, 0.5, 0, 0, 3) == pytest.approx(0.5625, rel=1e-15)
    assert extend_bound(spec, 0.5, 0.0, 0, 2, 9) == 0.5
    # K_bar = K-1 leaves the bound unchanged
    base = 0.5 + 0.5 * 0.5**4
    assert extend_bound(spec, 0.5, 0.5, 0, 3, 4) == pytest.approx(base, rel=1e-15)


def test_extend_bound_rejects_small_B():
    spec = dyadic_spec()
    with pytest.raises(PreconditionError):
        extend_bound(spec, 0.4, 0.5, 0, 0, 3)  # r = 0.5 > B on the tail


def test_extend_bound_dominates_forward_iteration():
    rng = np.random.default_rng(13)
    for _ in range(20):
        params = _classical_draw(rng)
        K = int(rng.integers(6, 50))
        lam = classical_lambda(params)
        spec = classical_spec(params, K)
        cert = find_lambda_constant(spec, lambda_target=lam)
        a0 = float(rng.uniform(0.0, 3.0))
        exact = iterate_recursion_exact(spec, a0, K)
        mid = K // 2
        B = lam * spec.r(spec.b(mid + 1))
        C = a0 - lam * spec.r(spec.b(0))
        assert extend_bound(spec, B, C, 0, mid, K) >= exact[K] * (1 - 1e-10) - 1e-14


def test_forgetting_factor_values():
    spec = dyadic_spec()
    assert forgetting_factor(spec, 1.0, 2) == pytest.approx(0.125, rel=1e-15)
    assert forgetting_factor(spec, 1.0, -1) == 1.0
    assert forgetting_factor(spec, 1e12, 5) == pytest.approx(1.0, rel=1e-9)


def test_forgetting_bound_dominates_general_bound():
    rng = np.random.default_rng(17)
    for _ in range(20):
        params = _classical_draw(rng)
        K = int(rng.integers(3, 40))
        spec = classical_spec(params, K)
        cert = find_lambda_constant(spec, lambda_target=classical_lambda(params))
        a0 = float(rng.uniform(0.0, 3.0))
        for k in range(K):
            fb = forgetting_bound(spec, cert, a0, k)
            gb = general_bound(spec, cert, a0, k)
            assert fb >= gb * (1 - 1e-10) - 1e-14


def test_check_convexity_affine_and_power():
    line = FunctionDescriptor(fn=lambda x: 3.0 * x - 1.0, label="affine")
    assert check_convexity(line, (0.0, 10.0)).convex
    power = FunctionDescriptor(fn=lambda x: 2.0 * x**-0.5, label="power")
    assert check_convexity(power, (1.0, 500.0)).convex


def test_check_convexity_cosine_witness_near_midpoint():
    K = 10.0
    bump = FunctionDescriptor(fn=lambda x: 1.0 + math.cos(x * math.pi / K))
    report = check_convexity(bump, (0.0, K), samples=1025)
    assert not report.convex
    spacing = K / 1024.0
    assert abs(report.witness - K / 2.0) <= 3.0 * spacing


def test_recursion_convexity_on_specs():
    assert recursion_convexity(dyadic_spec()).convex
    params = ClassicalParams(c=1.0, d=1.0, nu=0.5, q=0.25, gamma=4.0)
    assert recursion_convexity(classical_spec(params, 32)).convex


def test_tech_inequality_suite_passes_exactly():
    report = tech_inequality_suite(512, [0.25, 0.5, 1.0, 1.5, 2.0, 3.0])
    assert report.passed
    names = {c.check for c in report.checks}
    assert "cosine-power-sum" in names
    assert "integral-sandwich" in names
    assert len(report.checks) == 9


def test_certified_lambda_is_plain_data():
    cert = CertifiedLambda(lam=2.0, certified_horizon=5, condition_margin=0.1)
    assert cert.lam == 2.0
    assert cert.certified_horizon == 5
