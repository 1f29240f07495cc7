"""Tests for the step-size families: values, aggregates, and cap checks."""
from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from steprates.schedules import (
    Constant,
    Cosine,
    Exponential,
    Polynomial,
    step_max,
    step_sum,
    step_value,
    step_values,
    validate_cap,
)


def test_constant_value_everywhere():
    sched = Constant(alpha=0.1)
    assert step_value(sched, 5) == 0.1
    assert step_value(sched, 0) == 0.1


def test_cosine_starts_at_alpha():
    assert step_value(Cosine(alpha=0.2, p=1.0, horizon=10), 0) == 0.2


def test_exponential_terminal_value_is_alpha_beta_over_K():
    sched = Exponential(alpha=1.0, beta=1.0, p=1.0, horizon=100)
    assert step_value(sched, 100) == pytest.approx(0.01, rel=1e-12)


def test_exponential_first_decayed_step():
    # (1/100)^(1/100) evaluated at 40 digits
    sched = Exponential(alpha=1.0, beta=1.0, p=1.0, horizon=100)
    assert step_value(sched, 1) == pytest.approx(0.95499258602143595, rel=1e-15)


def test_cosine_terminal_value_is_exact_zero():
    assert step_value(Cosine(alpha=0.7, p=1.3, horizon=17), 17) == 0.0


def test_step_max_examples():
    assert step_max(Polynomial(alpha=2.0, gamma=4.0, p=0.5), 50) == 1.0
    assert step_max(Constant(alpha=0.3), 10) == 0.3
    assert step_max(Exponential(alpha=0.7, beta=1.0, p=1.0, horizon=100), 100) == 0.7


def test_step_sum_constant():
    assert step_sum(Constant(alpha=0.5), 10) == 5.0


def test_step_sum_cosine_half_horizon_plus_half():
    assert step_sum(Cosine(alpha=1.0, p=1.0, horizon=10), 10) == pytest.approx(
        5.5, rel=1e-14
    )


def test_step_sum_exponential_matches_direct_loop():
    sched = Exponential(alpha=1.0, beta=1.0, p=1.0, horizon=100)
    direct = math.fsum(step_value(sched, k) for k in range(100))
    assert step_sum(sched, 100) == pytest.approx(direct, rel=1e-14)
    assert direct == pytest.approx(21.996375985332399, rel=1e-15)


def test_step_sum_closed_form_agrees_at_large_horizon():
    """Closed form vs compensated direct summation at K = 10^6."""
    K = 10**6
    exp = Exponential(alpha=0.9, beta=2.5, p=1.4, horizon=K)
    assert step_sum(exp, K) == pytest.approx(
        math.fsum(step_values(exp, K)), rel=1e-12
    )
    cos = Cosine(alpha=0.7, p=1.0, horizon=K)
    assert step_sum(cos, K) == pytest.approx(
        math.fsum(step_values(cos, K)), rel=1e-12
    )


def test_step_values_matches_step_value_bitwise():
    for sched in (
        Constant(alpha=0.3),
        Polynomial(alpha=1.5, gamma=3.0, p=0.8),
        Exponential(alpha=1.0, beta=2.0, p=1.1, horizon=64),
        Cosine(alpha=0.4, p=2.0, horizon=64),
    ):
        assert step_values(sched, 64) == [step_value(sched, k) for k in range(64)]


def test_validate_cap_reports():
    fail = validate_cap(Constant(alpha=0.1), 0.05, 10)
    assert not fail.passed
    assert fail.violating_index == 0
    assert validate_cap(Polynomial(alpha=1.0, gamma=4.0, p=1.0), 0.25, 10).passed
    assert validate_cap(
        Exponential(alpha=1.0, beta=1.0, p=1.0, horizon=100), 1.0, 100
    ).passed


@given(
    alpha=st.floats(0.01, 10.0),
    gamma=st.floats(0.1, 100.0),
    p=st.floats(0.05, 3.0),
    k=st.integers(0, 10_000),
)
def test_polynomial_steps_decrease(alpha, gamma, p, k):
    sched = Polynomial(alpha=alpha, gamma=gamma, p=p)
    assert step_value(sched, k + 1) <= step_value(sched, k)


@given(
    alpha=st.floats(0.01, 10.0),
    beta=st.floats(0.1, 30.0),
    p=st.floats(0.05, 3.0),
    K=st.integers(2, 4096),
    data=st.data(),
)
def test_exponential_steps_decrease_and_end_exactly(alpha, beta, p, K, data):
    if beta >= K:
        K = int(beta) + 2
    sched = Exponential(alpha=alpha, beta=beta, p=p, horizon=K)
    k = data.draw(st.integers(0, K - 1))
    assert step_value(sched, k + 1) <= step_value(sched, k) * (1 + 1e-12)
    assert step_value(sched, K) == pytest.approx(alpha * (beta / K) ** p, rel=1e-12)


@given(
    alpha=st.floats(0.01, 10.0),
    p=st.floats(0.05, 3.0),
    K=st.integers(2, 4096),
    data=st.data(),
)
def test_cosine_steps_decrease(alpha, p, K, data):
    sched = Cosine(alpha=alpha, p=p, horizon=K)
    k = data.draw(st.integers(0, K - 1))
    assert step_value(sched, k + 1) <= step_value(sched, k)


@settings(max_examples=25)
@given(r=st.sampled_from([0.25, 0.5, 1.0, 1.5, 2.0, 3.0]), K=st.integers(2, 512))
def test_cosine_sum_floor(r, K):
    """The cosine power sum never falls below K/2^max(1, r)."""
    total = math.fsum(step_values(Cosine(alpha=1.0, p=r, horizon=K), K))
    assert total >= K / 2 ** max(1.0, r) * (1 - 1e-12)


@settings(max_examples=25)
@given(
    alpha=st.floats(0.05, 2.0),
    beta=st.floats(0.5, 8.0),
    p=st.floats(0.2, 2.0),
    K=st.integers(16, 2048),
)
def test_exponential_sum_floor(alpha, beta, p, K):
    if beta >= K / 2:
        K = int(2 * beta) + 2
    total = step_sum(Exponential(alpha=alpha, beta=beta, p=p, horizon=K), K)
    floor = alpha * (1 - (beta / K) ** p) / p * K / math.log(K / beta)
    assert total >= floor * (1 - 1e-12)


def test_invalid_parameters_are_unconstructible():
    with pytest.raises(ValueError):
        Constant(alpha=0.0)
    with pytest.raises(ValueError):
        Polynomial(alpha=1.0, gamma=-1.0, p=1.0)
    with pytest.raises(ValueError):
        Exponential(alpha=1.0, beta=10.0, p=1.0, horizon=10)  # needs K > beta
    with pytest.raises(ValueError):
        Cosine(alpha=1.0, p=0.0, horizon=10)


def test_out_of_range_index_rejected():
    with pytest.raises(ValueError):
        step_value(Cosine(alpha=1.0, p=1.0, horizon=10), 11)
    with pytest.raises(ValueError):
        step_value(Exponential(alpha=1.0, beta=1.0, p=1.0, horizon=10), -1)
