import math

import mpmath as mp
import pytest
from hypothesis import given, settings, strategies as st

from qdefcs import oracle
from qdefcs.errors import InvalidDeformation, NonConvergent, OutOfDisc
from qdefcs.qcore import (
    INFINITY,
    DeformationParameter,
    Regime,
    check_disc,
    choose_truncation,
    log_q_factorial,
    q_bracket,
    q_exponential,
    radius_of_convergence,
)

# 200-term, 50-digit brute-force sum
E_HALF_AT_ONE = 3.46274661945506361153795734292


def brute_bracket(q, n):
    return math.fsum(q**k for k in range(n))


@pytest.mark.parametrize("q,regime", [(0.3, Regime.SUB_UNIT), (1.0, Regime.CLASSICAL), (1.7, Regime.SUPER_UNIT)])
def test_regime(q, regime):
    assert DeformationParameter(q).regime is regime


@pytest.mark.parametrize("bad", [0.0, -0.5, math.nan, math.inf, "abc"])
def test_invalid_q(bad):
    with pytest.raises(InvalidDeformation):
        DeformationParameter(bad)


def test_q_bracket_examples():
    assert q_bracket(0.5, 3) == pytest.approx(1 + 0.5 + 0.25, rel=1e-15)
    for q in (0.1, 0.5, 1.0, 2.0, 7.0):
        assert q_bracket(q, 1) == 1.0
        assert q_bracket(q, 0) == 0.0
    assert q_bracket(0.96, INFINITY) == pytest.approx(25.0, rel=1e-14)
    assert math.isinf(q_bracket(1.0, INFINITY))
    assert math.isinf(q_bracket(1.3, INFINITY))


def test_q_bracket_classical_is_exact():
    assert [q_bracket(1.0, n) for n in range(6)] == [0.0, 1.0, 2.0, 3.0, 4.0, 5.0]


@pytest.mark.parametrize("q", [0.2, 0.5, 0.9, 0.999, 1.001, 1.5, 3.0])
@pytest.mark.parametrize("n", [1, 2, 5, 17, 40])
def test_q_bracket_matches_power_sum(q, n):
    assert q_bracket(q, n) == pytest.approx(brute_bracket(q, n), rel=1e-12)


def test_q_bracket_huge_superunit():
    assert q_bracket(2.0, 1010) > 1e300
    assert q_bracket(2.0, 2000) == math.inf


def test_log_q_factorial_examples():
    assert log_q_factorial(0.5, 0) == 0.0
    assert log_q_factorial(0.5, 3) == pytest.approx(math.log(1 * 1.5 * 1.75), rel=1e-15)
    assert log_q_factorial(0.5, 3) == pytest.approx(0.96508, abs=1e-5)
    assert log_q_factorial(2.0, 3) == pytest.approx(math.log(21), rel=1e-15)
    assert log_q_factorial(1.0, 10) == pytest.approx(math.lgamma(11), rel=1e-14)


def test_log_q_factorial_no_overflow_for_large_q():
    # [n]_2! ~ 2^(n(n-1)/2): far beyond double range, fine as a logarithm
    val = log_q_factorial(2.0, 200)
    assert math.isfinite(val)
    assert val == pytest.approx(200 * 199 / 2 * math.log(2), rel=1e-2)


def test_radius_of_convergence():
    assert radius_of_convergence(0.94) == pytest.approx(1 / 0.06, rel=1e-14)
    assert radius_of_convergence(0.94) == pytest.approx(16.6666666, rel=1e-8)
    assert math.isinf(radius_of_convergence(1.0))
    assert math.isinf(radius_of_convergence(1.5))


def test_disc_guard_messages():
    with pytest.raises(OutOfDisc, match="outside the disc"):
        check_disc(0.5, 2.0)
    with pytest.raises(OutOfDisc, match="beyond the guard"):
        check_disc(0.5, 1.985)
    check_disc(0.5, 1.985, guard=1.0)
    check_disc(2.0, 1e6)
    with pytest.raises(OutOfDisc):
        q_exponential(0.5, 1.995)


def test_choose_truncation_vacuum():
    spec = choose_truncation(0.7, 0.0, 1e-12)
    assert spec.n_max == 0 and spec.achieved_bound == 0.0


def test_choose_truncation_against_oracle_tail():
    spec = choose_truncation(0.96, 1.0, 1e-12)
    assert spec.achieved_bound < 1e-12
    assert spec.ratio < 1
    tail = oracle.tail_sum(0.96, 1.0, spec.n_max + 1)
    assert tail < 1e-12
    assert tail <= spec.achieved_bound
    # smallest qualifying index: one term fewer must not satisfy the bound
    prev = choose_truncation(0.96, 1.0, 1e-12)
    assert prev.n_max == spec.n_max
    with mp.workdps(50):
        t = mp.mpf(1)
        q = mp.mpf(0.96)
        n = spec.n_max - 1
        term = t**n / mp.fprod(sum(q**j for j in range(k)) for k in range(1, n + 1))
        r = t / sum(q**j for j in range(n + 1))
        assert term * r / (1 - r) >= 1e-12


def test_choose_truncation_near_edge_is_nonconvergent():
    # t(1-q) = 0.9995: inside the disc but the geometric tail decays too slowly
    with mp.workdps(30):
        br = sum(mp.mpf(0.5) ** k for k in range(5000))
        assert abs(mp.mpf(1.999) / br - mp.mpf("0.9995")) < 1e-12
    with pytest.raises(NonConvergent):
        choose_truncation(0.5, 1.999, 1e-12)


def test_choose_truncation_outside_disc():
    with pytest.raises(OutOfDisc):
        choose_truncation(0.5, 2.5, 1e-12)


def test_q_exponential_examples():
    assert q_exponential(0.7, 0.0).value == 1.0
    assert q_exponential(0.999999, 1.0).value == pytest.approx(math.e, abs=1e-5)
    assert q_exponential(1.0, 1.0).value == pytest.approx(math.e, rel=1e-15)
    ev = q_exponential(0.5, 1.0)
    assert ev.value == pytest.approx(E_HALF_AT_ONE, abs=1e-13)
    assert round(ev.value, 2) == 3.46


def test_q_exponential_superunit_against_oracle():
    for q, t in [(1.25, 3.0), (2.0, 10.0), (1.01, 5.0)]:
        assert q_exponential(q, t).value == pytest.approx(float(oracle.q_exponential(q, t)), rel=1e-13)


def test_q_exponential_log_domain_near_edge():
    # normalization near the disc boundary overflows a double; the log survives
    ev = q_exponential(0.999, 985.0, 1e-12, relative=True)
    assert math.isfinite(ev.log_value)
    assert ev.log_value > 700


@settings(max_examples=60, deadline=None)
@given(q=st.floats(0.05, 5.0), n=st.integers(0, 300))
def test_bracket_monotone_and_bounded(q, n):
    a, b = q_bracket(q, n), q_bracket(q, n + 1)
    assert b >= a
    if q**n > 1e-14:
        # strict unless the increment q**n is below double resolution
        assert b > a
    if q < 1:
        assert b <= 1 / (1 - q) * (1 + 1e-12)


@pytest.mark.parametrize("q", [1 - 1e-6, 1 + 1e-6])
def test_bracket_limit_consistency(q):
    for n in range(1, 101):
        assert abs(q_bracket(q, n) - n) <= 1e-4 * n


@settings(max_examples=25, deadline=None)
@given(q=st.floats(0.3, 0.98), frac=st.floats(0.01, 0.6), tol=st.sampled_from([1e-8, 1e-10, 1e-12]))
def test_truncation_soundness(q, frac, tol):
    t = frac / (1 - q)
    spec = choose_truncation(q, t, tol)
    tail = oracle.tail_sum(q, t, spec.n_max + 1)
    assert tail <= spec.achieved_bound
    assert spec.achieved_bound < tol


@settings(max_examples=25, deadline=None)
@given(q=st.floats(0.3, 3.0), t=st.floats(0.0, 4.0), tol=st.sampled_from([1e-6, 1e-9, 1e-12]))
def test_refinement_stability(q, t, tol):
    if q < 1:
        t = min(t, 0.5 / (1 - q))
    a = q_exponential(q, t, tol)
    b = q_exponential(q, t, tol / 2)
    # rounding slack of a few ulps on top of the truncation bound
    assert abs(a.value - b.value) <= max(a.tail_bound, b.tail_bound) + 4e-16 * a.value
