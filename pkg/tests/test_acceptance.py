"""Acceptance criteria 1-10, one PASS/FAIL line each, at their stated tolerances."""
import time

import pytest

from qdefcs.harness import Profile, verify
from qdefcs.harness.verify import (
    check_classical,
    check_fig1,
    check_fig2,
    check_footnote,
    check_gup,
    check_intelligent,
    check_omega,
    check_oracle,
    check_slopes,
    check_snr,
)
from qdefcs.observables import small_t_slopes


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {label}: {detail}")
        return ok
    return emit


def timed(fn, *args):
    start = time.perf_counter()
    result = fn(*args)
    return result, time.perf_counter() - start


@pytest.fixture(scope="module")
def snr_results():
    return timed(check_snr, (50, 50))


def test_criterion_01_slopes(report):
    (ok, detail), secs = timed(check_slopes, small_t_slopes)
    assert report("1 slopes", ok and secs < 5, f"{detail}; {secs:.2f}s (limit 5s)")


def test_criterion_02_footnote(report):
    ok, detail = check_footnote(small_t_slopes)
    assert report("2 q>1 real-z slope", ok, detail)


def test_criterion_03_fig1(report):
    ok, detail = check_fig1()
    assert report("3 Mandel sign/order", ok, detail)


def test_criterion_04_fig2(report):
    ok, detail = check_fig2()
    assert report("4 variance ratio squeezing/order", ok, detail)


def test_criterion_05_omega(report):
    ok, detail = check_omega()
    assert report("5 omega geometry", ok, detail)


def test_criterion_06a_snr_bound(report, snr_results):
    ((ok, detail), _), secs = snr_results
    assert report("6a sigma < 4<N>", ok and secs < 30, f"{detail}; {secs:.2f}s (limit 30s)")


def test_criterion_06b_snr_monotone(report, snr_results):
    # Expected to fail: along rays off the imaginary axis sigma reaches a maximum
    # before the 0.9*radius guard and then decreases.  Left red deliberately.
    (_, (ok, detail)), secs = snr_results
    assert report("6b sigma monotone along rays", ok and secs < 30, f"{detail}; {secs:.2f}s")


def test_criterion_07_gup(report):
    ok, detail = check_gup()
    assert report("7 GUP mapping", ok, detail)


def test_criterion_08_intelligent(report):
    ok, detail = check_intelligent()
    assert report("8 intelligent equality", ok, detail)


def test_criterion_09_oracle(report):
    ok, detail = check_oracle(20)
    assert report("9 oracle equivalence", ok, detail)


def test_criterion_10_classical(report):
    ok, detail = check_classical()
    assert report("10 classical limit", ok, detail)


def test_strict_suite_runtime(report):
    rep, secs = timed(verify, Profile.STRICT)
    failed = [c.name for c in rep.checks if not c.passed]
    assert report("strict runtime", secs < 60,
                  f"verify --strict in {secs:.2f}s (limit 60s); failing checks: {failed or 'none'}")
