import cmath
import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qdefcs import oracle
from qdefcs.errors import OutOfDisc
from qdefcs.observables import mean_n, var_n
from qdefcs.states import annihilator_residual, build_state, photon_distribution

# 1 / e_q(0.25) at q = 0.96 from the 200-term oracle
P0_096_HALF = 0.778301993461857649179126382095


def test_vacuum():
    s = build_state(0.96, 0)
    assert s.n_max == 0
    assert photon_distribution(s) == [(0, 1.0)]
    assert s.tail_bound == 0.0


def test_classical_limit_is_poisson():
    s = build_state(0.999999, 1.0)
    assert s.probabilities[0] == pytest.approx(math.exp(-1), abs=1e-4)
    for n, p in photon_distribution(s)[:10]:
        assert p == pytest.approx(math.exp(-1) / math.factorial(n), abs=1e-4)


def test_p0_pinned():
    s = build_state(0.96, 0.5)
    assert s.probabilities[0] == pytest.approx(P0_096_HALF, abs=1e-14)


def test_probabilities_match_oracle():
    for q, z in [(0.96, 0.5), (0.7, 1 + 0.5j), (1.5, 1.2j), (2.0, -1.7)]:
        s = build_state(q, z)
        ref = oracle.moments(q, z)["probabilities"]
        for n, p in enumerate(s.probabilities):
            assert p == pytest.approx(float(ref[n]), abs=1e-13)


def test_super_poissonian_distribution():
    s = build_state(0.94, math.sqrt(2))
    assert var_n(s) > mean_n(s)


def test_out_of_disc():
    with pytest.raises(OutOfDisc):
        build_state(0.5, 1.5)
    with pytest.raises(OutOfDisc, match="guard"):
        build_state(0.5, math.sqrt(1.99))


def test_state_is_immutable():
    s = build_state(0.9, 0.5)
    with pytest.raises(ValueError):
        s.probabilities[0] = 1.0
    with pytest.raises(AttributeError):
        s.z = 1.0


def test_log_amplitudes_consistent():
    s = build_state(0.8, 0.6 + 0.4j)
    logmag, phase = s.log_amplitudes()
    rebuilt = np.exp(logmag) * np.exp(1j * phase)
    assert np.allclose(rebuilt, s.amplitudes, rtol=1e-13, atol=0)


def test_log_domain_near_disc_edge():
    # e_q(t) overflows a double here; probabilities stay well-formed
    s = build_state(0.999, math.sqrt(985.0), 1e-12)
    assert s.log_norm > 709
    assert abs(s.probabilities.sum() - 1) < 1e-12
    assert np.all(s.probabilities >= 0)


@settings(max_examples=40, deadline=None)
@given(q=st.floats(0.2, 3.0), frac=st.floats(0.0, 0.95), tol=st.sampled_from([1e-6, 1e-10, 1e-14]))
def test_normalization(q, frac, tol):
    t = frac / (1 - q) if q < 1 else 6 * frac
    s = build_state(q, math.sqrt(t), tol)
    total = math.fsum(s.probabilities)
    assert s.tail_bound <= tol
    assert 1 - s.tail_bound - 1e-13 <= total <= 1 + 1e-13
    assert np.all(s.probabilities >= 0)


@settings(max_examples=40, deadline=None)
@given(q=st.floats(0.2, 3.0), r=st.floats(0.0, 2.0), phi=st.floats(-math.pi, math.pi))
def test_phase_covariance(q, r, phi):
    if q < 1:
        r = min(r, 0.9 / math.sqrt(1 - q))
    a = build_state(q, cmath.rect(r, phi))
    b = build_state(q, abs(cmath.rect(r, phi)))
    assert a.n_max == b.n_max
    assert np.array_equal(a.probabilities, b.probabilities)


@pytest.mark.parametrize("q,z", [(0.96, 0.5), (0.6, 1.0 + 0.2j), (1.5, 1.5)])
def test_truncation_convergence(q, z):
    coarse = build_state(q, z, 1e-8)
    fine = build_state(q, z, 1e-10)
    assert fine.n_max >= coarse.n_max
    diff = np.abs(fine.probabilities[: coarse.n_max + 1] - coarse.probabilities)
    assert diff.max() < coarse.tail_bound + 1e-15
    assert fine.probabilities[coarse.n_max + 1:].sum() <= coarse.tail_bound


def test_annihilator_residual_vacuum():
    assert annihilator_residual(build_state(0.96, 0)) == 0.0


@pytest.mark.parametrize("q,z", [(0.96, 0.5), (1.25, 1.0)])
def test_annihilator_residual_against_oracle(q, z):
    s = build_state(q, z, 1e-12)
    res = annihilator_residual(s)
    ref = float(oracle.annihilator_residual(q, z, s.n_max))
    assert res <= 1e-5
    assert res == pytest.approx(ref, rel=1e-9, abs=1e-15)


@pytest.mark.parametrize("q,z", [(0.96, 0.5), (0.7, 1.0j), (1.25, 1.0)])
def test_annihilator_residual_scales_with_sqrt_tolerance(q, z):
    for tol in (1e-6, 1e-8, 1e-10):
        s = build_state(q, z, tol)
        r = s.truncation.ratio
        # residual^2 = t p_N and p_N r/(1-r) = tail_bound < tol
        bound = math.sqrt(s.t * tol * (1 - r) / r)
        assert annihilator_residual(s) <= bound * (1 + 1e-9) + 1e-15
