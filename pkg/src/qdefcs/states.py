"""Truncated maths-type q-deformed coherent states over the Fock basis."""
import cmath
import math
from dataclasses import dataclass

import numpy as np

from .qcore import (
    DEFAULT_GUARD,
    DEFAULT_TOLERANCE,
    HARD_CAP,
    DeformationParameter,
    TruncationSpec,
    _tables,
    _table_size,
    as_deformation,
    check_disc,
    choose_truncation,
    log_terms,
)


@dataclass(frozen=True, eq=False)
class QCoherentState:
    """Normalized state sum_n z**n / sqrt([n]_q!) |n>, cut at ``n_max``.

    Attributes
    ----------
    log_weights : ndarray
        ln(t**n / [n]_q!), the unnormalized squared magnitudes.
    log_norm : float
        ln of the truncated normalization series.
    probabilities : ndarray
        p_n, normalized by the truncated series.
    tail_bound : float
        Certified bound on the probability mass beyond ``n_max``.
    """

    q: DeformationParameter
    z: complex
    t: float
    log_weights: np.ndarray
    log_norm: float
    probabilities: np.ndarray
    truncation: TruncationSpec

    @property
    def n_max(self):
        return self.truncation.n_max

    @property
    def tail_bound(self):
        return self.truncation.achieved_bound

    @property
    def phase(self):
        """z/|z| as a complex unit (1 for the vacuum)."""
        return self.z / abs(self.z) if self.z != 0 else 1.0 + 0.0j

    @property
    def amplitudes(self):
        """Normalized complex amplitudes c_n."""
        n = np.arange(self.n_max + 1)
        return np.sqrt(self.probabilities) * np.exp(1j * n * cmath.phase(self.z))

    def log_amplitudes(self):
        """(log-magnitude, phase) pairs of the normalized amplitudes."""
        n = np.arange(self.n_max + 1)
        return 0.5 * (self.log_weights - self.log_norm), n * cmath.phase(self.z)

    def log_brackets(self, extra=2):
        """ln [n]_q for n = 0..n_max+extra."""
        size = self.n_max + 1 + extra
        return _tables(self.q.q, _table_size(size))[0][:size]

    def moment_tail(self, k):
        """Bound on sum_{n > n_max} n**k p_n for k in {0, 1, 2}.

        Uses p_n <= p_N r**(n-N) with r = t/[N+1]_q and the closed forms of
        sum_j j**m r**j.
        """
        if self.t == 0.0:
            return 0.0
        r = self.truncation.ratio
        big_n = self.n_max
        p_last = float(self.probabilities[-1])
        s0 = r / (1 - r)
        s1 = r / (1 - r) ** 2
        s2 = r * (1 + r) / (1 - r) ** 3
        if k == 0:
            total = s0
        elif k == 1:
            total = big_n * s0 + s1
        elif k == 2:
            total = big_n**2 * s0 + 2 * big_n * s1 + s2
        else:
            raise ValueError("k must be 0, 1 or 2")
        return p_last * total


def build_state(q, z, tolerance=DEFAULT_TOLERANCE, *, guard=DEFAULT_GUARD, max_terms=HARD_CAP):
    """Construct the coherent state at (q, z).

    The cut-off is chosen so that the neglected probability mass is below
    ``tolerance``; all observables of the state share this one budget.
    """
    dp = as_deformation(q)
    z = complex(z)
    t = abs(z) ** 2
    if t == 0.0:
        spec = TruncationSpec(0, tolerance, 0.0, 0.0, True)
        return _freeze(dp, 0j, 0.0, np.zeros(1), 0.0, np.ones(1), spec)
    check_disc(dp, t, guard)
    spec = choose_truncation(dp, t, tolerance, max_terms=max_terms, relative=True)
    lw = log_terms(dp, t, spec.n_max)
    shift = lw.max()
    w = np.exp(lw - shift)
    total = math.fsum(w)
    log_norm = shift + math.log(total)
    return _freeze(dp, z, t, lw, log_norm, w / total, spec)


def _freeze(dp, z, t, lw, log_norm, probs, spec):
    lw.flags.writeable = False
    probs.flags.writeable = False
    return QCoherentState(dp, z, t, lw, float(log_norm), probs, spec)


def photon_distribution(state):
    """List of (n, p_n) pairs for n = 0..n_max."""
    return [(n, float(p)) for n, p in enumerate(state.probabilities)]


def annihilator_residual(state):
    """Norm of (a - z) acting on the truncated state, a|n> = sqrt([n]_q)|n-1>.

    Zero for the exact state; for the truncated one only the top component
    survives, so the result is sqrt(t * p_nmax) up to rounding.
    """
    if state.t == 0.0:
        return 0.0
    c = state.amplitudes
    sqrt_br = np.exp(0.5 * state.log_brackets(extra=0)[1:])
    lowered = np.zeros_like(c)
    lowered[:-1] = sqrt_br * c[1:]
    return float(np.linalg.norm(lowered - state.z * c))
