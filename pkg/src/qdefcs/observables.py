"""
Photon statistics, metric factor and quadrature observables of q-deformed
coherent states.

The quadrature X = (b + b^dagger)/sqrt(2) is built from the *undeformed*
ladder operator b|n> = sqrt(n)|n-1> acting on the deformed state; the
deformed operator a|n> = sqrt([n]_q)|n-1> is only used by
:func:`intelligent_check`.

Internally the moments are carried as u_n = p_n / t so that quantities
such as omega = Var(N)/t stay accurate for very small t.
"""
import enum
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import DegenerateState
from .qcore import DEFAULT_GUARD, DEFAULT_TOLERANCE, as_deformation
from .states import QCoherentState, build_state

SQRT2 = math.sqrt(2.0)


class Phase(enum.Enum):
    REAL_Z = "real"
    IMAG_Z = "imag"


@dataclass(frozen=True)
class ObservableReport:
    """Every scalar observable at one (q, z) point.

    ``mandel_q`` is NaN at the vacuum, where it is undefined.
    ``error_bound`` is the largest truncation error bound over the fields.
    """

    q: float
    z_re: float
    z_im: float
    t: float
    mean_n: float
    var_n: float
    mandel_q: float
    metric_omega: float
    mean_x: float
    var_x: float
    ratio_r: float
    snr_sigma: float
    n_max: int
    tail_bound: float
    error_bound: float

    def to_dict(self):
        d = asdict(self)
        return {k: (None if isinstance(v, float) and math.isnan(v) else v) for k, v in d.items()}


@dataclass(frozen=True)
class SlopeSet:
    d_omega: float
    d_mandel: float
    d_ratio_imag: float
    d_ratio_real_superunit: float


@dataclass(frozen=True)
class _Sums:
    """Reduced moments of a state and their truncation error bounds.

    m1 = <N>/t, m2 = <N^2>/t, f2 = <N(N-1)>/t, s1 = S1/sqrt(t), s2 = S2/t,
    where S1 = sum sqrt(n+1) |c_n c_{n+1}| and S2 = sum sqrt((n+1)(n+2)) |c_n c_{n+2}|.
    """

    t: float
    m1: float
    m2: float
    f2: float
    s1: float
    s2: float
    dm1: float
    dm2: float
    ds1: float
    ds2: float


def _sums(state):
    t = state.t
    if t == 0.0:
        # t -> 0 limits of the reduced moments
        return _Sums(0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    lw = state.log_weights
    big_n = state.n_max
    log_t = math.log(t)
    n = np.arange(big_n + 1, dtype=float)
    u = np.exp(lw - log_t - state.log_norm)
    m1 = math.fsum(n * u)
    m2 = math.fsum(n * n * u)
    f2 = math.fsum(n * (n - 1) * u)
    if big_n >= 1:
        x1 = np.exp(0.5 * (lw[:-1] + lw[1:]) - 0.5 * log_t - state.log_norm)
        s1 = math.fsum(np.sqrt(n[1:]) * x1)
    else:
        s1 = 0.0
    if big_n >= 2:
        x2 = np.exp(0.5 * (lw[:-2] + lw[2:]) - log_t - state.log_norm)
        s2 = math.fsum(np.sqrt(n[1:-1] * n[2:]) * x2)
    else:
        s2 = 0.0
    t0 = state.moment_tail(0)
    t1 = state.moment_tail(1)
    t2 = state.moment_tail(2)
    p_last = float(state.probabilities[-1])
    # p_n p_{n+2} <= p_{n+1}^2 and p_{n+1} <= p_n: missing cross terms are
    # dominated by sum_{n >= N} (n+1) p_n
    cross = (big_n + 1) * p_last + t1 + t0
    return _Sums(
        t, m1, m2, f2, s1, s2,
        dm1=(t1 + t * m1 * t0) / t,
        dm2=(t2 + t * m2 * t0) / t,
        ds1=cross / math.sqrt(t) + s1 * t0,
        ds2=cross / t + s2 * t0,
    )


def _point_state(q, z, tolerance, guard):
    # omega and Q divide moments by t, so the probability budget scales with t
    z = complex(z)
    return build_state(q, z, max(tolerance * min(1.0, abs(z) ** 2), 1e-300), guard=guard)


def _as_state(state):
    if not isinstance(state, QCoherentState):
        raise TypeError(f"expected a QCoherentState, got {type(state).__name__}")
    return state


def mean_n(state):
    """<N> = sum n p_n."""
    s = _sums(_as_state(state))
    return s.t * s.m1


def var_n(state):
    s = _sums(_as_state(state))
    return s.t * (s.m2 - s.t * s.m1**2)


def mandel(state):
    """Mandel parameter Q = ((Delta N)^2 - <N>) / <N>.

    Raises DegenerateState at z = 0, where Q is 0/0.
    """
    s = _sums(_as_state(state))
    if s.t == 0.0:
        raise DegenerateState("Mandel parameter is undefined for the vacuum (z = 0)")
    return (s.f2 - s.t * s.m1**2) / s.m1


def _mandel_error(s):
    if s.t == 0.0:
        return 0.0
    df2 = s.dm2 + s.dm1
    q_val = (s.f2 - s.t * s.m1**2) / s.m1
    return (df2 + 2 * s.t * s.m1 * s.dm1) / s.m1 + abs(q_val) * s.dm1 / s.m1


def _omega(s):
    return s.m2 - s.t * s.m1**2


def _omega_error(s):
    return s.dm2 + 2 * s.t * s.m1 * s.dm1


def metric_factor(q, t, tolerance=DEFAULT_TOLERANCE, *, guard=DEFAULT_GUARD):
    """omega_q(t) = d<N>/dt.

    Differentiating <N> = t E'(t)/E(t) term by term gives
    (A'E - A E')/E^2 = Var(N)/t, with A = t E'.
    """
    if t == 0.0:
        as_deformation(q)
        return 1.0
    state = _point_state(q, math.sqrt(t), tolerance, guard)
    return _omega(_sums(state))


def conventional_ladder_moments(state):
    """(<b>, <b^2>, <b^dagger b>) for the undeformed ladder operator b."""
    state = _as_state(state)
    s = _sums(state)
    u = state.phase
    rt = math.sqrt(s.t)
    return u * s.s1 * rt, u * u * s.s2 * s.t, s.t * s.m1


def _quadrature(state, s):
    u = state.phase
    re_u = u.real
    re_u2 = (u * u).real
    rt = math.sqrt(s.t)
    mean_x = SQRT2 * re_u * s.s1 * rt
    var_x = 0.5 + s.t * (s.m1 + re_u2 * s.s2 - 2 * re_u**2 * s.s1**2)
    d_mean = SQRT2 * abs(re_u) * s.ds1 * rt
    d_var = s.t * (s.dm1 + s.ds2 + 4 * re_u**2 * s.s1 * s.ds1)
    return mean_x, var_x, d_mean, d_var


def quadrature(state):
    """(<X>, (Delta X)^2) for X = (b + b^dagger)/sqrt(2)."""
    state = _as_state(state)
    mean_x, var_x, _, _ = _quadrature(state, _sums(state))
    return mean_x, var_x


def _phase_z(t, phase):
    phase = Phase(phase)
    rt = math.sqrt(t)
    return complex(rt, 0.0) if phase is Phase.REAL_Z else complex(0.0, rt)


def variance_ratio(q, t, phase=Phase.IMAG_Z, tolerance=DEFAULT_TOLERANCE, *, guard=DEFAULT_GUARD):
    """R_q(t) = 2 (Delta X)^2 at z = sqrt(t) or z = i sqrt(t); R < 1 means squeezing."""
    state = _point_state(q, _phase_z(t, phase), tolerance, guard)
    return 2.0 * quadrature(state)[1]


def snr(state):
    """Signal-to-quantum-noise ratio <X>^2 / (Delta X)^2."""
    mean_x, var_x = quadrature(state)
    return mean_x**2 / var_x


def small_t_slopes(q):
    """Closed-form t -> 0 slopes of omega, Q and R (both phases)."""
    q = as_deformation(q).q
    k = math.sqrt(2.0 / (1.0 + q))
    return SlopeSet(
        d_omega=2.0 * (1.0 - q) / (1.0 + q),
        d_mandel=(1.0 - q) / (1.0 + q),
        d_ratio_imag=2.0 * (1.0 - k),
        d_ratio_real_superunit=-2.0 * (1.0 - k),
    )


def quadrature_coefficient_re2(q, t, tolerance=DEFAULT_TOLERANCE, *, guard=DEFAULT_GUARD):
    """Coefficient of 2 (Re z)^2 in (Delta X)^2 at fixed t = |z|^2.

    Obtained as [var_x(sqrt t) - var_x(i sqrt t)] / (2t); tends to
    sqrt(2/(1+q)) - 1 as t -> 0.
    """
    if t <= 0.0:
        raise ValueError(f"t must be > 0, got {t!r}")
    v_real = variance_ratio(q, t, Phase.REAL_Z, tolerance, guard=guard) / 2.0
    v_imag = variance_ratio(q, t, Phase.IMAG_Z, tolerance, guard=guard) / 2.0
    return (v_real - v_imag) / (2.0 * t)


def uncertainty_sides(state, mass_scale=1.0):
    """(Delta x Delta p, |<[x, p]>|/2) for the deformed-ladder position and momentum.

    x = c (a + a^dagger), p = i d (a^dagger - a) with c = 1/sqrt(2m),
    d = sqrt(m/2) in units hbar = omega = 1.
    """
    state = _as_state(state)
    if mass_scale <= 0:
        raise ValueError(f"mass_scale must be > 0, got {mass_scale!r}")
    c = 1.0 / math.sqrt(2.0 * mass_scale)
    d = math.sqrt(mass_scale / 2.0)
    if state.t == 0.0:
        return c * d, c * d
    p = state.probabilities
    big_n = state.n_max
    lb = state.log_brackets(extra=2)
    br = np.exp(lb)
    amp = np.sqrt(p)
    u = state.phase
    a1 = u * math.fsum(np.exp(0.5 * lb[1:big_n + 1]) * amp[:-1] * amp[1:])
    a2 = u * u * math.fsum(
        np.exp(0.5 * (lb[1:big_n] + lb[2:big_n + 1])) * amp[:-2] * amp[2:]
    )
    ada = math.fsum(br[: big_n + 1] * p)
    lnq = math.log(state.q.q)
    # [a, a^dagger] |n> = q^n |n>
    comm = math.fsum(np.exp(np.arange(big_n + 1) * lnq) * p)
    aad = ada + comm
    var_x = c * c * (aad + ada + 2 * a2.real - 4 * a1.real**2)
    var_p = d * d * (aad + ada - 2 * a2.real - 4 * a1.imag**2)
    return math.sqrt(max(var_x, 0.0) * max(var_p, 0.0)), c * d * abs(comm)


def intelligent_check(state, mass_scale=1.0):
    """|Delta x Delta p - |<[x,p]>|/2|; vanishes for an intelligent state."""
    product, half_comm = uncertainty_sides(state, mass_scale)
    return abs(product - half_comm)


def observable_report(q, z, tolerance=DEFAULT_TOLERANCE, *, guard=DEFAULT_GUARD):
    """All scalar observables at a single point, sharing one truncation."""
    state = _point_state(q, z, tolerance, guard)
    s = _sums(state)
    mean_x, var_x, d_mx, d_vx = _quadrature(state, s)
    t = s.t
    if t == 0.0:
        mq, d_mq = math.nan, 0.0
    else:
        mq, d_mq = (s.f2 - t * s.m1**2) / s.m1, _mandel_error(s)
    sigma = mean_x**2 / var_x
    d_sigma = 2 * abs(mean_x) * d_mx / var_x + mean_x**2 * d_vx / var_x**2
    omega = _omega(s)
    bounds = [t * s.dm1, t * _omega_error(s), _omega_error(s), d_mq, d_mx, d_vx, 2 * d_vx, d_sigma]
    return ObservableReport(
        q=state.q.q, z_re=state.z.real, z_im=state.z.imag, t=t,
        mean_n=t * s.m1, var_n=t * omega, mandel_q=mq, metric_omega=omega,
        mean_x=mean_x, var_x=var_x, ratio_r=2 * var_x, snr_sigma=sigma,
        n_max=state.n_max, tail_bound=state.tail_bound, error_bound=max(bounds),
    )
