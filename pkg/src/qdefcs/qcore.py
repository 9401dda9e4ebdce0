"""
q-number arithmetic and q-exponential series with certified truncation.

All series terms t**n / [n]_q! are handled as logarithms.  For q > 1 the
q-factorial grows like q**(n(n-1)/2) and overflows a double long before the
series has converged, and for q < 1 close to the disc boundary the partial
sums themselves become astronomically large.
"""
import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidDeformation, NonConvergent, OutOfDisc

INFINITY = math.inf

HARD_CAP = 10_000
DEFAULT_TOLERANCE = 1e-16
DEFAULT_GUARD = 0.99
_ROUNDING_MARGIN = 8 * np.finfo(float).eps


class Regime(enum.Enum):
    SUB_UNIT = "SubUnit"
    CLASSICAL = "Classical"
    SUPER_UNIT = "SuperUnit"


@dataclass(frozen=True)
class DeformationParameter:
    """Validated deformation parameter q > 0."""

    q: float

    def __post_init__(self):
        try:
            q = float(self.q)
        except (TypeError, ValueError):
            raise InvalidDeformation(f"q must be a real number, got {self.q!r}") from None
        if not math.isfinite(q) or q <= 0.0:
            raise InvalidDeformation(f"q must be finite and > 0, got {self.q!r}")
        object.__setattr__(self, "q", q)

    @property
    def regime(self):
        if self.q < 1.0:
            return Regime.SUB_UNIT
        if self.q > 1.0:
            return Regime.SUPER_UNIT
        return Regime.CLASSICAL

    @property
    def radius(self):
        """Bound on t = |z|^2 for convergence of the normalization series."""
        return radius_of_convergence(self)

    def __float__(self):
        return self.q


def as_deformation(q):
    if isinstance(q, DeformationParameter):
        return q
    return DeformationParameter(q)


@dataclass(frozen=True)
class SeriesValue:
    """Truncated series sum; ``log_value`` is authoritative, ``value`` may overflow to inf."""

    log_value: float
    tail_bound: float
    n_max: int

    @property
    def value(self):
        return math.exp(self.log_value) if self.log_value < 709.0 else math.inf


@dataclass(frozen=True)
class TruncationSpec:
    """Cut-off index with its certified geometric tail bound.

    ``ratio`` is t / [n_max + 1]_q, the largest term ratio beyond the cut-off.
    When ``relative`` is set the bound is on tail / partial sum.
    """

    n_max: int
    tolerance: float
    achieved_bound: float
    ratio: float = 0.0
    relative: bool = False


def _log_q(q):
    return math.log1p(q - 1.0)


def q_bracket(q, n):
    """Deformed integer [n]_q = (1 - q**n) / (1 - q).

    ``n`` may be ``INFINITY``: the result is 1/(1-q) for q < 1 and +inf
    otherwise.
    """
    q = as_deformation(q).q
    if n == INFINITY:
        return 1.0 / (1.0 - q) if q < 1.0 else math.inf
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n == 0:
        return 0.0
    if q == 1.0:
        return float(n)
    lq = _log_q(q)
    if q > 1.0 and n * lq > 700.0:
        log_br = _log_bracket_scalar(q, n)
        return math.exp(log_br) if log_br < 709.0 else math.inf
    return math.expm1(n * lq) / math.expm1(lq)


def _log_bracket_scalar(q, n):
    lq = _log_q(q)
    if q < 1.0:
        return math.log(-math.expm1(n * lq)) - math.log(-math.expm1(lq))
    return n * lq + math.log(-math.expm1(-n * lq)) - math.log(math.expm1(lq))


def _log_brackets(q, size):
    """ln [n]_q for n = 0..size-1 (entry 0 is -inf)."""
    n = np.arange(size, dtype=float)
    out = np.empty(size)
    out[0] = -np.inf
    m = n[1:]
    if q == 1.0:
        out[1:] = np.log(m)
        return out
    lq = _log_q(q)
    if q < 1.0:
        out[1:] = np.log(-np.expm1(m * lq)) - math.log(-math.expm1(lq))
    else:
        out[1:] = m * lq + np.log(-np.expm1(-m * lq)) - math.log(math.expm1(lq))
    return out


@lru_cache(maxsize=128)
def _tables(q, size):
    log_br = _log_brackets(q, size)
    log_fact = np.concatenate(([0.0], np.cumsum(log_br[1:])))
    log_br.flags.writeable = False
    log_fact.flags.writeable = False
    return log_br, log_fact


def log_q_factorial(q, n):
    """ln [n]_q! = sum_{k=1..n} ln [k]_q (0 for n = 0)."""
    q = as_deformation(q).q
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    if n == 0:
        return 0.0
    return float(math.fsum(_tables(q, n + 1)[0][1:]))


def radius_of_convergence(q):
    """Largest admissible t = |z|^2: 1/(1-q) for q < 1, infinite otherwise."""
    q = as_deformation(q).q
    return 1.0 / (1.0 - q) if q < 1.0 else math.inf


def check_disc(q, t, guard=DEFAULT_GUARD):
    """Raise OutOfDisc unless t < guard * radius."""
    dp = as_deformation(q)
    radius = radius_of_convergence(dp)
    if math.isinf(radius):
        return
    if not 0.0 < guard <= 1.0:
        raise ValueError(f"guard must lie in (0, 1], got {guard}")
    if t >= radius:
        raise OutOfDisc(
            f"t={t!r} is outside the disc of convergence (radius {radius!r} for q={dp.q!r})"
        )
    if t >= guard * radius:
        raise OutOfDisc(
            f"t={t!r} is inside the disc (radius {radius!r}) but beyond the guard "
            f"{guard!r}*radius={guard * radius!r}"
        )


def log_terms(q, t, n_max):
    """ln(t**n / [n]_q!) for n = 0..n_max."""
    q = as_deformation(q).q
    _, log_fact = _tables(q, _table_size(n_max + 1))
    n = np.arange(n_max + 1, dtype=float)
    if t == 0.0:
        out = np.full(n_max + 1, -np.inf)
        out[0] = 0.0
        return out
    return n * math.log(t) - log_fact[: n_max + 1]


def _table_size(n):
    # round up so that nearby requests share one cached table
    size = 256
    while size < n:
        size *= 4
    return size


def choose_truncation(q, t, tolerance, *, max_terms=HARD_CAP, relative=False):
    """Smallest n_max whose geometric tail bound is below ``tolerance``.

    The bound is term_N * r / (1 - r) with r = t / [N+1]_q; it is valid
    because [n]_q increases with n, so every later term ratio is <= r.
    With ``relative=True`` the bound is divided by the partial sum.
    """
    dp = as_deformation(q)
    if t < 0.0 or not math.isfinite(t):
        raise ValueError(f"t must be finite and >= 0, got {t!r}")
    if tolerance <= 0.0:
        raise ValueError(f"tolerance must be > 0, got {tolerance!r}")
    if t == 0.0:
        return TruncationSpec(0, tolerance, 0.0, 0.0, relative)
    if t >= radius_of_convergence(dp):
        raise OutOfDisc(f"t={t!r} is outside the disc of convergence for q={dp.q!r}")

    log_tol = math.log(tolerance)
    log_t = math.log(t)
    size = min(256, max_terms + 2)
    while True:
        log_br, log_fact = _tables(dp.q, _table_size(size))
        n = np.arange(size - 1, dtype=float)
        lterm = n * log_t - log_fact[: size - 1]
        log_r = log_t - log_br[1:size]
        with np.errstate(divide="ignore", invalid="ignore"):
            r = np.exp(log_r)
            log_bound = np.where(r < 1.0, lterm + log_r - np.log1p(-np.where(r < 1.0, r, 0.0)), np.inf)
        if relative:
            log_bound = log_bound - np.logaddexp.accumulate(lterm)
        # margin for rounding in the log-domain composition; the geometric
        # bound is attained exactly once [n]_q saturates in double precision
        log_bound = log_bound + _ROUNDING_MARGIN * (1.0 + n + np.abs(lterm))
        hits = np.flatnonzero(log_bound[: max_terms + 1] < log_tol)
        if hits.size:
            k = int(hits[0])
            return TruncationSpec(k, tolerance, math.exp(log_bound[k]), float(r[k]), relative)
        if size >= max_terms + 2:
            raise NonConvergent(
                f"no truncation below {max_terms} terms reaches tolerance {tolerance!r} "
                f"(q={dp.q!r}, t={t!r}, final term ratio {float(r[-1]):.6g})"
            )
        size = min(size * 8, max_terms + 2)


def q_exponential(q, t, tolerance=DEFAULT_TOLERANCE, *, guard=DEFAULT_GUARD,
                  relative=False, max_terms=HARD_CAP):
    """Normalization series e_q(t) = sum_n t**n / [n]_q! with tail bound."""
    dp = as_deformation(q)
    if t < 0.0:
        raise ValueError(f"t must be >= 0, got {t!r}")
    check_disc(dp, t, guard)
    spec = choose_truncation(dp, t, tolerance, max_terms=max_terms, relative=relative)
    lterm = log_terms(dp, t, spec.n_max)
    return SeriesValue(float(_logsumexp(lterm)), spec.achieved_bound, spec.n_max)


def _logsumexp(a):
    m = np.max(a)
    return m + math.log(math.fsum(np.exp(a - m)))
