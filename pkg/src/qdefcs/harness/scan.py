"""Deterministic grid scans over t = |z|^2 and over the complex z plane."""
import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from ..errors import ConfigError, InvalidDeformation, NonConvergent, OutOfDisc
from ..observables import Phase, observable_report
from ..qcore import DEFAULT_GUARD, as_deformation, radius_of_convergence

DEFAULT_Q_LIST = (0.98, 0.96, 0.94)
DEFAULT_SCAN_TOLERANCE = 1e-10
# state tolerance is tightened until the row's error bound fits the scan tolerance
_MAX_REFINE = 8
_MIN_STATE_TOL = 1e-300


class Observable(enum.Enum):
    MANDEL = "mandel"
    METRIC_FACTOR = "metric-factor"
    VARIANCE_RATIO = "variance-ratio"
    SNR = "snr"


@dataclass(frozen=True)
class ScanConfig:
    q_list: tuple = DEFAULT_Q_LIST
    t_start: float = 0.0
    t_stop: float = 10.0
    t_count: int = 200
    phase: Phase = Phase.IMAG_Z
    observable: Observable = Observable.MANDEL
    tolerance: float = DEFAULT_SCAN_TOLERANCE
    guard: float = DEFAULT_GUARD
    jobs: int = 1

    def __post_init__(self):
        object.__setattr__(self, "q_list", tuple(self.q_list))
        object.__setattr__(self, "phase", _enum(Phase, self.phase, "phase"))
        object.__setattr__(self, "observable", _enum(Observable, self.observable, "observable"))

    def validate(self):
        if not self.q_list:
            raise ConfigError("q_list", "at least one q value is required")
        for q in self.q_list:
            try:
                as_deformation(q)
            except InvalidDeformation as exc:
                raise ConfigError("q_list", str(exc)) from None
        if self.t_count < 2:
            raise ConfigError("t_count", f"must be >= 2, got {self.t_count}")
        if not (0.0 <= self.t_start < self.t_stop) or not math.isfinite(self.t_stop):
            raise ConfigError("t_grid", f"need 0 <= start < stop, got ({self.t_start}, {self.t_stop})")
        if not self.tolerance > 0.0:
            raise ConfigError("tolerance", f"must be > 0, got {self.tolerance}")
        if not 0.0 < self.guard <= 1.0:
            raise ConfigError("guard", f"must lie in (0, 1], got {self.guard}")
        if self.jobs < 1:
            raise ConfigError("jobs", f"must be >= 1, got {self.jobs}")
        limit = self.guard * min(radius_of_convergence(q) for q in self.q_list)
        if self.t_stop >= limit:
            raise OutOfDisc(
                f"t_stop={self.t_stop!r} escapes the guarded disc: guard*min radius = {limit!r}"
            )

    def t_values(self):
        n = self.t_count
        step = (self.t_stop - self.t_start) / (n - 1)
        return [self.t_start + i * step if i < n - 1 else self.t_stop for i in range(n)]


def _enum(kind, value, name):
    try:
        return kind(value)
    except ValueError:
        raise ConfigError(name, f"unknown value {value!r}") from None


@dataclass(frozen=True)
class GridRow:
    observable: str
    q: float
    t: float
    x: float
    y: float
    value: float
    bound: Optional[float] = None
    error_bound: float = 0.0


def certified_report(q, z, tolerance, *, guard=DEFAULT_GUARD):
    """ObservableReport whose error bound is <= tolerance."""
    state_tol = tolerance * 1e-4
    for _ in range(_MAX_REFINE):
        rep = observable_report(q, z, state_tol, guard=guard)
        if rep.error_bound <= tolerance:
            return rep
        shrink = max(min(0.1 * tolerance / rep.error_bound, 0.1), 1e-6)
        state_tol = max(state_tol * shrink, _MIN_STATE_TOL)
    raise NonConvergent(
        f"could not certify error bound {tolerance!r} at q={q!r}, z={z!r} "
        f"(best {rep.error_bound!r})"
    )


def _row_value(rep, observable):
    if observable is Observable.MANDEL:
        return rep.mandel_q, None
    if observable is Observable.METRIC_FACTOR:
        return rep.metric_omega, None
    if observable is Observable.VARIANCE_RATIO:
        return rep.ratio_r, None
    return rep.snr_sigma, 4.0 * rep.mean_n


def _ordered_map(fn, items, jobs):
    if jobs <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def scan_t(config):
    """One row per (q, t), q-major then t-minor.  Mandel scans drop t = 0."""
    config.validate()
    ts = config.t_values()
    if config.observable is Observable.MANDEL:
        ts = [t for t in ts if t > 0.0]
    points = [(q, t) for q in config.q_list for t in ts]

    def evaluate(point):
        q, t = point
        rt = math.sqrt(t)
        z = complex(rt, 0.0) if config.phase is Phase.REAL_Z else complex(0.0, rt)
        rep = certified_report(q, z, config.tolerance, guard=config.guard)
        value, bound = _row_value(rep, config.observable)
        return GridRow(config.observable.value, float(q), t, z.real, z.imag, value, bound,
                       rep.error_bound)

    return _ordered_map(evaluate, points, config.jobs)


def scan_z(q, grid=(50, 50), tolerance=DEFAULT_SCAN_TOLERANCE, *, guard=0.9, r_max=None, jobs=1):
    """Polar scan of the signal-to-noise ratio with its 4<N> companion.

    Rings r_i = r_max * i / nr for i = 1..nr at nphi equally spaced angles,
    preceded by a single origin row.  For q < 1, r_max defaults to
    sqrt(guard * radius); for q >= 1 it must be given.
    """
    try:
        dp = as_deformation(q)
    except InvalidDeformation as exc:
        raise ConfigError("q", str(exc)) from None
    nr, nphi = grid
    if nr < 1 or nphi < 1:
        raise ConfigError("grid", f"need positive resolution, got {grid}")
    if not 0.0 < guard < 1.0:
        raise ConfigError("guard", f"must lie in (0, 1), got {guard}")
    radius = radius_of_convergence(dp)
    if r_max is None:
        if math.isinf(radius):
            raise ConfigError("r_max", "required when q >= 1")
        r_max = math.sqrt(guard * radius)
    elif not r_max > 0.0:
        raise ConfigError("r_max", f"must be > 0, got {r_max}")
    elif r_max**2 > guard * radius:
        raise OutOfDisc(f"r_max^2={r_max**2!r} exceeds guard*radius={guard * radius!r}")

    points = [0j]
    for i in range(1, nr + 1):
        r = r_max * i / nr
        for j in range(nphi):
            phi = 2.0 * math.pi * j / nphi
            points.append(complex(r * math.cos(phi), r * math.sin(phi)))

    def evaluate(z):
        rep = certified_report(dp, z, tolerance, guard=1.0)
        return GridRow(Observable.SNR.value, dp.q, rep.t, z.real, z.imag, rep.snr_sigma,
                       4.0 * rep.mean_n, rep.error_bound)

    return _ordered_map(evaluate, points, jobs)
