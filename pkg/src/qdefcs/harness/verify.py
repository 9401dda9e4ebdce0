"""Self-verification suite: slopes, figure properties, bounds and oracle checks."""
import enum
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .. import gup, oracle
from ..observables import (
    Phase,
    intelligent_check,
    mandel,
    metric_factor,
    observable_report,
    small_t_slopes,
    variance_ratio,
)
from ..qcore import radius_of_convergence
from ..states import build_state

FIGURE_Q = (0.94, 0.96, 0.98)
RICHARDSON_STEPS = (1e-2, 5e-3, 2.5e-3)
SEED = 20031


class Profile(enum.Enum):
    FAST = "fast"
    STRICT = "strict"


@dataclass
class Check:
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0


@dataclass
class VerifyReport:
    profile: Profile
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def lines(self):
        for c in self.checks:
            yield f"[{'PASS' if c.passed else 'FAIL'}] {c.name}: {c.detail} ({c.seconds:.2f}s)"


def richardson_slope(g, steps=RICHARDSON_STEPS):
    """Extrapolate g(h) -> g(0) from three halving steps, cancelling O(h) and O(h^2)."""
    g0, g1, g2 = (g(h) for h in steps)
    r0, r1 = 2 * g1 - g0, 2 * g2 - g1
    return (4 * r1 - r0) / 3


def numerical_slopes(q):
    """Richardson t -> 0 slopes of Q, omega, R(imag z), R(real z)."""
    return {
        "d_mandel": richardson_slope(lambda t: mandel(build_state(q, math.sqrt(t))) / t),
        "d_omega": richardson_slope(lambda t: (metric_factor(q, t) - 1.0) / t),
        "d_ratio_imag": richardson_slope(lambda t: (variance_ratio(q, t, Phase.IMAG_Z) - 1.0) / t),
        "d_ratio_real": richardson_slope(lambda t: (variance_ratio(q, t, Phase.REAL_Z) - 1.0) / t),
    }


def _rel(a, b):
    return abs(a - b) / abs(b)


def check_slopes(slopes):
    worst = 0.0
    for q in FIGURE_Q:
        num = numerical_slopes(q)
        ref = slopes(q)
        for key in ("d_mandel", "d_omega", "d_ratio_imag"):
            worst = max(worst, _rel(num[key], getattr(ref, key)))
    return worst < 0.01, f"max relative slope error {worst:.3e} (limit 1e-2)"


def check_footnote(slopes):
    q = 1.25
    num = numerical_slopes(q)["d_ratio_real"]
    ref = slopes(q).d_ratio_real_superunit
    err = _rel(num, ref)
    return err < 0.01 and num < 0, f"q=1.25 real-z slope {num:.6f} vs {ref:.6f}, rel err {err:.2e}"


def check_fig1():
    ts = np.linspace(10 / 50, 10, 50)
    curves = np.array([[mandel(build_state(q, math.sqrt(t))) for t in ts] for q in FIGURE_Q])
    positive = bool(np.all(curves > 0))
    ordered = bool(np.all(curves[0] > curves[1]) and np.all(curves[1] > curves[2]))
    return positive and ordered, f"min Q {curves.min():.4e}, ordered Q_.94>Q_.96>Q_.98: {ordered}"


def check_fig2():
    ts = np.linspace(1 / 50, 1, 50)
    curves = np.array([[variance_ratio(q, t, Phase.IMAG_Z) for t in ts] for q in FIGURE_Q])
    below = bool(np.all(curves < 1))
    ordered = bool(np.all(curves[0] < curves[1]) and np.all(curves[1] < curves[2]))
    return below and ordered, f"max R {curves.max():.6f}, ordered R_.94<R_.96<R_.98: {ordered}"


def _open_grid(stop, count=50):
    # (0, stop) excluding both ends
    return stop * np.arange(1, count + 1) / (count + 1)


def check_omega():
    ok = True
    worst = math.inf
    for q in FIGURE_Q:
        w = np.array([metric_factor(q, t) for t in _open_grid(0.9 * radius_of_convergence(q))])
        ok &= bool(np.all(w >= 1) and np.all(np.diff(w) > 0))
        worst = min(worst, w.min())
    common = _open_grid(0.9 * min(radius_of_convergence(q) for q in FIGURE_Q))
    curves = np.array([[metric_factor(q, t) for t in common] for q in FIGURE_Q])
    ordered = bool(np.all(curves[0] > curves[1]) and np.all(curves[1] > curves[2]))
    return ok and ordered, f"min omega {worst:.6f}, increasing in t: {ok}, increasing in 1-q: {ordered}"


def snr_grid(q, nr, nphi, guard=0.9):
    """sigma and 4<N> on rings r_i = r_max i/nr (i=1..nr) and nphi angles."""
    r_max = math.sqrt(guard * radius_of_convergence(q))
    sigma = np.empty((nr, nphi))
    bound = np.empty((nr, nphi))
    for i in range(nr):
        r = r_max * (i + 1) / nr
        for j in range(nphi):
            phi = 2 * math.pi * j / nphi
            rep = observable_report(q, complex(r * math.cos(phi), r * math.sin(phi)), guard=1.0)
            sigma[i, j] = rep.snr_sigma
            bound[i, j] = 4 * rep.mean_n
    return sigma, bound


def snr_monotone_violations(sigma, nphi):
    """Count decreases of sigma along rays that are not the imaginary axis."""
    phis = 2 * math.pi * np.arange(nphi) / nphi
    off_axis = np.abs(np.cos(phis)) > 1e-12
    d = np.diff(sigma, axis=0)[:, off_axis]
    return int(np.sum(d <= 0))


def check_snr(grid):
    ok_bound = True
    violations = 0
    margin = math.inf
    for q in (0.5, 0.94, 0.98):
        sigma, bound = snr_grid(q, *grid)
        ok_bound &= bool(np.all(sigma < bound))
        margin = min(margin, float(np.min(bound - sigma)))
        violations += snr_monotone_violations(sigma, grid[1])
    return (
        (ok_bound, f"min 4<N> - sigma {margin:.3e} on {grid[0]}x{grid[1]} polar grid"),
        (violations == 0, f"{violations} ray steps where sigma does not increase"),
    )


def check_gup():
    q = gup.q_from_alpha_beta(gup.GupParameters(-1.0, -1.0 / 9.0)).q
    w = gup.effective_frequency(0.5, 1.0)
    neg = gup.minimal_uncertainty_exists(-1, -1)
    pos = gup.minimal_uncertainty_exists(1, 1)
    ok = q == 0.5 and w == 0.75 and not neg and pos
    return ok, f"q={q!r}, omega_eff={w!r}, minimal uncertainty (-,-)={neg}, (+,+)={pos}"


def intelligent_points():
    sub = [(q, math.sqrt(f * radius_of_convergence(q) / 2) * complex(1, 1))
           for q, f in zip(np.linspace(0.5, 0.98, 10), np.linspace(0.05, 0.8, 10))]
    sup = [(q, complex(r * math.cos(a), r * math.sin(a)))
           for q, r, a in zip(np.linspace(1.05, 2.0, 10), np.linspace(0.2, 2.0, 10),
                              np.linspace(0.0, 3.0, 10))]
    return sub + sup


def check_intelligent():
    worst = max(intelligent_check(build_state(q, z, 1e-12)) for q, z in intelligent_points())
    return worst <= 1e-8, f"max residual {worst:.3e} over 10 points per regime (limit 1e-8)"


def oracle_samples(per_regime, seed=SEED):
    """Seeded (q, z) pairs: q in [0.5, 0.98] with t < radius/2, then q in [1, 2] with t < 4."""
    rng = np.random.default_rng(seed)
    out = []
    for sub_unit in (True, False):
        for _ in range(per_regime):
            q = rng.uniform(0.5, 0.98) if sub_unit else rng.uniform(1.0, 2.0)
            t_max = 0.5 * radius_of_convergence(q) if sub_unit else 4.0
            t = rng.uniform(0.0, t_max)
            phi = rng.uniform(0.0, 2 * math.pi)
            out.append((q, math.sqrt(t) * complex(math.cos(phi), math.sin(phi))))
    return out


ORACLE_FIELDS = (
    ("mean_n", "mean_n"), ("var_n", "var_n"), ("mandel_q", "mandel"), ("metric_omega", "omega"),
    ("mean_x", "mean_x"), ("var_x", "var_x"), ("snr_sigma", "snr"),
)


def oracle_deviation(q, z):
    rep = observable_report(q, z)
    ref = oracle.moments(q, z)
    worst = 0.0
    for ours, theirs in ORACLE_FIELDS:
        worst = max(worst, abs(getattr(rep, ours) - float(ref[theirs])))
    state = build_state(q, z)
    p_ref = ref["probabilities"]
    for n, p in enumerate(state.probabilities):
        worst = max(worst, abs(float(p) - float(p_ref[n])))
    return worst


def finite_difference_deviation(points, h=1e-4):
    worst = 0.0
    for q, t in points:
        fd = (observable_report(q, math.sqrt(t + h)).mean_n
              - observable_report(q, math.sqrt(t - h)).mean_n) / (2 * h)
        worst = max(worst, abs(metric_factor(q, t) - fd))
    return worst


FD_POINTS = [(q, f * radius_of_convergence(q)) for q in (0.5, 0.94, 0.98) for f in (0.05, 0.3, 0.6, 0.85)] + [
    (q, t) for q in (1.25, 2.0) for t in (0.5, 2.0, 5.0)
]


def check_oracle(per_regime):
    worst = max(oracle_deviation(q, z) for q, z in oracle_samples(per_regime))
    fd = finite_difference_deviation(FD_POINTS)
    ok = worst <= 1e-10 and fd <= 1e-5
    return ok, (f"max |pipeline - oracle| {worst:.3e} on {per_regime} samples/regime (limit 1e-10); "
                f"max |omega - central difference| {fd:.3e} (limit 1e-5)")


def check_classical():
    q = 1 - 1e-6
    rep = observable_report(q, 1.0)
    dev = {
        "Q": abs(rep.mandel_q),
        "omega-1": abs(rep.metric_omega - 1),
        "R_real-1": abs(rep.ratio_r - 1),
        "R_imag-1": abs(variance_ratio(q, 1.0, Phase.IMAG_Z) - 1),
    }
    sig = abs(rep.snr_sigma - 4 * rep.t)
    ok = all(v <= 1e-4 for v in dev.values()) and sig <= 1e-3
    body = ", ".join(f"|{k}|={v:.2e}" for k, v in dev.items())
    return ok, f"{body}, |sigma-4t|={sig:.2e}"


def verify(profile=Profile.FAST, slopes=small_t_slopes):
    """Run every check and collect pass/fail entries; never raises on failure."""
    profile = Profile(profile)
    strict = profile is Profile.STRICT
    report = VerifyReport(profile)

    def run(name, fn, *args):
        start = time.perf_counter()
        try:
            result = fn(*args)
        except Exception as exc:  # a crashing check is a failed check
            result = (False, f"raised {type(exc).__name__}: {exc}")
        elapsed = time.perf_counter() - start
        names = name if isinstance(name, tuple) else (name,)
        results = result if isinstance(result[0], tuple) else (result,) * len(names)
        for n, (ok, detail) in zip(names, results):
            report.checks.append(Check(n, bool(ok), detail, elapsed))

    run("slopes", check_slopes, slopes)
    run("footnote-q>1", check_footnote, slopes)
    run("fig1-mandel", check_fig1)
    run("fig2-variance-ratio", check_fig2)
    run("omega-geometry", check_omega)
    run(("snr-bound", "snr-monotone"), check_snr, (50, 50) if strict else (12, 12))
    run("gup-mapping", check_gup)
    run("intelligent", check_intelligent)
    run("oracle", check_oracle, 20 if strict else 4)
    run("classical-limit", check_classical)
    return report
