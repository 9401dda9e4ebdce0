"""
Deformed commutator [x, p] = i hbar (1 + alpha x^2 + beta p^2) with negative
alpha, beta, and its mapping onto the Arik-Coon oscillator with 0 < q < 1.
"""
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidGupParams
from .qcore import DeformationParameter, as_deformation


@dataclass(frozen=True)
class GupParameters:
    """Constants of the deformed commutator and the oscillator.

    alpha is in 1/length^2, beta in 1/momentum^2.  Units are documentation
    only.
    """

    alpha: float
    beta: float
    hbar: float = 1.0
    m: float = 1.0
    omega: float = 1.0

    def __post_init__(self):
        for name in ("alpha", "beta", "hbar", "m", "omega"):
            value = getattr(self, name)
            if not math.isfinite(value):
                raise InvalidGupParams(f"{name} must be finite, got {value!r}")
        for name in ("hbar", "m", "omega"):
            if getattr(self, name) <= 0:
                raise InvalidGupParams(f"{name} must be > 0, got {getattr(self, name)!r}")

    @property
    def coupling(self):
        """hbar * sqrt(|alpha| |beta|)."""
        return self.hbar * math.sqrt(abs(self.alpha) * abs(self.beta))


def _require_same_sign(alpha, beta):
    if alpha == 0 or beta == 0:
        raise InvalidGupParams("alpha and beta must both be nonzero")
    if (alpha > 0) != (beta > 0):
        raise InvalidGupParams(f"mixed signs: alpha={alpha!r}, beta={beta!r}")


def q_from_alpha_beta(p):
    """q = (1 - u)/(1 + u) with u = hbar sqrt(|alpha beta|); only alpha, beta < 0."""
    _require_same_sign(p.alpha, p.beta)
    if p.alpha > 0:
        raise InvalidGupParams(
            "alpha, beta > 0 map onto q > 1; only the negative branch is supported"
        )
    u = p.coupling
    if u >= 1.0:
        raise InvalidGupParams(f"hbar*sqrt(|alpha*beta|) = {u!r} must be < 1 so that q > 0")
    # exact rational evaluation, rounded once
    x = Fraction(u)
    return DeformationParameter(float((1 - x) / (1 + x)))


def effective_frequency(q, omega):
    """Frequency (1 + q) omega / 2 of the equivalent q-deformed oscillator."""
    if omega <= 0:
        raise InvalidGupParams(f"omega must be > 0, got {omega!r}")
    return (1.0 + as_deformation(q).q) * omega / 2.0


def check_isotropy(p):
    """Relative mismatch ||alpha| - m^2 omega^2 |beta|| / |alpha|."""
    a = abs(p.alpha)
    if a == 0:
        raise InvalidGupParams("alpha must be nonzero")
    return abs(a - p.m**2 * p.omega**2 * abs(p.beta)) / a


def minimal_uncertainty_exists(alpha, beta):
    """Whether the commutator yields nonzero minimal uncertainties in x and p."""
    _require_same_sign(alpha, beta)
    return alpha > 0
