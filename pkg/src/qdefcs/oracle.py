"""
Brute-force extended-precision reference values.

Everything here is computed from the bare definitions with mpmath: q-brackets
as sums of powers, factorials as products, a fixed number of series terms.
Nothing is shared with the production code path, so these functions can be
used to check it.
"""
import mpmath as mp

DPS = 50
TERMS = 200


def _brackets(q, count):
    out = [mp.mpf(0)]
    acc = mp.mpf(0)
    power = mp.mpf(1)
    for _ in range(count):
        acc += power
        power *= q
        out.append(acc)
    return out


def _terms(q, t, count):
    br = _brackets(q, count)
    terms = [mp.mpf(1)]
    for n in range(1, count):
        terms.append(terms[-1] * t / br[n])
    return terms


def q_exponential(q, t, terms=TERMS):
    with mp.workdps(DPS):
        return +mp.fsum(_terms(mp.mpf(q), mp.mpf(t), terms))


def tail_sum(q, t, start, count=TERMS):
    """sum of t**n/[n]_q! for n = start .. start+count-1."""
    with mp.workdps(DPS):
        terms = _terms(mp.mpf(q), mp.mpf(t), start + count)
        return +mp.fsum(terms[start:])


def _mean_n(q, t, terms):
    w = _terms(q, t, terms)
    return mp.fsum(n * x for n, x in enumerate(w)) / mp.fsum(w)


def moments(q, z, terms=TERMS):
    """Reference observables at (q, z) from 200-term sums.

    The metric factor is obtained by numerically differentiating <N>(t),
    independently of the closed variance identity used elsewhere.
    """
    with mp.workdps(DPS):
        q = mp.mpf(q)
        z = mp.mpc(z)
        t = abs(z) ** 2
        br = _brackets(q, terms + 2)
        amps = [mp.mpc(1)]
        for n in range(1, terms):
            amps.append(amps[-1] * z / mp.sqrt(br[n]))
        norm = mp.fsum(abs(c) ** 2 for c in amps)
        p = [abs(c) ** 2 / norm for c in amps]
        mean_n = mp.fsum(n * pn for n, pn in enumerate(p))
        mean_n2 = mp.fsum(n * n * pn for n, pn in enumerate(p))
        var_n = mean_n2 - mean_n**2
        b1 = mp.fsum(mp.sqrt(n + 1) * mp.conj(amps[n]) * amps[n + 1] for n in range(terms - 1)) / norm
        b2 = mp.fsum(
            mp.sqrt((n + 1) * (n + 2)) * mp.conj(amps[n]) * amps[n + 2] for n in range(terms - 2)
        ) / norm
        mean_x = mp.sqrt(2) * mp.re(b1)
        var_x = mp.mpf(1) / 2 + mean_n + mp.re(b2) - 2 * mp.re(b1) ** 2
        if t > 0:
            omega = mp.diff(lambda s: _mean_n(q, s, terms), t)
            mandel = (var_n - mean_n) / mean_n
        else:
            omega = mp.mpf(1)
            mandel = mp.nan
        return {
            "probabilities": p,
            "mean_n": mean_n,
            "var_n": var_n,
            "mandel": mandel,
            "omega": omega,
            "mean_b": b1,
            "mean_b2": b2,
            "mean_x": mean_x,
            "var_x": var_x,
            "snr": mean_x**2 / var_x,
        }


def annihilator_residual(q, z, n_max):
    """Norm of (a - z) on the state truncated at n_max and normalized over 0..n_max."""
    with mp.workdps(DPS):
        q = mp.mpf(q)
        z = mp.mpc(z)
        br = _brackets(q, n_max + 1)
        amps = [mp.mpc(1)]
        for n in range(1, n_max + 1):
            amps.append(amps[-1] * z / mp.sqrt(br[n]))
        norm = mp.sqrt(mp.fsum(abs(c) ** 2 for c in amps))
        res = [mp.sqrt(br[n + 1]) * amps[n + 1] - z * amps[n] for n in range(n_max)]
        res.append(-z * amps[n_max])
        return mp.sqrt(mp.fsum(abs(r) ** 2 for r in res)) / norm
