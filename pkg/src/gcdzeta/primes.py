"""Prime sieving and the prime-indexed sums used by the asymptotic comparisons.

Everything here iterates primes in ascending order and reduces with
compensated summation, so results are bit-reproducible across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

from .constants import EULER_GAMMA
from .errors import PrecisionError, ResourceLimitError
from .util import fsum_array

DEFAULT_SIEVE_CAP = 10 ** 9


def primes_up_to(x: float, cap: float = DEFAULT_SIEVE_CAP) -> np.ndarray:
    """All primes <= x, ascending, as an int64 array."""
    if x > cap:
        raise ResourceLimitError(
            f"sieve bound {x:g} exceeds the configured cap {cap:g}")
    n = int(math.floor(x))
    if n < 2:
        return np.array([], dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p:: p] = False
    return np.flatnonzero(sieve).astype(np.int64)


@dataclass(frozen=True)
class MertensProduct:
    product: float
    ratio_to_asymptotic: float


def mertens_product(x: float, cap: float = DEFAULT_SIEVE_CAP) -> MertensProduct:
    """prod_{p<=x} (1-1/p)^{-1} and its ratio to e^gamma * log x."""
    if x < 2:
        raise ValueError(f"x >= 2 required, got {x}")
    ps = primes_up_to(x, cap=cap).astype(np.float64)
    log_product = -fsum_array(np.log1p(-1.0 / ps))
    product = math.exp(log_product)
    ratio = product / (math.exp(EULER_GAMMA) * math.log(x))
    return MertensProduct(product=product, ratio_to_asymptotic=ratio)


def _prime_powers(x: float, cap: float):
    """(n, log p) for every prime power n = p^k <= x, sorted ascending by n."""
    out = []
    for p in primes_up_to(x, cap=cap):
        p = int(p)
        logp = math.log(p)
        pk = p
        while pk <= x:
            out.append((pk, logp))
            pk *= p
    out.sort()
    return out


def chebyshev_log_sum(x: float, sigma: float, ell: int, weighted: bool = False,
                      cap: float = DEFAULT_SIEVE_CAP) -> float:
    """sum_{n<=x} (log n)^ell * Lambda(n) / n^sigma, optionally times log(x/n).

    Lambda is von Mangoldt: log p at prime powers p^k, zero elsewhere, so the
    sum enumerates prime powers only.
    """
    if x < 1:
        raise ValueError(f"x >= 1 required, got {x}")
    if ell < 0:
        raise ValueError(f"ell >= 0 required, got {ell}")
    terms = []
    for n, logp in _prime_powers(x, cap):
        logn = math.log(n)
        t = logn ** ell * logp * n ** (-sigma) if ell else logp * n ** (-sigma)
        if weighted:
            t *= math.log(x) - logn
        terms.append(t)
    return math.fsum(terms)


def prime_ratio_sum(X: float, A: float, cap: float = DEFAULT_SIEVE_CAP) -> float:
    """sum_{p<=X} log((1-1/p)/(1-1/p^alpha)) with alpha = 1 - A/log X.

    As X grows the sum tends to Ein(A) = integral_0^A (e^t - 1)/t dt (by
    the prime number theorem, substituting p = X^u turns the sum into
    integral_0^1 (e^{A u} - 1) du/u), which sits strictly below the upper
    bound e^A - 1 obtained from the per-prime estimate (1-alpha) log p
    * p^(-alpha).
    """
    if X < 2:
        raise ValueError(f"X >= 2 required, got {X}")
    if A <= 0:
        raise ValueError(f"A > 0 required, got {A}")
    alpha = 1.0 - A / math.log(X)
    if alpha <= 0.5:
        raise ValueError(
            f"alpha = 1 - A/log X = {alpha:.6f} must exceed 1/2 (need A < log(X)/2)")
    ps = primes_up_to(X, cap=cap).astype(np.float64)
    return fsum_array(np.log1p(-1.0 / ps) - np.log1p(-ps ** (-alpha)))


def int_limit_bound(alpha: float, A: float, rel_tol: float = 1e-8) -> float:
    """integral_2^{exp(A/(1-alpha))} t^{-alpha} exp(-sqrt(log t)) dt.

    Evaluated in u = log t (the upper limit blows up as alpha -> 1-, but the
    substituted integrand exp((1-alpha)u - sqrt(u)) stays tame).
    """
    if not (0.5 <= alpha < 1.0):
        raise ValueError(f"alpha in [1/2, 1) required, got {alpha}")
    if A <= 0:
        raise ValueError(f"A > 0 required, got {A}")
    upper = A / (1.0 - alpha)
    if upper < math.log(2):
        raise ValueError(
            f"upper limit exp(A/(1-alpha)) = {math.exp(upper):g} is below 2; "
            f"need alpha >= 1 - A/log 2")
    value, abserr = quad(lambda u: math.exp((1.0 - alpha) * u - math.sqrt(u)),
                         math.log(2), upper, epsabs=0.0, epsrel=rel_tol, limit=500)
    if not math.isfinite(value) or (value > 0 and abserr / value > 10 * rel_tol):
        raise PrecisionError(
            f"quadrature error {abserr:g} too large for relative tolerance {rel_tol:g}")
    return value
