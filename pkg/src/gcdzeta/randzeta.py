"""Random Euler-product model: seeded sampling of log|zeta(alpha, X)|,
Monte-Carlo moment estimates with overflow-safe reduction, and the exact
single-prime expectation factors with their Bessel-series approximations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.integrate import quad
from scipy.special import logsumexp

from .constants import EULER_GAMMA
from .errors import PrecisionError
from .factored import _is_probable_prime
from .primes import primes_up_to

__all__ = [
    "RandomZetaConfig",
    "sample_log_zeta",
    "McLogExpectation",
    "mc_log_expectation",
    "SinglePrimeFactor",
    "single_prime_factor",
    "bessel_i0_series",
]

# Samples are generated in fixed-size blocks, each from its own jumped
# counter-based stream, so sample i is reproducible regardless of how many
# samples are requested or in which order blocks are evaluated.
_BLOCK = 4096


@dataclass(frozen=True)
class RandomZetaConfig:
    alpha: float
    P: float
    Y: float
    samples: int
    seed: int

    def __post_init__(self):
        if self.alpha <= 0.5:
            raise ValueError("alpha must exceed 1/2")
        if self.Y <= 0:
            raise ValueError("Y must be positive")
        if self.samples < 1:
            raise ValueError("need at least one sample")


def _block_angles(seed: int, block_index: int, rows: int, cols: int) -> np.ndarray:
    bg = np.random.Philox(key=seed).jumped(block_index)
    gen = np.random.Generator(bg)
    return gen.uniform(-math.pi, math.pi, size=(rows, cols))


def _log_abs_zeta_from_angles(angles: np.ndarray, x: np.ndarray) -> np.ndarray:
    """-sum_p log|1 - e^(i theta_p) x_p| for each row of angles.

    |1 - e^(i theta) x|^2 = 1 - 2 x cos(theta) + x^2, so the log is taken
    through log1p for accuracy at small x.
    """
    return -0.5 * np.sum(np.log1p(x * x - 2.0 * x * np.cos(angles)), axis=1)


def sample_log_zeta(cfg: RandomZetaConfig) -> np.ndarray:
    """One log|zeta(alpha, X)| per sample, deterministic given cfg.seed."""
    ps = primes_up_to(cfg.P).astype(np.float64)
    x = ps ** (-cfg.alpha)
    out = np.empty(cfg.samples)
    if len(ps) == 0:
        out.fill(0.0)
        return out
    for block_index, i0 in enumerate(range(0, cfg.samples, _BLOCK)):
        i1 = min(i0 + _BLOCK, cfg.samples)
        angles = _block_angles(cfg.seed, block_index, i1 - i0, len(ps))
        out[i0:i1] = _log_abs_zeta_from_angles(angles, x)
    return out


@dataclass(frozen=True)
class McLogExpectation:
    estimate: float
    std_error: float
    lz_bound: Optional[float]
    logexpect_bound: Optional[float]


def mc_log_expectation(cfg: RandomZetaConfig) -> McLogExpectation:
    """Monte-Carlo estimate of log E[|zeta(alpha, X)|^(2Y)].

    The average of exp(2Y log|zeta|) is reduced through a running-max shift
    (log-sum-exp), so arbitrarily large exponents cannot overflow.  The
    standard error is for the log-estimate (delta method).  The two
    reference bounds use A = (1 - alpha) log Y; below Y = e the loglog in
    them is meaningless, so they are omitted.
    """
    w = 2.0 * cfg.Y * sample_log_zeta(cfg)
    n = cfg.samples
    estimate = float(logsumexp(w) - math.log(n))
    shifted = np.exp(w - np.max(w))
    mean_s = float(np.mean(shifted))
    sd_s = float(np.std(shifted, ddof=1)) if n > 1 else float("inf")
    std_error = sd_s / (math.sqrt(n) * mean_s)
    lz_bound = logexpect_bound = None
    if cfg.Y >= math.e:
        loglog_y = math.log(math.log(cfg.Y))
        a_val = (1.0 - cfg.alpha) * math.log(cfg.Y)
        lz_bound = 2.0 * cfg.Y * (loglog_y + EULER_GAMMA)
        logexpect_bound = 2.0 * cfg.Y * (
            loglog_y + EULER_GAMMA + math.expm1(a_val))
    return McLogExpectation(estimate=estimate, std_error=std_error,
                            lz_bound=lz_bound, logexpect_bound=logexpect_bound)


def bessel_i0_series(t: float, tol: float = 1e-16) -> float:
    """I_0(t) summed from its power series sum_n (t/2)^(2n) / (n!)^2."""
    term = 1.0
    total = 1.0
    q = 0.25 * t * t
    for n in range(1, 1000):
        term *= q / (n * n)
        total += term
        if term < tol * total:
            return total
    raise PrecisionError(f"Bessel series did not converge for t={t:g}")


@dataclass(frozen=True)
class SinglePrimeFactor:
    exact: float
    bessel_approx: float


def single_prime_factor(p: int, alpha: float, Y: float) -> SinglePrimeFactor:
    """E[|1 - X(p) p^(-alpha)|^(-2Y)] exactly, next to I_0(2Y p^(-alpha)).

    The exact value is the circle average (1/pi) int_0^pi
    (1 - 2 x cos(theta) + x^2)^(-Y) dtheta with x = p^(-alpha).
    """
    if p < 2 or not _is_probable_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if Y < 0:
        raise ValueError("Y must be >= 0")
    x = p ** (-alpha)

    def integrand(theta: float) -> float:
        return (1.0 - 2.0 * x * math.cos(theta) + x * x) ** (-Y)

    value, abserr = quad(integrand, 0.0, math.pi, epsabs=0.0, epsrel=1e-12,
                         limit=400)
    exact = value / math.pi
    if abserr > 1e-10 * abs(value):
        raise PrecisionError(
            f"quadrature error {abserr:g} too large for p={p}, Y={Y:g}")
    return SinglePrimeFactor(exact=exact,
                             bessel_approx=bessel_i0_series(2.0 * Y * x))
