"""GCD-sum variants over integer sets, and the spectral norm of GCD matrices.

All four sum kinds share one blockwise kernel built on the pairwise
quantities P = log(m/(m,n)), Q = log(n/(m,n)), D = P + Q = log([m,n]/(m,n)).
Sets whose elements fit in int64 take a vectorized integer-gcd route; sets
with larger elements (high prime powers) fall back to a per-prime pass over
the exponent matrix, which is cheap precisely because such sets have few
distinct primes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .errors import PrecisionError, ResourceLimitError
from .factored import IntegerSet
from .util import fsum_array

__all__ = [
    "GcdSumResult",
    "GcdMatrix",
    "gcd_sum",
    "log_gcd_sum",
    "modified_log_gcd_sum",
    "diagonal_sum",
    "gcd_matrix",
    "spectral_norm",
    "SpectralNormResult",
]

DEFAULT_MAX_ELEMENTS = 20_000
# Exact rational summation walks ordered pairs one by one; past this many
# pairs only the floating-point value is produced.
EXACT_PAIR_CAP = 2_000_000
# Elements above this cannot be trusted to round-trip through int64 for the
# vectorized gcd route.
_INT64_SAFE = 2 ** 62
# Pairwise log quantities are either exactly 0 or at least log 2 ~ 0.69 up
# to rounding of order 1e-12, so this cuts cleanly between the two.
_DIVISIBILITY_EPS = 1e-6

_KINDS = ("plain", "log_type", "modified_log", "diagonal")


@dataclass(frozen=True)
class GcdSumResult:
    sigma: float
    ell: float
    kind: str
    value_real: float
    value_exact: Optional[Fraction]
    set_size: int


@dataclass(frozen=True)
class GcdMatrix:
    alpha: float
    entries: np.ndarray


@dataclass(frozen=True)
class SpectralNormResult:
    lambda_max: float
    iterations: int


def _check_size(n: int, max_elements: int) -> None:
    if n > max_elements:
        raise ResourceLimitError(
            f"set has {n} elements, exceeding the configured cap of "
            f"{max_elements} ({max_elements ** 2:.0e} ordered pairs)")


def _log_columns(mset: IntegerSet):
    """Per-element log values plus whatever the gcd kernel needs.

    Returns (values_int64_or_None, exponent_data_or_None, logm) where
    exactly one of the first two is populated.
    """
    vals = mset.values()
    if mset.max_value() <= _INT64_SAFE:
        arr = np.asarray(vals, dtype=np.int64)
        return arr, None, np.log(arr.astype(np.float64))
    primes, mat = mset.exponent_matrix()
    expo = np.asarray(mat, dtype=np.float64)
    logp = np.log(np.asarray(primes, dtype=np.float64))
    n = len(vals)
    logm = np.zeros(n)
    for j in range(len(primes)):
        logm += expo[:, j] * logp[j]
    return None, (expo, logp), logm


def _log_gcd_block(arr, expo_data, i0: int, i1: int) -> np.ndarray:
    """log gcd(m_i, m_j) for rows i0..i1 against the whole set."""
    if arr is not None:
        return np.log(np.gcd(arr[i0:i1, None], arr[None, :]).astype(np.float64))
    expo, logp = expo_data
    block = np.zeros((i1 - i0, expo.shape[0]))
    for j in range(len(logp)):
        block += np.minimum(expo[i0:i1, j:j + 1], expo[None, :, j]) * logp[j]
    return block


def _pair_sum(mset: IntegerSet, sigma: float, ell: float, kind: str,
              max_elements: int, block: int = 512) -> float:
    vals = mset.values()
    n = len(vals)
    _check_size(n, max_elements)
    if n == 0:
        return 0.0
    arr, expo_data, logm = _log_columns(mset)
    row_sums = []
    for i0 in range(0, n, block):
        i1 = min(i0 + block, n)
        logg = _log_gcd_block(arr, expo_data, i0, i1)
        p = logm[i0:i1, None] - logg
        q = logm[None, :] - logg
        if kind == "plain":
            w = np.exp(-sigma * (p + q))
        elif kind == "log_type":
            w = np.exp(-sigma * (p + q))
            w *= np.maximum(p, 0.0) ** ell
            w *= np.maximum(q, 0.0) ** ell
        elif kind == "modified_log":
            d = np.maximum(p + q, 0.0)
            w = np.exp(-d) * d ** (2.0 * ell)
        else:  # diagonal
            w = np.exp(-sigma * (p + q))
            w *= (p < _DIVISIBILITY_EPS) | (q < _DIVISIBILITY_EPS)
        row_sums.extend(w.sum(axis=1).tolist())
    return fsum_array(row_sums)


def _exact_sum(mset: IntegerSet, sigma: int, diagonal_only: bool) -> Fraction:
    """Sum of ((m,n)/[m,n])^sigma as one integer numerator over a common
    denominator prod p^(sigma*span_p), which every pair's ratio divides."""
    vals = mset.values()
    primes, mat = mset.exponent_matrix()
    denom = 1
    for j, prime in enumerate(primes):
        denom *= prime ** (sigma * max(row[j] for row in mat))
    num = len(vals) * denom  # diagonal pairs contribute 1 each, any kind
    for i in range(len(vals)):
        mi = vals[i]
        for j in range(i + 1, len(vals)):
            mj = vals[j]
            g = math.gcd(mi, mj)
            if diagonal_only and g != mi and g != mj:
                continue
            ratio = (mi // g) * (mj // g)
            num += 2 * (denom // ratio ** sigma)
    return Fraction(num, denom)


def _maybe_exact(mset: IntegerSet, sigma: float, kind: str) -> Optional[Fraction]:
    if kind not in ("plain", "diagonal"):
        return None
    if sigma < 0 or sigma != int(sigma):
        return None
    if len(mset.values()) ** 2 > EXACT_PAIR_CAP:
        return None
    return _exact_sum(mset, int(sigma), kind == "diagonal")


def gcd_sum(mset: IntegerSet, sigma: float, *,
            max_elements: int = DEFAULT_MAX_ELEMENTS) -> GcdSumResult:
    """Sum of ((m,n)/[m,n])^sigma over all ordered pairs, diagonal included."""
    value = _pair_sum(mset, sigma, 0.0, "plain", max_elements)
    return GcdSumResult(sigma=float(sigma), ell=0.0, kind="plain",
                        value_real=value,
                        value_exact=_maybe_exact(mset, sigma, "plain"),
                        set_size=len(mset.values()))


def log_gcd_sum(mset: IntegerSet, sigma: float, ell: float, *,
                max_elements: int = DEFAULT_MAX_ELEMENTS) -> GcdSumResult:
    """Log-type sum: each pair weighted by (log(m/(m,n)))^ell (log(n/(m,n)))^ell.

    With ell = 0 every weight is exactly 1 (0^0 = 1 on the diagonal), so the
    value coincides bit-for-bit with gcd_sum.
    """
    if ell < 0:
        raise ValueError("log exponent ell must be >= 0")
    value = _pair_sum(mset, sigma, float(ell), "log_type", max_elements)
    return GcdSumResult(sigma=float(sigma), ell=float(ell), kind="log_type",
                        value_real=value, value_exact=None,
                        set_size=len(mset.values()))


def modified_log_gcd_sum(mset: IntegerSet, ell: float, *,
                         max_elements: int = DEFAULT_MAX_ELEMENTS) -> GcdSumResult:
    """Sum at sigma = 1 with weights (log([m,n]/(m,n)))^(2*ell)."""
    if ell < 0:
        raise ValueError("log exponent ell must be >= 0")
    value = _pair_sum(mset, 1.0, float(ell), "modified_log", max_elements)
    return GcdSumResult(sigma=1.0, ell=float(ell), kind="modified_log",
                        value_real=value, value_exact=None,
                        set_size=len(mset.values()))


def diagonal_sum(mset: IntegerSet, sigma: float, *,
                 max_elements: int = DEFAULT_MAX_ELEMENTS) -> GcdSumResult:
    """gcd_sum restricted to pairs where one element divides the other."""
    value = _pair_sum(mset, sigma, 0.0, "diagonal", max_elements)
    return GcdSumResult(sigma=float(sigma), ell=0.0, kind="diagonal",
                        value_real=value,
                        value_exact=_maybe_exact(mset, sigma, "diagonal"),
                        set_size=len(mset.values()))


def gcd_matrix(mset: IntegerSet, alpha: float) -> GcdMatrix:
    """Dense symmetric matrix with entries ((n_i,n_j)/[n_i,n_j])^alpha."""
    vals = mset.values()
    n = len(vals)
    if n == 0:
        raise ValueError("need a non-empty set")
    arr, expo_data, logm = _log_columns(mset)
    entries = np.empty((n, n))
    for i0 in range(0, n, 512):
        i1 = min(i0 + 512, n)
        logg = _log_gcd_block(arr, expo_data, i0, i1)
        d = (logm[i0:i1, None] - logg) + (logm[None, :] - logg)
        entries[i0:i1] = np.exp(-alpha * d)
    return GcdMatrix(alpha=float(alpha), entries=entries)


def spectral_norm(mset: IntegerSet, alpha: float,
                  tol: float = 1e-10) -> SpectralNormResult:
    """Largest eigenvalue of the GCD matrix by deterministic power iteration.

    Starts from the all-ones direction; stops when the Rayleigh quotient's
    relative change drops below tol.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = len(mset.values())
    if n == 0:
        raise ValueError("need a non-empty set")
    if n > 5000:
        raise ResourceLimitError(
            f"set has {n} elements, exceeding the spectral cap of 5000")
    entries = gcd_matrix(mset, alpha).entries
    v = np.full(n, 1.0 / math.sqrt(n))
    lam_prev = math.inf
    for iteration in range(1, 100_001):
        w = entries @ v
        lam = float(v @ w)
        if abs(lam - lam_prev) <= tol * max(1.0, abs(lam)):
            return SpectralNormResult(lambda_max=lam, iterations=iteration)
        lam_prev = lam
        norm = math.sqrt(float(w @ w))
        v = w / norm
    raise PrecisionError(
        f"power iteration did not converge to tol={tol:g} within 1e5 steps")
