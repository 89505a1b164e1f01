"""Bracket-certified evaluation of the named constants of the workbench.

The spade constant is the max of f(x) = e^{-x}/(1 + 2*sum_{n>=0} e^{-x n^2})
on (0,2]; everything reported about it is sandwiched between certified lower
and upper bounds obtained from truncating the theta series with an explicit
geometric tail estimate:

    sum_{n>N} e^{-x n^2} <= e^{-(N+1)^2 x} / (1 - e^{-(2N+3) x})

(valid since n^2 >= (N+1)^2 + (2N+3)(n-N-1) for n >= N+1).  The other
constants come from one-dimensional stationarity equations with monotone
left-hand sides, solved by plain bisection so the root bracket is certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PrecisionError

# Fixed 50-digit literals (parsed once to the nearest float).
EULER_GAMMA = float(
    "0.57721566490153286060651209008240243104215933593992")
PI = float(
    "3.14159265358979323846264338327950288419716939937511")
ZETA2 = PI * PI / 6.0


@dataclass(frozen=True)
class BracketedConstant:
    lower: float
    upper: float
    value: float
    provenance: str

    def __post_init__(self):
        if not (self.lower <= self.value <= self.upper):
            raise ValueError(
                f"inconsistent bracket [{self.lower}, {self.upper}] around {self.value}")


# ---------------------------------------------------------------------------
# spade constant

def _theta_trunc(x: float, n_terms: int) -> float:
    """sum_{n=1}^{n_terms} e^{-x n^2} (a lower bound for the full series)."""
    return math.fsum(math.exp(-x * n * n) for n in range(1, n_terms + 1))


def _theta_tail(x: float, n_terms: int) -> float:
    """Certified upper bound for sum_{n > n_terms} e^{-x n^2}."""
    return math.exp(-((n_terms + 1) ** 2) * x) / (-math.expm1(-(2 * n_terms + 3) * x))


def _spade_bounds(x: float, n_terms: int):
    """(lower, upper) bounds for f(x) from the truncation inequality."""
    trunc = _theta_trunc(x, n_terms)
    g_hi = 3.0 + 2.0 * (trunc + _theta_tail(x, n_terms))       # g overestimate
    g_lo = 3.0 + 2.0 * _theta_trunc(x, n_terms + 2)            # g underestimate
    ex = math.exp(-x)
    return ex / g_hi, ex / g_lo


def _golden_max(fun, a: float, b: float, xtol: float) -> float:
    """Golden-section maximum of a unimodal function on [a, b]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fun(c), fun(d)
    while b - a > xtol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fun(d)
    return 0.5 * (a + b)


def spade(tol: float = 1e-9) -> BracketedConstant:
    """Certified bracket for max_{0 < x <= 2} e^{-x}/(1 + 2 sum_{n>=0} e^{-x n^2}).

    The n=0 term contributes 1, so the denominator is 3 + 2 sum_{n>=1}.
    Golden-section locates the maximum; a monotone interval bound
    (f(x) <= e^{-a}/g_lower(b) on [a,b], since e^{-x} decreases and g
    decreases) then certifies that no x outside the located window does
    better, by refining only the intervals that could still compete.
    """
    if tol < 1e-12:
        raise ValueError(f"tol >= 1e-12 required, got {tol:g}")

    # Truncation depth: grow until the sandwich is far tighter than tol
    # near the maximum (probe at x = 0.3).
    n_terms = 3
    while n_terms < 48:
        lo, hi = _spade_bounds(0.3, n_terms)
        if hi - lo < tol / 8:
            break
        n_terms += 1
    else:
        raise PrecisionError(f"series truncation cannot reach tolerance {tol:g}")

    x_star = _golden_max(lambda x: _spade_bounds(x, n_terms)[0], 0.05, 2.0, 1e-11)
    lower = _spade_bounds(x_star, n_terms)[0]

    # Branch-and-bound upper bound over (0, 2].  On [a,b] both e^{-x} and the
    # denominator are decreasing, so f <= e^{-a}/g_lower(b) with g_lower a
    # truncation (hence underestimate) of the denominator.
    def interval_upper(a: float, b: float) -> float:
        return math.exp(-a) / (3.0 + 2.0 * _theta_trunc(b, n_terms + 2))

    k0 = 256
    work = [(i * 2.0 / k0, (i + 1) * 2.0 / k0) for i in range(k0)]
    upper = math.inf
    for _ in range(90):
        scored = [(a, b, interval_upper(a, b)) for a, b in work]
        upper = max(lower, max(u for _, _, u in scored))
        if upper - lower <= tol:
            break
        work = []
        for a, b, u in scored:
            if u <= lower:
                continue    # cannot contain a point beating the witnessed max
            m = 0.5 * (a + b)
            work.extend([(a, m), (m, b)])
            lower = max(lower, _spade_bounds(m, n_terms)[0])
        if not work:
            upper = lower
            break
    if upper - lower > tol:
        raise PrecisionError(
            f"bracket width {upper - lower:g} exceeds tolerance {tol:g}")
    return BracketedConstant(
        lower=lower, upper=upper, value=0.5 * (lower + upper),
        provenance="max_{0<x<=2} exp(-x)/(1+2*sum_{n>=0} exp(-x*n^2))")


# ---------------------------------------------------------------------------
# stationarity-equation constants

def _bisect_increasing(fun, lo: float, hi: float, xtol: float = 1e-14) -> float:
    """Root of an increasing function by bisection; the bracket is certified."""
    flo, fhi = fun(lo), fun(hi)
    if flo > 0 or fhi < 0:
        raise ValueError(f"root not bracketed by [{lo}, {hi}]")
    while hi - lo > xtol:
        mid = 0.5 * (lo + hi)
        if fun(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class AConstant:
    A_star: float
    a: float            # min over A of exp(2*gamma + 2 e^{2 l A} - 2) / (zeta(2) A^{2l})
    normalized: float   # 4^{-l} * a


def a_constant(ell: float) -> AConstant:
    """Minimize exp(2*gamma + 2 e^{2 ell A} - 2)/(zeta(2) A^{2 ell}) over A > 0.

    Stationarity is 2 A e^{2 ell A} = 1, whose left side is strictly increasing,
    so bisection gives the unique minimizer.
    """
    if ell <= 0:
        raise ValueError(f"ell > 0 required, got {ell}")
    A = _bisect_increasing(lambda t: 2 * t * math.exp(2 * ell * t) - 1, 1e-17, 1.0)
    a = math.exp(2 * EULER_GAMMA + 2 * math.exp(2 * ell * A) - 2) / (ZETA2 * A ** (2 * ell))
    return AConstant(A_star=A, a=a, normalized=a * 4.0 ** (-ell))


@dataclass(frozen=True)
class FirstProofConstant:
    A_star: float
    coeff_in_e_gamma_units: float


def first_proof_constant(ell: int) -> FirstProofConstant:
    """Coefficient 2*ell!/A^ell * exp(e^{2A} - 1), A solving 2 A e^{2A} = ell."""
    if ell < 1:
        raise ValueError(f"ell >= 1 required, got {ell}")
    A = _bisect_increasing(lambda t: 2 * t * math.exp(2 * t) - ell, 1e-17, 10.0)
    coeff = 2.0 * math.factorial(ell) / A ** ell * math.exp(math.expm1(2 * A))
    return FirstProofConstant(A_star=A, coeff_in_e_gamma_units=coeff)


def d_over_spade(ell: int, spade_val: BracketedConstant, Y: float) -> BracketedConstant:
    """Y^2 / spade with the spade bracket propagated through the division."""
    if ell < 1:
        raise ValueError(f"ell >= 1 required, got {ell}")
    if Y <= 0:
        raise ValueError(f"Y > 0 required, got {Y}")
    y2 = Y * Y
    return BracketedConstant(
        lower=y2 / spade_val.upper, upper=y2 / spade_val.lower,
        value=y2 / spade_val.value,
        provenance=f"(integral of u^{ell} * dickman_rho)^2 / spade")


def strip_exponent(sigma0: float) -> float:
    """1/2 + (2*sigma0 - 1)/(sigma0*(1 - sigma0)) for sigma0 strictly in (1/2, 1)."""
    if not (0.5 < sigma0 < 1.0):
        raise ValueError(f"sigma0 strictly inside (1/2, 1) required, got {sigma0}")
    return 0.5 + (2.0 * sigma0 - 1.0) / (sigma0 * (1.0 - sigma0))
