"""Partial/complete Bell polynomials (exact rationals) and derived constants.

The same index-sequence enumeration drives three consumers: exact rational
evaluation, the complex-arithmetic composition that turns derivatives of
zeta'/zeta into zeta^(n)/zeta, and the closed-form constants multiplying
e^gamma (loglog t)^(l+1) in the derivative bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterator, Sequence, Tuple

__all__ = [
    "partial_bell",
    "complete_bell",
    "faa_di_bruno_zeta",
    "deriv_ratio_constant",
    "ZetaDerivBoundConstant",
    "zeta_deriv_bound_constant",
]


def _index_sequences(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """All (j_1, ..., j_{n-k+1}) with sum j_i = k and sum i*j_i = n."""
    m = n - k + 1

    def rec(i: int, rem_n: int, rem_k: int, acc: list) -> Iterator[Tuple[int, ...]]:
        if i > m:
            if rem_n == 0 and rem_k == 0:
                yield tuple(acc)
            return
        for j in range(min(rem_k, rem_n // i) + 1):
            acc.append(j)
            yield from rec(i + 1, rem_n - i * j, rem_k - j, acc)
            acc.pop()

    yield from rec(1, n, k, [])


def _bell_terms(n: int, k: int) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    """Yield (integer coefficient, multiplicities) of each monomial of B_{n,k}."""
    for js in _index_sequences(n, k):
        coeff = factorial(n)
        for i, j in enumerate(js, start=1):
            coeff //= factorial(j) * factorial(i) ** j
        yield coeff, js


def partial_bell(n: int, k: int, xs: Sequence) -> Fraction:
    """B_{n,k}(x_1, ..., x_{n-k+1}) over exact rationals."""
    if n < 1 or not 1 <= k <= n:
        raise ValueError("need n >= 1 and 1 <= k <= n")
    if len(xs) < n - k + 1:
        raise ValueError(f"need at least {n - k + 1} arguments, got {len(xs)}")
    vals = [Fraction(x) for x in xs[: n - k + 1]]
    total = Fraction(0)
    for coeff, js in _bell_terms(n, k):
        term = Fraction(coeff)
        for x, j in zip(vals, js):
            if j:
                term *= x ** j
        total += term
    return total


def complete_bell(n: int, xs: Sequence) -> Fraction:
    """B_n(x_1, ..., x_n) = sum over k of B_{n,k}; B_0 = 1 by convention."""
    if n < 0:
        raise ValueError("need n >= 0")
    if len(xs) < n:
        raise ValueError(f"need at least {n} arguments, got {len(xs)}")
    if n == 0:
        return Fraction(1)
    return sum((partial_bell(n, k, xs) for k in range(1, n + 1)), Fraction(0))


def faa_di_bruno_zeta(n: int, log_derivs: Sequence[complex]) -> complex:
    """zeta^(n)/zeta at s from the derivatives of zeta'/zeta at s.

    log_derivs[j] holds (zeta'/zeta)^(j)(s) for j = 0..n-1; the composition
    formula gives zeta^(n)/zeta(s) as the complete Bell polynomial in them.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if len(log_derivs) < n:
        raise ValueError(f"need {n} derivative values, got {len(log_derivs)}")
    xs = [complex(v) for v in log_derivs[:n]]
    total = 0j
    for k in range(1, n + 1):
        for coeff, js in _bell_terms(n, k):
            term = complex(coeff)
            for x, j in zip(xs, js):
                if j:
                    term *= x ** j
            total += term
    return total


def deriv_ratio_constant(ell: int) -> Fraction:
    """Exact coefficient 2^(l+2) - 2^(l+1)/(l+1) of (loglog t)^(l+1)."""
    if ell < 0:
        raise ValueError("need ell >= 0")
    return Fraction(2 ** (ell + 2)) - Fraction(2 ** (ell + 1), ell + 1)


@dataclass(frozen=True)
class ZetaDerivBoundConstant:
    c: Fraction
    bound_in_e_gamma_units: Fraction


def zeta_deriv_bound_constant(ell: int) -> ZetaDerivBoundConstant:
    """c(l) = B_l evaluated at the ratio constants, and the bound 2*c(l)."""
    if ell < 1:
        raise ValueError("need ell >= 1")
    c = complete_bell(ell, [deriv_ratio_constant(j) for j in range(ell)])
    return ZetaDerivBoundConstant(c=c, bound_in_e_gamma_units=2 * c)
