"""Explicit extremal sets (divisor grids and square-free products of small
primes) and the Euler-product identities that evaluate their GCD sums
without enumerating pairs."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from .errors import ResourceLimitError
from .factored import FactoredInteger, IntegerSet
from .primes import primes_up_to

__all__ = [
    "GalConstruction",
    "gal_divisor_set",
    "GalProductValue",
    "gal_product_identity",
    "ThreeFactorSplit",
    "gal_three_factor_split",
    "SquarefreeSet",
    "squarefree_set",
    "diagonal_ratio_squarefree",
    "GalParameters",
    "parameters_for_N",
    "Theorem7Construction",
    "theorem7_construction",
    "first_primes",
]

DEFAULT_ENUMERATION_CAP = 10 ** 6


def first_primes(r: int) -> List[int]:
    """The first r primes, by sieving with a doubling cap."""
    if r < 0:
        raise ValueError("need r >= 0")
    if r == 0:
        return []
    cap = 50
    while True:
        ps = primes_up_to(cap)
        if len(ps) >= r:
            return [int(p) for p in ps[:r]]
        cap *= 2


@dataclass(frozen=True)
class GalConstruction:
    r: int
    b: int
    primes: tuple
    size: int


def _check_gal_params(r: int, b: int) -> None:
    if r < 1:
        raise ValueError("need r >= 1")
    if b < 2:
        raise ValueError("need b >= 2")


def gal_divisor_set(r: int, b: int, *,
                    cap: int = DEFAULT_ENUMERATION_CAP) -> IntegerSet:
    """All b^r divisors of (p_1 ... p_r)^(b-1), in factored form."""
    _check_gal_params(r, b)
    size = b ** r
    if size > cap:
        raise ResourceLimitError(
            f"b^r = {size} exceeds the enumeration cap of {cap}")
    ps = first_primes(r)
    elements = []
    for expos in itertools.product(range(b), repeat=r):
        factors = [(p, e) for p, e in zip(ps, expos) if e]
        elements.append(FactoredInteger.from_factors(factors,
                                                     check_primality=False))
    out = IntegerSet(elements)
    assert len(out) == size
    return out


@dataclass(frozen=True)
class GalProductValue:
    value: float
    exact: Optional[Fraction]


def gal_product_identity(r: int, b: int, alpha: float) -> GalProductValue:
    """The closed-form GCD sum of the divisor grid:

        prod over p <= p_r of ( b + 2 * sum_{k=1}^{b-1} (b-k) p^(-k*alpha) ).

    Exact rational alongside the float whenever alpha is a non-negative
    integer.
    """
    _check_gal_params(r, b)
    value = 1.0
    for p in first_primes(r):
        inner = math.fsum((b - k) * p ** (-k * alpha) for k in range(1, b))
        value *= b + 2.0 * inner
    exact = None
    if alpha >= 0 and alpha == int(alpha):
        a = int(alpha)
        exact = Fraction(1)
        for p in first_primes(r):
            inner = sum(Fraction(b - k, p ** (k * a)) for k in range(1, b))
            exact *= b + 2 * inner
    return GalProductValue(value=value, exact=exact)


@dataclass(frozen=True)
class ThreeFactorSplit:
    f1: float
    f2: float
    f3: float


def gal_three_factor_split(r: int, b: int, alpha: float) -> ThreeFactorSplit:
    """Factor the product identity as b^r * f1 * f2 * f3 with

        f1 = prod ((1-1/p)/(1-1/p^alpha))^2      (tends to a constant),
        f2 = prod (1-1/p)^(-2)                   (the Mertens square),
        f3 = prod (1 + 2*sum_{k<b}(1-k/b)p^(-k*alpha)) * (1-1/p^alpha)^2.
    """
    _check_gal_params(r, b)
    if alpha <= 0:
        raise ValueError("need alpha > 0")
    f1 = f2 = f3 = 1.0
    for p in first_primes(r):
        one_minus = 1.0 - 1.0 / p
        one_minus_alpha = -math.expm1(-alpha * math.log(p))
        f1 *= (one_minus / one_minus_alpha) ** 2
        f2 *= one_minus ** -2
        inner = math.fsum((1.0 - k / b) * p ** (-k * alpha) for k in range(1, b))
        f3 *= (1.0 + 2.0 * inner) * one_minus_alpha ** 2
    return ThreeFactorSplit(f1=f1, f2=f2, f3=f3)


@dataclass(frozen=True)
class SquarefreeSet:
    k: int
    set: IntegerSet

    def closed_form(self, sigma: float) -> float:
        """2^k * prod (1 + p^(-sigma)), the GCD sum of the set at sigma."""
        ps = first_primes(self.k)
        return 2.0 ** self.k * math.prod(1.0 + p ** -sigma for p in ps)

    def closed_form_exact(self, sigma: int) -> Fraction:
        if sigma < 0 or sigma != int(sigma):
            raise ValueError("exact closed form needs integer sigma >= 0")
        out = Fraction(2) ** self.k
        for p in first_primes(self.k):
            out *= 1 + Fraction(1, p ** int(sigma))
        return out


def squarefree_set(k: int, *, cap: int = DEFAULT_ENUMERATION_CAP) -> SquarefreeSet:
    """All 2^k square-free products of the first k primes."""
    if k < 0:
        raise ValueError("need k >= 0")
    size = 2 ** k
    if size > cap:
        raise ResourceLimitError(
            f"2^k = {size} exceeds the enumeration cap of {cap}")
    ps = first_primes(k)
    elements = []
    for picks in itertools.product((0, 1), repeat=k):
        factors = [(p, 1) for p, e in zip(ps, picks) if e]
        elements.append(FactoredInteger.from_factors(factors,
                                                     check_primality=False))
    return SquarefreeSet(k=k, set=IntegerSet(elements))


def diagonal_ratio_squarefree(k: int, sigma: float) -> float:
    """Divisibility-pair share of the square-free set's GCD sum:

        2 * prod ((1 + 1/(2 p^sigma)) / (1 + 1/p^sigma)).

    Tends to 0 as k grows at fixed sigma > 0.
    """
    if k < 0:
        raise ValueError("need k >= 0")
    ratio = 2.0
    for p in first_primes(k):
        x = p ** -sigma
        ratio *= (1.0 + 0.5 * x) / (1.0 + x)
    return ratio


@dataclass(frozen=True)
class GalParameters:
    r: int
    b: int


def parameters_for_N(N: int) -> GalParameters:
    """r = floor(log N / loglog N) and the b with b^r <= N < (b+1)^r."""
    if N < 100:
        raise ValueError("need N >= 100")
    r = int(math.log(N) / math.log(math.log(N)))
    b = max(1, int(round(N ** (1.0 / r))))
    while (b + 1) ** r <= N:
        b += 1
    while b > 1 and b ** r > N:
        b -= 1
    return GalParameters(r=r, b=b)


@dataclass(frozen=True)
class Theorem7Construction:
    K: FactoredInteger
    ratio: float
    first_factor: float
    second_factor: float
    third_factor: float


def theorem7_construction(x: float, b: int, sigma: float) -> Theorem7Construction:
    """K = prod_{p<=x} p^(b-1) and the resonance-ratio product

        ratio = prod_{p<=x} (1 + sum_{k=1}^{b-1} (1 - k/b) p^(-k*sigma)),

    split as first * second * third with first = prod (1-1/p)/(1-1/p^sigma)
    and second = prod (1-1/p)^(-1); the third factor carries the rest, so
    the three multiply back to ratio exactly (per-prime cancellation).
    """
    if x < 2:
        raise ValueError("need x >= 2")
    if b < 2:
        raise ValueError("need b >= 2")
    ps = [int(p) for p in primes_up_to(x)]
    K = FactoredInteger.from_factors(((p, b - 1) for p in ps),
                                     check_primality=False)
    ratio = first = second = third = 1.0
    for p in ps:
        inner = math.fsum((1.0 - k / b) * p ** (-k * sigma) for k in range(1, b))
        term = 1.0 + inner
        ratio *= term
        one_minus = 1.0 - 1.0 / p
        one_minus_sigma = -math.expm1(-sigma * math.log(p))
        first *= one_minus / one_minus_sigma
        second *= 1.0 / one_minus
        third *= one_minus_sigma * term
    return Theorem7Construction(K=K, ratio=ratio, first_factor=first,
                                second_factor=second, third_factor=third)
