"""Integers carried together with their prime factorization.

Pair statistics over divisor sets need gcd/lcm exponent arithmetic on numbers
far beyond 64 bits (a divisor chain of 2^9999 is a legitimate input), so the
factored form is the primary representation and the integer value is derived
from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Tuple


def _is_probable_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 3.3e24 (fixed witness set)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> Dict[int, int]:
    """Trial-division factorization; meant for set elements, not cryptographic sizes."""
    if n < 1:
        raise ValueError(f"positive integer required, got {n}")
    out: Dict[int, int] = {}
    m = n
    for p in (2, 3):
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    q = 5
    while q * q <= m:
        for p in (q, q + 2):
            while m % p == 0:
                out[p] = out.get(p, 0) + 1
                m //= p
        q += 6
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer together with its prime factorization.

    `factors` is a tuple of (prime, exponent) pairs with strictly increasing
    primes and exponents >= 1; the empty tuple represents 1.
    """

    value: int
    factors: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_int(cls, n: int) -> "FactoredInteger":
        fac = factorize(n)
        return cls(n, tuple(sorted(fac.items())))

    @classmethod
    def from_factors(cls, factors: Iterable[Tuple[int, int]],
                     check_primality: bool = True) -> "FactoredInteger":
        """Build from (prime, exponent) pairs; repeated primes are merged."""
        merged: Dict[int, int] = {}
        for p, e in factors:
            if p < 2:
                raise ValueError(f"prime expected, got {p}")
            if e < 0:
                raise ValueError(f"nonnegative exponent expected, got {e}")
            if check_primality and not _is_probable_prime(p):
                raise ValueError(f"{p} is not prime")
            if e:
                merged[p] = merged.get(p, 0) + e
        value = 1
        for p, e in merged.items():
            value *= p ** e
        return cls(value, tuple(sorted(merged.items())))

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def gcd(self, other: "FactoredInteger") -> "FactoredInteger":
        mine = dict(self.factors)
        out = []
        for p, e in other.factors:
            if p in mine:
                out.append((p, min(e, mine[p])))
        return FactoredInteger.from_factors(out, check_primality=False)

    def lcm(self, other: "FactoredInteger") -> "FactoredInteger":
        merged = dict(self.factors)
        for p, e in other.factors:
            merged[p] = max(merged.get(p, 0), e)
        return FactoredInteger.from_factors(merged.items(), check_primality=False)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{e}" for p, e in self.factors)


class IntegerSet:
    """A finite set of distinct positive integers in factored form.

    Elements are kept sorted ascending by value (one canonical order makes
    every downstream sum deterministic).  Duplicates collapse silently:
    membership, not multiplicity, is what all the pair sums are defined over.
    """

    def __init__(self, elements: Iterable[FactoredInteger]):
        by_value: Dict[int, FactoredInteger] = {}
        for el in elements:
            by_value[el.value] = el
        self._elements: List[FactoredInteger] = [by_value[v] for v in sorted(by_value)]

    @classmethod
    def from_ints(cls, values: Iterable[int]) -> "IntegerSet":
        return cls(FactoredInteger.from_int(v) for v in values)

    def __len__(self) -> int:
        return len(self._elements)

    def __iter__(self) -> Iterator[FactoredInteger]:
        return iter(self._elements)

    def __getitem__(self, i: int) -> FactoredInteger:
        return self._elements[i]

    def values(self) -> List[int]:
        return [el.value for el in self._elements]

    def primes(self) -> List[int]:
        """Sorted union of primes appearing in any element."""
        ps = {p for el in self._elements for p, _ in el.factors}
        return sorted(ps)

    def exponent_matrix(self) -> Tuple[List[int], List[List[int]]]:
        """(primes, matrix) with matrix[i][j] = exponent of primes[j] in element i."""
        ps = self.primes()
        index = {p: j for j, p in enumerate(ps)}
        mat = [[0] * len(ps) for _ in self._elements]
        for i, el in enumerate(self._elements):
            for p, e in el.factors:
                mat[i][index[p]] = e
        return ps, mat

    def max_value(self) -> int:
        return self._elements[-1].value if self._elements else 1

    def __repr__(self) -> str:
        vs = self.values()
        shown = ", ".join(map(str, vs[:8])) + (", ..." if len(vs) > 8 else "")
        return f"IntegerSet([{shown}], n={len(vs)})"
