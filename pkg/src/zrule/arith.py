"""Exact arithmetic on positive integers held in factored form.

Cell values of a Z-rule triangle are never expanded into raw integers while
the triangle grows: a value is the sorted tuple of its ``(prime, exponent)``
pairs, and the Z-rule acts exponent-wise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import total_ordering

import numpy as np
from sympy import isprime as _isprime

__all__ = [
    "FactoredNat",
    "PrimeTable",
    "ONE",
    "z_rule",
    "valuation",
    "squarefree_kernel",
    "omega",
    "factorize",
    "decimal_string",
    "is_prime",
    "primes_up_to",
]

_LOG_TIE = 1e-9


@total_ordering
@dataclass(frozen=True)
class FactoredNat:
    """A positive integer as a sorted tuple of ``(prime, exponent)`` pairs.

    The empty tuple is 1.  Ordering compares the represented integers, via
    logarithms first and exact products only when the logs are too close to
    call.
    """

    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factorization {self.factors!r}")
            last = p

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> FactoredNat:
        return cls(tuple(sorted((p, e) for p, e in d.items() if e)))

    @classmethod
    def from_int(cls, n: int) -> FactoredNat:
        """Factor ``n`` by trial division; meant for small inputs and tests."""
        if n < 1:
            raise ValueError(f"not a positive integer: {n}")
        out = []
        p = 2
        while p * p <= n:
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out.append((p, e))
            p += 1 if p == 2 else 2
        if n > 1:
            out.append((n, 1))
        return cls(tuple(out))

    @property
    def value(self) -> int:
        v = 1
        for p, e in self.factors:
            v *= p**e if e > 1 else p
        return v

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)

    def log(self) -> float:
        return sum(e * math.log(p) for p, e in self.factors)

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def is_squarefree(self) -> bool:
        return all(e == 1 for _, e in self.factors)

    def __mul__(self, other: FactoredNat) -> FactoredNat:
        d = self.as_dict()
        for p, e in other.factors:
            d[p] = d.get(p, 0) + e
        return FactoredNat.from_dict(d)

    def __lt__(self, other: FactoredNat) -> bool:
        if not isinstance(other, FactoredNat):
            return NotImplemented
        if self.factors == other.factors:
            return False
        a, b = self.log(), other.log()
        if abs(a - b) > _LOG_TIE * max(1.0, abs(a), abs(b)):
            return a < b
        return self.value < other.value


ONE = FactoredNat()

_new = object.__new__
_set = object.__setattr__


def _trusted(factors: tuple) -> FactoredNat:
    # skips validation; only for merges of already valid factorizations
    n = _new(FactoredNat)
    _set(n, "factors", factors)
    return n


def z_rule(a: FactoredNat, b: FactoredNat) -> FactoredNat:
    """Child of ``a`` and ``b``: ``ab / gcd(a, b)**2``, merged exponent-wise."""
    fa, fb = a.factors, b.factors
    if not fa:
        return b
    if not fb:
        return a
    i = j = 0
    la, lb = len(fa), len(fb)
    out = []
    while i < la and j < lb:
        p, e = fa[i]
        q, f = fb[j]
        if p == q:
            if e != f:
                out.append((p, abs(e - f)))
            i += 1
            j += 1
        elif p < q:
            out.append((p, e))
            i += 1
        else:
            out.append((q, f))
            j += 1
    out.extend(fa[i:])
    out.extend(fb[j:])
    return _trusted(tuple(out))


def valuation(a: FactoredNat, p: int) -> int:
    for q, e in a.factors:
        if q == p:
            return e
        if q > p:
            break
    return 0


def squarefree_kernel(n: FactoredNat) -> FactoredNat:
    return FactoredNat(tuple((p, 1) for p, _ in n.factors))


def omega(n: FactoredNat) -> int:
    return len(n.factors)


def decimal_string(n: FactoredNat) -> str:
    return str(n.value)


def is_prime(n: int) -> bool:
    return bool(_isprime(n))


class PrimeTable:
    """Least-prime-factor sieve over ``1..limit``."""

    def __init__(self, limit: int):
        if limit < 1:
            raise ValueError("limit must be >= 1")
        self.limit = limit
        spf = np.zeros(limit + 1, dtype=np.int64)
        for p in range(2, math.isqrt(limit) + 1):
            if spf[p] == 0:
                block = spf[p * p :: p]
                block[block == 0] = p
        rest = spf == 0
        spf[rest] = np.arange(limit + 1)[rest]
        spf[0] = 0
        self.smallest_prime_factor = spf

    def primes(self) -> list[int]:
        idx = np.arange(self.limit + 1)
        mask = (self.smallest_prime_factor == idx) & (idx >= 2)
        return idx[mask].tolist()

    def factorize(self, n: int) -> FactoredNat:
        if not 1 <= n <= self.limit:
            raise ValueError(f"{n} outside sieve range 1..{self.limit}")
        spf = self.smallest_prime_factor
        out = []
        while n > 1:
            p = int(spf[n])
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        return FactoredNat(tuple(out))


def factorize(n: int, table: PrimeTable) -> FactoredNat:
    return table.factorize(n)


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    return PrimeTable(n).primes()
