"""Rows of 0/1 exponents as truncated series in F2[[X]].

A row ``e_1, e_2, ...`` is the series ``sum e_k X^k``; one generation of the
Z-rule is multiplication by ``(1 + X)/X`` followed by dropping the constant
and negative-power terms.  Bits are held in a Python int, bit ``k - 1`` for
``X^k``.

Rows of the square-free tomographies are ``p``-periodic along the row, so a
row can also be stored as one period of ``p`` bits; the step is then a cyclic
XOR with the left-rotated row.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import groupby

from sympy import divisors, n_order

__all__ = [
    "BitRow",
    "PeriodReport",
    "step",
    "jump",
    "binom_odd",
    "order_of_two",
    "square_free_row",
    "minimal_period",
    "west_bit",
    "west_bits",
    "full_width_coincide",
    "binom_parity_word",
    "format_word",
    "parse_word",
]


@dataclass(frozen=True)
class BitRow:
    """Truncated series: bits for ``X^1 .. X^length``.

    With ``period`` set, ``bits`` holds a single period (``period`` bits) of
    an infinite periodic row and ``length`` is ignored.
    """

    bits: int
    length: int
    period: int | None = None

    @classmethod
    def from_list(cls, values, period=None):
        bits = 0
        for i, v in enumerate(values):
            if v:
                bits |= 1 << i
        return cls(bits, len(values), period)

    def to_list(self, n: int | None = None) -> list[int]:
        if self.period is None:
            n = self.length if n is None else min(n, self.length)
            return [(self.bits >> i) & 1 for i in range(n)]
        n = self.period if n is None else n
        return [(self.bits >> (i % self.period)) & 1 for i in range(n)]

    def __getitem__(self, k: int) -> int:
        """Coefficient of ``X^k`` (``k >= 1``)."""
        if self.period is not None:
            return (self.bits >> ((k - 1) % self.period)) & 1
        if not 1 <= k <= self.length:
            raise IndexError(k)
        return (self.bits >> (k - 1)) & 1


def _rot(bits: int, s: int, p: int) -> int:
    # cyclic shift so that index i picks up index i + s
    s %= p
    if s == 0:
        return bits
    mask = (1 << p) - 1
    return ((bits >> s) | (bits << (p - s))) & mask


def step(row: BitRow) -> BitRow:
    """One generation: ``new[k] = row[k] XOR row[k + 1]``."""
    if row.period is not None:
        return BitRow(row.bits ^ _rot(row.bits, 1, row.period), row.length, row.period)
    n = max(row.length - 1, 0)
    return BitRow((row.bits ^ (row.bits >> 1)) & ((1 << n) - 1), n)


def binom_odd(n: int, k: int) -> bool:
    """``C(n, k)`` is odd iff every binary digit of ``k`` is a digit of ``n``."""
    return 0 <= k <= n and (k & n) == k


def _submasks(m: int):
    j = m
    while True:
        yield j
        if j == 0:
            return
        j = (j - 1) & m


def jump(row: BitRow, m: int) -> BitRow:
    """``m`` generations at once: ``new[k] = XOR of row[k + j]`` over odd ``C(m, j)``."""
    if m < 0:
        raise ValueError("m must be >= 0")
    if row.period is not None:
        # (1 + X)^m is the product of (1 + X^(2^i)) over the binary digits of m
        p, bits, i = row.period, row.bits, 0
        while m >> i:
            if (m >> i) & 1:
                bits ^= _rot(bits, 1 << i, p)
            i += 1
        return BitRow(bits, row.length, p)
    if m >= row.length:
        raise ValueError(f"jump by {m} leaves nothing of a length-{row.length} row")
    acc = 0
    for j in _submasks(m):
        acc ^= row.bits >> j
    n = row.length - m
    return BitRow(acc & ((1 << n) - 1), n)


def order_of_two(p: int) -> int:
    if p == 2 or p < 2:
        raise ValueError("order of 2 needs an odd prime")
    return int(n_order(2, p))


def square_free_row(p: int, length: int | None = None) -> BitRow:
    """First row of the ``p``-exponents of the square-free kernels: ones at multiples of ``p``.

    Periodic (one period of ``p`` bits) unless ``length`` is given.
    """
    if length is None:
        return BitRow(1 << (p - 1), p, p)
    bits = 0
    for k in range(p, length + 1, p):
        bits |= 1 << (k - 1)
    return BitRow(bits, length)


@dataclass(frozen=True)
class PeriodReport:
    prime: int
    pre_period_rows: int
    minimal_period: int
    bound: int
    witness: BitRow

    def summary(self) -> str:
        return f"pi={self.minimal_period} bound={self.bound} pre={self.pre_period_rows}"


def minimal_period(p: int, ceiling: int = 2**64) -> PeriodReport:
    """Least row period of the ``p``-exponents of the square-free-kernel triangle.

    Candidates are the divisors of ``2**ord_p(2) - 1`` in increasing order.
    """
    n = order_of_two(p)
    bound = 2**n - 1
    if bound > ceiling:
        raise ValueError(f"2^{n}-1 exceeds the factoring ceiling {ceiling}")
    row1 = square_free_row(p)
    row2 = step(row1)
    for d in divisors(bound):
        if jump(row2, d) == row2:
            break
    else:  # pragma: no cover - the bound itself is always a period
        raise AssertionError(f"no period found for p={p}")
    pre = 0 if jump(row1, d) == row1 else 1
    return PeriodReport(p, pre, int(d), bound, row2)


def west_bit(p: int, m: int) -> int:
    """``v_p`` of the ``m``-th west term of the square-free-kernel triangle."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return jump(square_free_row(p), m - 1)[1]


def west_bits(p: int, M: int) -> list[int]:
    return [west_bit(p, m) for m in range(1, M + 1)]


def full_width_coincide(p: int, d: int, K: int) -> bool:
    """Do rows 2 and ``2 + d`` agree on their first ``K`` columns (uncompressed)?"""
    row1 = square_free_row(p, K + d + 1)
    row2 = step(row1)
    later = jump(row2, d)
    mask = (1 << K) - 1
    return (later.bits & mask) == (row2.bits & mask)


def binom_parity_word(H: int) -> list[tuple[int, int]]:
    """Run lengths of ``C(H, k) mod 2`` for ``k = 0..H`` as ``(symbol, count)`` blocks."""
    if H < 1:
        raise ValueError("H must be >= 1")
    seq = (1 if binom_odd(H, k) else 0 for k in range(H + 1))
    return [(s, sum(1 for _ in g)) for s, g in groupby(seq)]


def format_word(word: list[tuple[int, int]]) -> str:
    return " ".join(f"{s}^{c}" if c > 1 else str(s) for s, c in word)


def parse_word(text: str) -> list[tuple[int, int]]:
    out = []
    for block in text.split():
        sym, _, count = block.partition("^")
        if sym not in ("0", "1"):
            raise ValueError(f"bad symbol in block {block!r}")
        out.append((int(sym), int(count) if count else 1))
    return out
