"""Extreme values of the square-free west edge and the naturals/square-free comparison."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arith import FactoredNat, is_prime, primes_up_to, squarefree_kernel
from .engine import InitialGeneration, WestEdge, west_edge

NATURALS = InitialGeneration.naturals()
SQUAREFREE = InitialGeneration.squarefree_kernels()


def _check_odd_prime(p: int):
    if p < 3 or p % 2 == 0:
        raise ValueError(f"{p} is not an odd prime")


def lambda_(p: int, m: int) -> int:
    """Number of ``i >= 1`` with ``m + 1 - i*p`` in ``[0, m]``, i.e. ``floor((m + 1)/p)``."""
    _check_odd_prime(p)
    if p > m:
        raise ValueError("lambda needs p <= m")
    return (m + 1) // p


def mu(p: int, m: int) -> int:
    """Number of odd ``i`` with ``i*p <= m + 1`` (``m`` even)."""
    _check_odd_prime(p)
    if m % 2:
        raise ValueError("mu needs an even m")
    if p >= m:
        raise ValueError("mu needs p < m")
    return ((m + 1) // p + 1) // 2


def lambda_system(p: int, m: int) -> int:
    """Largest ``L`` with ``s_i = m + 1 - i*p`` in ``[0, m]`` for every ``i <= L``, by direct search."""
    L = 0
    while 0 <= m + 1 - (L + 1) * p <= m:
        L += 1
    return L


def mu_system(p: int, m: int) -> int:
    """How many ``i >= 1`` give an even ``t_i = m + 1 - i*p`` in ``[0, m]``, by direct search."""
    count = 0
    for i in range(1, m + 2):
        t = m + 1 - i * p
        if t < 0:
            break
        if t <= m and t % 2 == 0:
            count += 1
    return count


def is_mersenne_prime(g: int) -> bool:
    return is_prime(2**g - 1)


def west_p_extreme(g: int, which: str) -> FactoredNat:
    """Closed-form ``W_P(2**g - 1)``, ``W_P(2**g)`` or ``W_P(2**g + 1)`` for ``g >= 2``."""
    if g < 2:
        raise ValueError("g must be >= 2")
    n = 2**g
    if which == "minus1":
        m = n - 2
        ps = [p for p in primes_up_to(n - 3) if p > 2 and mu(p, m) % 2]
        if is_mersenne_prime(g):
            ps.append(n - 1)
    elif which == "exact":
        m = n - 1
        ps = [p for p in primes_up_to(m) if p > 2 and lambda_(p, m) % 2]
    elif which == "plus1":
        return squarefree_kernel(FactoredNat.from_int(n + 1))
    else:
        raise ValueError(f"unknown extreme {which!r}")
    return FactoredNat(tuple((p, 1) for p in sorted(ps)))


EXTREME_OFFSETS = {-1: "minus1", 0: "exact", 1: "plus1"}


@dataclass(frozen=True)
class ExtremeRow:
    g: int
    m: int
    value: FactoredNat
    omega: int
    source: str
    formula_agrees: bool | None = None


def scientific(n: FactoredNat, digits: int = 3) -> str:
    """Display form ``d.dd·10^e``, truncated (not rounded) from the exact value."""
    s = str(n.value)
    mant = s[0] + ("." + s[1:digits].ljust(digits - 1, "0") if digits > 1 else "")
    return f"{mant}·10^{len(s) - 1}"


def table_west_lag(g_range, edge: WestEdge | None = None) -> list[ExtremeRow]:
    """Engine ``W_P(m)`` for ``m = 2**g - 2 .. 2**g + 2``, with the closed forms cross-checked."""
    g_range = list(g_range)
    M = 2 ** max(g_range) + 2
    if edge is None or len(edge) < M:
        edge = west_edge(SQUAREFREE, M)
    rows = []
    for g in g_range:
        for off in (-2, -1, 0, 1, 2):
            m = 2**g + off
            w = edge[m]
            agree = None
            if off in EXTREME_OFFSETS and g >= 2:
                agree = west_p_extreme(g, EXTREME_OFFSETS[off]) == w
            rows.append(ExtremeRow(g, m, w, len(w.factors), "engine", agree))
    return rows


def unique_ordered(edge) -> list[FactoredNat]:
    terms = edge.terms if isinstance(edge, WestEdge) else list(edge)
    return sorted(set(terms))


@dataclass
class Conjecture3Case:
    g: int
    n: int
    predicted: int
    computed: int

    @property
    def match(self) -> bool:
        return self.predicted == self.computed


@dataclass
class Conjecture3Report:
    cases: list[Conjecture3Case]
    skipped: list[int]

    @property
    def ok(self) -> bool:
        return all(c.match for c in self.cases)


def largest_square_divisor(n: FactoredNat) -> FactoredNat:
    return FactoredNat(tuple((p, e - e % 2) for p, e in n.factors if e >= 2))


def check_conjecture3(g_max: int, M_budget: int, edge: WestEdge | None = None) -> Conjecture3Report:
    """Compare ``W_N(2**g + 1)`` with ``2**g + 1`` divided by its largest square divisor."""
    gs = [g for g in range(g_max + 1) if 2**g + 1 <= M_budget]
    skipped = [g for g in range(g_max + 1) if 2**g + 1 > M_budget]
    cases = []
    if gs:
        M = 2 ** max(gs) + 1
        if edge is None or len(edge) < M:
            edge = west_edge(NATURALS, M)
        for g in gs:
            n = 2**g + 1
            f = FactoredNat.from_int(n)
            predicted = n // largest_square_divisor(f).value
            cases.append(Conjecture3Case(g, n, predicted, edge[n].value))
    return Conjecture3Report(cases, skipped)


def _surplus(a: FactoredNat, b: FactoredNat) -> int:
    # omega(a / gcd(a, b))
    other = b.as_dict()
    return sum(1 for p, e in a.factors if e > other.get(p, 0))


@dataclass
class ComparisonStats:
    K: int
    equality_indices: list[int]
    s_naturals: list[int]
    s_squarefree: list[int]

    @property
    def equality_count(self) -> int:
        return len(self.equality_indices)


def comparison_stats(K: int, edge_n: WestEdge | None = None, edge_p: WestEdge | None = None) -> ComparisonStats:
    if edge_n is None or len(edge_n) < K:
        edge_n = west_edge(NATURALS, K)
    if edge_p is None or len(edge_p) < K:
        edge_p = west_edge(SQUAREFREE, K)
    eq, fn, fp = [], [], []
    for m in range(1, K + 1):
        a, b = edge_n[m], edge_p[m]
        if a == b:
            eq.append(m)
        fn.append(_surplus(a, b))
        fp.append(_surplus(b, a))
    size = max(fn + fp) + 1
    hn = np.bincount(fn, minlength=size).tolist()
    hp = np.bincount(fp, minlength=size).tolist()
    return ComparisonStats(K, eq, hn, hp)


def divisor_listing(m: int, edge: WestEdge | None = None) -> list[tuple[int, bool]]:
    """Every prime ``<= m`` with whether it divides ``W_N(m)``."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if edge is None or len(edge) < m:
        edge = west_edge(NATURALS, m)
    present = set(edge[m].primes())
    return [(p, p in present) for p in primes_up_to(m)]
