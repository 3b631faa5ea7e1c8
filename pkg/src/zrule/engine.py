"""Growing Z-rule triangles and their per-prime tomographies.

A triangle is grown generation by generation from an initial generation.  The
Z-rule acts on each prime independently, so the exponent lattice of a single
prime (its tomography) evolves by absolute differences of neighbours, and the
full triangle is the cell-wise product of all tomographies.

Row and column indices are 1-based in the public API, matching ``t[j][k]``
with ``t[j][k] = Z(t[j-1][k], t[j-1][k+1])``.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .arith import ONE, FactoredNat, PrimeTable, z_rule

ABSENT = -1
EXP_DTYPE = np.int16


class Kind(str, Enum):
    NATURALS = "naturals"
    SQUAREFREE_KERNELS = "squarefree"
    P_SPACED = "p-spaced"
    P_SECTION = "p-section"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class InitialGeneration:
    """First row of a triangle.

    The zero terms of the p-spaced and p-section sequences are stored as the
    value 1: a zero-height tower at every prime, which is exactly how they
    behave under the exponent-level rule.
    """

    kind: Kind
    prime: int | None = None
    values: tuple[FactoredNat, ...] = ()

    @classmethod
    def naturals(cls):
        return cls(Kind.NATURALS)

    @classmethod
    def squarefree_kernels(cls):
        return cls(Kind.SQUAREFREE_KERNELS)

    @classmethod
    def p_spaced(cls, p: int):
        return cls(Kind.P_SPACED, prime=p)

    @classmethod
    def p_section(cls, p: int):
        return cls(Kind.P_SECTION, prime=p)

    @classmethod
    def explicit(cls, values):
        vals = tuple(v if isinstance(v, FactoredNat) else FactoredNat.from_int(int(v)) for v in values)
        return cls(Kind.EXPLICIT, values=vals)

    def label(self) -> str:
        if self.kind in (Kind.P_SPACED, Kind.P_SECTION):
            return f"{self.kind.value}({self.prime})"
        if self.kind is Kind.EXPLICIT:
            return f"explicit[{len(self.values)}]"
        return self.kind.value

    def _check_length(self, K: int):
        if self.kind is Kind.EXPLICIT and K > len(self.values):
            raise ValueError(f"explicit generation has {len(self.values)} terms, {K} requested")

    def terms(self, K: int) -> list[FactoredNat]:
        self._check_length(K)
        if self.kind is Kind.EXPLICIT:
            return list(self.values[:K])
        if self.kind in (Kind.P_SPACED, Kind.P_SECTION):
            p = self.prime
            return [FactoredNat(((p, int(e)),)) if e else ONE for e in self.valuations(p, K)]
        table = PrimeTable(max(K, 1))
        out = [table.factorize(n) for n in range(1, K + 1)]
        if self.kind is Kind.SQUAREFREE_KERNELS:
            out = [FactoredNat(tuple((p, 1) for p, _ in f.factors)) for f in out]
        return out

    def primes(self, K: int) -> list[int]:
        """Primes dividing at least one of the first ``K`` terms."""
        self._check_length(K)
        if self.kind in (Kind.P_SPACED, Kind.P_SECTION):
            return [self.prime] if self.prime <= K else []
        if self.kind is Kind.EXPLICIT:
            return sorted({p for v in self.values[:K] for p, _ in v.factors})
        return PrimeTable(K).primes() if K >= 2 else []

    def valuations(self, p: int, K: int) -> np.ndarray:
        """Exponent of ``p`` in each of the first ``K`` terms."""
        self._check_length(K)
        if self.kind is Kind.EXPLICIT:
            return np.array([dict(v.factors).get(p, 0) for v in self.values[:K]], dtype=EXP_DTYPE)
        n = np.arange(1, K + 1, dtype=np.int64)
        if self.kind in (Kind.P_SPACED, Kind.P_SECTION) and p != self.prime:
            return np.zeros(K, dtype=EXP_DTYPE)
        if self.kind in (Kind.SQUAREFREE_KERNELS, Kind.P_SPACED):
            return (n % p == 0).astype(EXP_DTYPE)
        out = np.zeros(K, dtype=EXP_DTYPE)
        q = p
        while q <= K:
            out[q - 1 :: q] += 1
            q *= p
        return out


@dataclass
class Triangle:
    rows: list[list[FactoredNat]]
    origin: str = ""

    @property
    def K(self) -> int:
        return len(self.rows)

    def cell(self, j: int, k: int) -> FactoredNat:
        return self.rows[j - 1][k - 1]

    def west(self) -> list[FactoredNat]:
        return [row[0] for row in self.rows]

    def ints(self) -> list[list[int]]:
        return [[c.value for c in row] for row in self.rows]


@dataclass
class Tomography:
    """Exponent lattice of one prime.

    ``rows[j-1][i]`` is the exponent at row ``j`` and absolute first-row
    column ``window_offset + i``.  Cells that cannot be computed from the
    stored part of the first row hold ``ABSENT``.
    """

    prime: int
    rows: list[np.ndarray]
    window_offset: int = 1
    origin: str = ""

    @property
    def depth(self) -> int:
        return len(self.rows)

    def cell(self, j: int, k: int) -> int:
        """Exponent at row ``j``, absolute column ``k``; ABSENT outside."""
        if not 1 <= j <= len(self.rows):
            return ABSENT
        i = k - self.window_offset
        row = self.rows[j - 1]
        if not 0 <= i < len(row):
            return ABSENT
        return int(row[i])

    def as_array(self) -> np.ndarray:
        """Rows padded on the right with ABSENT into a rectangle."""
        width = max(len(r) for r in self.rows)
        out = np.full((len(self.rows), width), ABSENT, dtype=EXP_DTYPE)
        for j, r in enumerate(self.rows):
            out[j, : len(r)] = r
        return out


@dataclass
class WestEdge:
    terms: list[FactoredNat]
    origin: str = ""
    exponents: dict[int, np.ndarray] = field(default_factory=dict, repr=False)

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, m: int) -> FactoredNat:
        """1-based access: ``edge[m]`` is ``W(m)``."""
        if m < 1:
            raise IndexError(m)
        return self.terms[m - 1]

    def ints(self) -> list[int]:
        return [t.value for t in self.terms]


def _check_K(K: int):
    if K < 1:
        raise ValueError("K must be >= 1")


def alpha_rows(first: np.ndarray, depth: int | None = None) -> list[np.ndarray]:
    """Rows ``first, alpha(first), alpha^2(first), ...`` (``depth`` rows)."""
    depth = len(first) if depth is None else depth
    rows = [np.asarray(first, dtype=EXP_DTYPE)]
    for _ in range(depth - 1):
        prev = rows[-1]
        rows.append(np.abs(prev[1:] - prev[:-1]))
    return rows


def build_triangle(gen: InitialGeneration, K: int) -> Triangle:
    """Full ``K``-row triangle grown cell by cell with the Z-rule."""
    _check_K(K)
    rows = [gen.terms(K)]
    for _ in range(K - 1):
        prev = rows[-1]
        rows.append([z_rule(prev[k], prev[k + 1]) for k in range(len(prev) - 1)])
    return Triangle(rows, gen.label())


def tomography(gen: InitialGeneration, p: int, K: int) -> Tomography:
    _check_K(K)
    return Tomography(p, alpha_rows(gen.valuations(p, K)), 1, gen.label())


def windowed_tomography(p: int, g: int, half_width: int, depth: int) -> Tomography:
    """Tomography of the naturals around the first-row cell ``p**g``.

    Covers first-row columns ``p**g - half_width .. p**g + half_width``.  Row
    ``j`` is padded on the right with ABSENT where its ancestry would leave
    the window.
    """
    c = p**g
    if half_width < 0 or half_width >= c:
        raise ValueError(f"half_width must satisfy 0 <= half_width < {c}")
    if not 1 <= depth <= max(half_width, 1):
        raise ValueError("depth must satisfy 1 <= depth <= half_width")
    return _window(p, c - half_width, c + half_width, depth)


def _window(p: int, left: int, right: int, depth: int) -> Tomography:
    width = right - left + 1
    first = InitialGeneration.naturals().valuations(p, right)[left - 1 :]
    rows = []
    for j, r in enumerate(alpha_rows(first, depth)):
        padded = np.full(width, ABSENT, dtype=EXP_DTYPE)
        padded[: len(r)] = r
        rows.append(padded)
    return Tomography(p, rows, left, f"naturals[{left}..{right}]")


def reconstruct(tomos: list[Tomography], K: int, gen: InitialGeneration | None = None) -> Triangle:
    """Cell-wise product of tomographies.

    With ``gen`` given, every prime dividing one of its first ``K`` terms must
    be covered, otherwise ``ValueError`` lists the missing ones.
    """
    _check_K(K)
    have = {t.prime for t in tomos}
    if gen is not None:
        missing = [p for p in gen.primes(K) if p not in have]
        if missing:
            raise ValueError(f"missing tomographies for primes {missing}")
    tomos = sorted(tomos, key=lambda t: t.prime)
    rows = []
    for j in range(K):
        width = K - j
        cells: list[list[tuple[int, int]]] = [[] for _ in range(width)]
        for t in tomos:
            if t.window_offset != 1 or len(t.rows) < K:
                raise ValueError(f"tomography for {t.prime} does not cover the K={K} triangle")
            r = t.rows[j]
            for i in np.flatnonzero(r[:width] > 0):
                cells[i].append((t.prime, int(r[i])))
        rows.append([FactoredNat(tuple(c)) for c in cells])
    origin = gen.label() if gen is not None else (tomos[0].origin if tomos else "")
    return Triangle(rows, origin)


def _west_linear(first: np.ndarray, M: int) -> np.ndarray:
    # exponents in {0, 1}: |a - b| is XOR, one big-int shift per generation
    bits = int.from_bytes(np.packbits(first[:M].astype(np.uint8), bitorder="little").tobytes(), "little")
    out = np.zeros(M, dtype=np.uint8)
    for m in range(M):
        out[m] = bits & 1
        bits ^= bits >> 1
    return out


def _west_general(first: np.ndarray, M: int) -> np.ndarray:
    # trapezoid: row j only keeps the M - j + 1 columns that reach the edge
    row = first[:M].astype(EXP_DTYPE)
    out = np.zeros(M, dtype=EXP_DTYPE)
    for m in range(M):
        out[m] = row[0]
        row = np.abs(row[1:] - row[:-1])
    return out


def west_exponents(gen: InitialGeneration, p: int, M: int) -> np.ndarray:
    """``v_p(W(m))`` for ``m = 1..M``."""
    first = gen.valuations(p, M)
    if first.max(initial=0) <= 1:
        return _west_linear(first, M)
    return _west_general(first, M)


def _west_chunk(args):
    gen, primes, M = args
    return [(p, west_exponents(gen, p, M)) for p in primes]


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("ZRULE_THREADS", "1")))
    except ValueError:
        return 1


def west_edge(gen: InitialGeneration, M: int, workers: int | None = None) -> WestEdge:
    """First ``M`` terms of the west edge, one trapezoidal sweep per prime."""
    _check_K(M)
    primes = gen.primes(M)
    workers = default_workers() if workers is None else workers
    if workers > 1 and len(primes) > 1:
        chunks = [primes[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(workers) as ex:
            pairs = [pe for part in ex.map(_west_chunk, [(gen, c, M) for c in chunks]) for pe in part]
        exps = dict(sorted(pairs))
    else:
        exps = {p: west_exponents(gen, p, M) for p in primes}
    cells: list[list[tuple[int, int]]] = [[] for _ in range(M)]
    for p in primes:
        e = exps[p]
        for i in np.flatnonzero(e):
            cells[i].append((p, int(e[i])))
    return WestEdge([FactoredNat(tuple(c)) for c in cells], gen.label(), exps)
