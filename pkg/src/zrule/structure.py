"""Word combinatorics of the 2-exponents, Z-solitons and bounded conjecture checks."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .arith import FactoredNat
from .engine import ABSENT, InitialGeneration, Tomography, _window, tomography, west_edge, west_exponents
from .gf2 import binom_odd

# brick-lattice neighbours (drow, dcol): siblings, parents, children
NEIGHBOURS = ((0, -1), (0, 1), (-1, 0), (-1, 1), (1, -1), (1, 0))
_STRUCTURE = np.array([[0, 1, 1], [1, 1, 1], [1, 1, 0]], dtype=bool)


def ruler_word(variant: str, N: int) -> list[int]:
    """First ``N`` letters of ``w0`` (start ``0``) or ``w1`` (start ``1``).

    Built by the doubling recursion ``x_n = x_{n-1} ++ c ++ x_{n-1}``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if variant not in ("w0", "w1"):
        raise ValueError(f"unknown variant {variant!r}")
    start = 0 if variant == "w0" else 1
    word, n = [start], 1
    while len(word) < N:
        n += 1
        word = word + [start + n - 1] + word
    return word[:N]


def alpha(seq) -> list[int]:
    if len(seq) < 2:
        raise ValueError("alpha needs at least two terms")
    return [abs(b - a) for a, b in zip(seq, seq[1:])]


def beta(seq) -> list[int]:
    return [x for x in seq for _ in (0, 1)]


@dataclass(frozen=True)
class P2Triangle:
    height: int
    weight: int
    rows: tuple[tuple[int, ...], ...]


def p2_triangle(h: int, t: int) -> P2Triangle:
    """Top ``h`` rows of Pascal's triangle mod 2 with odd entries set to ``t``."""
    if h < 1:
        raise ValueError("h must be >= 1")
    rows = tuple(tuple(t if binom_odd(r, c) else 0 for c in range(r + 1)) for r in range(h))
    return P2Triangle(h, t, rows)


def seeded_alpha(h: int, t: int) -> list[list[int]]:
    """Rows grown by ``alpha`` from a lone ``t`` centred in ``2h - 1`` zeros."""
    row = [0] * (h - 1) + [t] + [0] * (h - 1)
    out = [row]
    for _ in range(h - 1):
        row = alpha(row)
        out.append(row)
    return out


def _w1(n: int) -> int:
    return (n & -n).bit_length()


def predict_v2(j: int, k: int) -> int:
    """``v_2`` of cell ``(j, k)`` of the naturals triangle, from the slice layout alone.

    Row 1 is ``w0``.  Row ``j >= 2`` sits in the slice of height
    ``H = 2**(ceil(log2 j) - 1)`` starting at row ``H + 1``; the slice is
    tiled by ``P2(H, t)`` triangles whose apexes sit at columns ``H, 2H, ...``
    of its first row and whose weights run along ``beta(w1)``.
    """
    if j < 1 or k < 1:
        raise ValueError("j and k must be >= 1")
    if j == 1:
        return _w1(k) - 1
    H = 1 << ((j - 1).bit_length() - 1)
    r = j - H
    i = (k - 1) // H + 1
    start = i * H - r + 1
    if k < start:
        return 0
    return _w1((i + 1) // 2) if binom_odd(r - 1, k - start) else 0


# -- solitons ---------------------------------------------------------------


class WindowCapExceeded(RuntimeError):
    def __init__(self, report):
        super().__init__(f"soliton S({report.prime},{report.power}) still touches the window at the cell cap")
        self.report = report


@dataclass
class SolitonReport:
    prime: int
    power: int
    cells: frozenset[tuple[int, int]]
    bbox: tuple[int, int, int, int]  # row_min, row_max, col_min, col_max
    touched_boundary: bool
    max_exponent: int
    half_width: int

    @property
    def seed(self) -> tuple[int, int]:
        return (1, self.prime**self.power)


def _component(tomo: Tomography, seed: tuple[int, int], threshold: int, left_is_edge: bool):
    A = tomo.as_array()
    off = tomo.window_offset
    high = A >= threshold
    labels, _ = ndimage.label(high, structure=_STRUCTURE)
    lab = labels[seed[0] - 1, seed[1] - off]
    if lab == 0:
        raise ValueError(f"seed {seed} has exponent below {threshold}")
    comp = labels == lab
    # 0 = computed, 1 = true edge of the triangle, 2 = unknown
    status = np.full((A.shape[0] + 2, A.shape[1] + 2), 2, dtype=np.int8)
    status[1:-1, 1:-1] = np.where(A == ABSENT, 2, 0)
    status[0, :] = 1
    if left_is_edge:
        status[:, 0] = 1
    padded = np.zeros_like(status, dtype=bool)
    padded[1:-1, 1:-1] = comp
    touched = False
    for dj, dk in NEIGHBOURS:
        shifted = np.roll(np.roll(padded, dj, axis=0), dk, axis=1)
        if np.any(shifted & (status == 2)):
            touched = True
            break
    rr, cc = np.nonzero(comp)
    cells = frozenset(zip((rr + 1).tolist(), (cc + off).tolist()))
    bbox = (int(rr.min()) + 1, int(rr.max()) + 1, int(cc.min()) + off, int(cc.max()) + off)
    return cells, bbox, touched, int(A[comp].max())


def extract_soliton(p: int, g: int, half_width: int | None = None, cap_cells: int = 2**20) -> SolitonReport:
    """Component of exponents ``>= 2`` grown from the first-row cell ``p**g``.

    The window doubles until the component no longer reaches an unknown cell;
    past ``cap_cells`` cells, ``WindowCapExceeded`` carries the partial report.
    """
    if g < 2:
        raise ValueError("solitons start at g = 2")
    c = p**g
    h = half_width or 4 * p ** math.ceil(g / 2)
    while True:
        left = max(1, c - h)
        tomo = _window(p, left, c + h, h)
        cells, bbox, touched, emax = _component(tomo, (1, c), 2, left == 1)
        report = SolitonReport(p, g, cells, bbox, touched, emax, h)
        if not touched:
            return report
        h *= 2
        if (2 * h + 1) * h > cap_cells:
            raise WindowCapExceeded(report)


def hex_distance(a: tuple[int, int], b: tuple[int, int]) -> int:
    dr, dq = b[0] - a[0], b[1] - a[1]
    return (abs(dq) + abs(dr) + abs(dq + dr)) // 2


def min_lattice_distance(A, B) -> int:
    a = np.array(sorted(A), dtype=np.int64)
    b = np.array(sorted(B), dtype=np.int64)
    best = None
    for chunk in np.array_split(a, max(1, len(a) // 512)):
        dr = b[None, :, 0] - chunk[:, None, 0]
        dq = b[None, :, 1] - chunk[:, None, 1]
        d = int(((np.abs(dq) + np.abs(dr) + np.abs(dq + dr)) // 2).min())
        best = d if best is None else min(best, d)
    return best


@dataclass
class DisjointnessReport:
    prime: int
    g_max: int
    solitons: dict[int, SolitonReport]
    overlaps: list[tuple[int, int]] = field(default_factory=list)
    touchings: list[tuple[int, int]] = field(default_factory=list)
    incomplete: list[int] = field(default_factory=list)
    distances: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.overlaps and not self.touchings


def check_soliton_disjointness(p: int, g_max: int, cap_cells: int = 2**20) -> DisjointnessReport:
    if g_max < 2:
        raise ValueError("g_max must be >= 2")
    rep = DisjointnessReport(p, g_max, {})
    for g in range(2, g_max + 1):
        try:
            s = extract_soliton(p, g, cap_cells=cap_cells)
        except WindowCapExceeded as exc:
            s = exc.report
        rep.solitons[g] = s
        if s.touched_boundary:
            rep.incomplete.append(g)
    gs = sorted(rep.solitons)
    for i, g1 in enumerate(gs):
        for g2 in gs[i + 1 :]:
            A, B = rep.solitons[g1].cells, rep.solitons[g2].cells
            d = min_lattice_distance(A, B)
            rep.distances[(g1, g2)] = d
            if d == 0:
                rep.overlaps.append((g1, g2))
            elif d == 1:
                rep.touchings.append((g1, g2))
    return rep


@dataclass
class ComponentCensus:
    prime: int
    K: int
    seeds_by_component: dict[int, list[int]]
    unseeded: int

    @property
    def seeds_separated(self) -> bool:
        return all(len(v) == 1 for v in self.seeds_by_component.values())


def soliton_census(p: int, K: int) -> ComponentCensus:
    """Label every exponent ``>= 2`` component of the naturals ``p``-tomography of size ``K``.

    Components are maximal under brick adjacency, so two seeds ``p**g`` are
    separated (neither overlapping nor touching) iff they land in different
    components.
    """
    A = tomography(InitialGeneration.naturals(), p, K).as_array()
    labels, n = ndimage.label(A >= 2, structure=_STRUCTURE)
    seeds: dict[int, list[int]] = {}
    g = 2
    while p**g <= K:
        seeds.setdefault(int(labels[0, p**g - 1]), []).append(g)
        g += 1
    return ComponentCensus(p, K, seeds, n - len(seeds))


# -- west-edge checkers -----------------------------------------------------


@dataclass
class SquarefreeReport:
    M: int
    first_violation: tuple[int, FactoredNat] | None

    @property
    def ok(self) -> bool:
        return self.first_violation is None


def check_squarefree_west(gen: InitialGeneration, M: int, workers: int | None = None) -> SquarefreeReport:
    edge = west_edge(gen, M, workers)
    for m, w in enumerate(edge.terms, 1):
        if not w.is_squarefree():
            return SquarefreeReport(M, (m, w))
    return SquarefreeReport(M, None)


def v2_west_profile(M: int) -> list[int]:
    """``v_2(W(m))`` for the naturals triangle, ``m = 1..M``."""
    if M < 1:
        raise ValueError("M must be >= 1")
    return [int(x) for x in west_exponents(InitialGeneration.naturals(), 2, M)]


def power_of_two_pattern(M: int) -> list[int]:
    return [1 if m >= 2 and m & (m - 1) == 0 else 0 for m in range(1, M + 1)]
