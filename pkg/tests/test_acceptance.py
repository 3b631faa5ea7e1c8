"""End-to-end acceptance checks, one test per criterion.

The conftest hook prints a ``criterion NN: PASS|FAIL`` line for each of them
at the end of the run.
"""

import numpy as np
import pytest

from reference_values import (
    ABSENT_FROM_255,
    ABSENT_FROM_256,
    CONJECTURE3_SPOTS,
    EQUAL_INDICES_35,
    EQUALITY_COUNT_1024,
    FIGURE1_ROWS,
    PERIODS,
    SURPLUS_NATURALS_1024,
    SURPLUS_SQUAREFREE_1024,
    TABLE1,
    THEOREM5_SPOTS,
    WEST_BITS_5,
    WEST_NATURALS_35,
    WEST_SQUAREFREE_35,
)
from zrule.arith import PrimeTable, omega, primes_up_to, z_rule
from zrule.cli import main
from zrule.engine import InitialGeneration, build_triangle, tomography, west_edge
from zrule.extremes import (
    check_conjecture3,
    comparison_stats,
    divisor_listing,
    lambda_,
    lambda_system,
    mu,
    mu_system,
    scientific,
    table_west_lag,
    west_p_extreme,
)
from zrule.gf2 import BitRow, binom_odd, jump, minimal_period, order_of_two, step, west_bit, west_bits
from zrule.structure import (
    check_soliton_disjointness,
    check_squarefree_west,
    extract_soliton,
    p2_triangle,
    power_of_two_pattern,
    predict_v2,
    seeded_alpha,
    soliton_census,
    v2_west_profile,
)

NAT = InitialGeneration.naturals()
SQF = InitialGeneration.squarefree_kernels()

pytestmark = pytest.mark.acceptance


def test_criterion_01_small_triangle():
    t = build_triangle(NAT, 12)
    assert t.ints() == FIGURE1_ROWS
    assert t.ints()[3] == [6, 30, 10, 210, 420, 84, 1260, 1980, 330]
    assert [w.value for w in t.west()] == [1, 2, 3, 6, 5, 15, 105, 70, 1, 5, 33, 55]


def test_criterion_02_west_lists():
    wn, wp = west_edge(NAT, 35), west_edge(SQF, 35)
    assert wn.ints() == WEST_NATURALS_35
    assert wp.ints() == WEST_SQUAREFREE_35
    assert [m for m in range(1, 36) if wn[m] == wp[m]] == EQUAL_INDICES_35


def test_criterion_03_periods():
    for p, pi in PERIODS.items():
        rep = minimal_period(p)
        assert rep.minimal_period == pi, p
        assert (2 ** order_of_two(p) - 1) % pi == 0
        assert jump(rep.witness, pi) == rep.witness


def test_criterion_04_west_period_bits():
    assert west_bits(5, 16) == WEST_BITS_5


def test_criterion_05_two_adic_slices():
    A = tomography(NAT, 2, 512).as_array()
    cells = 0
    for j in range(1, 513):
        got = [predict_v2(j, k) for k in range(1, 514 - j)]
        assert got == A[j - 1, : 513 - j].tolist(), j
        cells += len(got)
    assert cells == 512 * 513 // 2


def test_criterion_06_two_adic_west():
    prof = v2_west_profile(1024)
    assert prof == power_of_two_pattern(1024)
    assert max(prof) == 1  # no west term divisible by 4


def test_criterion_07_extremes_closed_forms(edge_p):
    for g in range(4, 11):
        for off, which in ((-1, "minus1"), (0, "exact"), (1, "plus1")):
            assert west_p_extreme(g, which) == edge_p[2**g + off], (g, which)
    spots = {15: (4, "minus1"), 16: (4, "exact"), 31: (5, "minus1"), 32: (5, "exact"),
             1025: (10, "plus1"), 32769: (15, "plus1")}
    for m, value in THEOREM5_SPOTS.items():
        g, which = spots[m]
        assert west_p_extreme(g, which).value == value
        if m <= len(edge_p):
            assert edge_p[m].value == value
    # the one index past the shared edge, from the series side
    assert [p for p in primes_up_to(32769)[1:] if west_bit(p, 32769)] == [3, 11, 331]


def test_criterion_08_extremes_table(edge_p):
    rows = {r.m: r for r in table_west_lag(range(6, 11), edge_p)}
    assert sorted(rows) == sorted(TABLE1)
    for m, (shown, head, tail, om) in TABLE1.items():
        ps = list(rows[m].value.primes())
        assert rows[m].omega == om, m
        assert ps[: len(head)] == head, m
        assert not tail or ps[-len(tail) :] == tail, m
        if isinstance(shown, int):
            assert rows[m].value.value == shown and ps == head
        else:
            assert scientific(rows[m].value) == shown, m
    assert omega(edge_p[1023]) == 132


def test_criterion_09_surplus_table(edge_n, edge_p):
    st = comparison_stats(1024, edge_n, edge_p)
    assert st.s_naturals == SURPLUS_NATURALS_1024
    assert st.s_squarefree == SURPLUS_SQUAREFREE_1024
    assert st.equality_count == EQUALITY_COUNT_1024


def test_criterion_10_divisor_listings(edge_n):
    for m, absent, om in ((255, ABSENT_FROM_255, 40), (256, ABSENT_FROM_256, 37)):
        listing = divisor_listing(m, edge_n)
        assert [p for p, d in listing if not d] == absent
        assert [p for p, d in listing if d] == list(edge_n[m].primes())
        assert omega(edge_n[m]) == om


def test_criterion_11_conjecture3(edge_n):
    rep = check_conjecture3(13, 8200, edge_n)
    assert rep.ok and not rep.skipped and len(rep.cases) == 14
    got = {c.n: c.computed for c in rep.cases}
    assert all(got[n] == v for n, v in CONJECTURE3_SPOTS.items())


def test_criterion_12_squarefree_west(edge_n):
    assert check_squarefree_west(NAT, 1024).ok
    # stretch: the shared 8200-term edge
    assert len(edge_n) == 8200
    assert all(w.is_squarefree() for w in edge_n.terms)


def test_criterion_13_property_suites():
    # z_rule against ab / gcd(a, b)**2 on every pair a <= b <= 10**4
    N = 10**4
    table = PrimeTable(N)
    F = [None] + [table.factorize(n) for n in range(1, N + 1)]
    B = np.arange(1, N + 1, dtype=np.int64)
    for a in range(1, N + 1):
        fa = F[a]
        got = np.fromiter([z_rule(fa, fb).value for fb in F[a:]], dtype=np.int64, count=N - a + 1)
        b = B[a - 1 :]
        g = np.gcd(a, b)
        assert np.array_equal(got, (a // g) * (b // g)), a
    # ... and the swap, on a strided grid
    for a in range(1, N + 1, 37):
        for b in range(1, N + 1, 41):
            assert z_rule(F[a], F[b]) == z_rule(F[b], F[a])

    rng = np.random.default_rng(20240601)
    for _ in range(200):
        n = int(rng.integers(65, 400))
        bits = int.from_bytes(rng.bytes((n + 7) // 8), "little") & ((1 << n) - 1)
        r = BitRow(bits, n)
        m = int(rng.integers(1, 65))
        it = r
        for _ in range(m):
            it = step(it)
        assert jump(r, m) == it

    for p in primes_up_to(2048)[1:]:
        for m in range(p, 2049):
            assert lambda_(p, m) == lambda_system(p, m)
            if m % 2 == 0 and p < m:
                assert mu(p, m) == mu_system(p, m)

    row = [1]
    for H in range(1, 4097):
        row = [1] + [(x + y) & 1 for x, y in zip(row, row[1:])] + [1]
        assert [int(binom_odd(H, k)) for k in range(H + 1)] == row

    for t in (1, 2, 3, 10):
        for h in range(1, 65):
            tri, grown = p2_triangle(h, t), seeded_alpha(h, t)
            for r in range(h):
                lo = h - 1 - r
                assert tuple(grown[r][lo : lo + r + 1]) == tri.rows[r]
                assert not any(grown[r][:lo]) and not any(grown[r][lo + r + 1 :])


def test_criterion_14_solitons():
    rep = check_soliton_disjointness(2, 6)
    assert rep.ok and not rep.incomplete
    census = soliton_census(2, 512)
    assert census.seeds_separated
    for p in (3, 5):
        for g in (2, 3):
            assert not extract_soliton(p, g).touched_boundary, (p, g)


RECIPES = [
    ("triangle.json", ["triangle", "--k", "12", "--format", "json"]),
    ("west_n.csv", ["west", "--gen", "naturals", "--m", "35", "--format", "csv"]),
    ("west_p.json", ["west", "--gen", "squarefree", "--m", "35", "--format", "json"]),
    ("period19.json", ["period", "--p", "19", "--format", "json"]),
    ("periods.txt", ["verify", "periods"]),
    ("theorem3.txt", ["verify", "theorem3", "--k", "512"]),
    ("corollary1.txt", ["verify", "corollary1", "--m", "1024"]),
    ("extremes.csv", ["extremes", "--g-min", "4", "--g-max", "10", "--format", "csv"]),
    ("compare.csv", ["compare", "--k", "1024", "--format", "csv"]),
    ("compare.json", ["compare", "--k", "1024", "--format", "json"]),
    ("conjecture3.txt", ["verify", "conjecture3", "--g-max", "10"]),
    ("tomo2.ppm", ["render", "--gen", "naturals", "--p", "2", "--k", "129"]),
    ("tomo3.ppm", ["render", "--gen", "squarefree", "--p", "3", "--k", "60", "--zoom", "3"]),
]


def test_criterion_15_determinism(tmp_path, capsys):
    runs = []
    for i in range(2):
        d = tmp_path / f"run{i}"
        d.mkdir()
        for name, argv in RECIPES:
            assert main(argv + ["--out", str(d / name)]) == 0, argv
        runs.append({name: (d / name).read_bytes() for name, _ in RECIPES})
    capsys.readouterr()
    for name, _ in RECIPES:
        assert runs[0][name] == runs[1][name], name
        assert runs[0][name]
    assert b"\r\n" not in runs[0]["compare.csv"]
    assert runs[0]["compare.csv"].splitlines()[1] == b"0,391,353"
