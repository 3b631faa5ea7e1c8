import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from reference_values import WEST_NATURALS_35
from zrule.arith import FactoredNat, PrimeTable, valuation
from zrule.engine import InitialGeneration, tomography
from zrule.structure import (
    WindowCapExceeded,
    alpha,
    beta,
    check_soliton_disjointness,
    check_squarefree_west,
    extract_soliton,
    hex_distance,
    min_lattice_distance,
    p2_triangle,
    power_of_two_pattern,
    predict_v2,
    ruler_word,
    seeded_alpha,
    soliton_census,
    v2_west_profile,
)

NAT = InitialGeneration.naturals()

W0_16 = [0, 1, 0, 2, 0, 1, 0, 3, 0, 1, 0, 2, 0, 1, 0, 4]
W1_16 = [1, 2, 1, 3, 1, 2, 1, 4, 1, 2, 1, 3, 1, 2, 1, 5]


def test_ruler_word_examples():
    assert ruler_word("w0", 16) == W0_16
    assert ruler_word("w1", 16) == W1_16
    assert ruler_word("w0", 1) == [0]


def test_ruler_word_is_two_adic_valuation():
    N = 2**16
    w0, w1 = ruler_word("w0", N), ruler_word("w1", N)
    table = PrimeTable(N)
    for n in range(1, N + 1):
        v = valuation(table.factorize(n), 2)
        assert w0[n - 1] == v
        assert w1[n - 1] == v + 1


def test_ruler_word_matches_factored_valuation():
    w0 = ruler_word("w0", 300)
    assert w0 == [valuation(FactoredNat.from_int(n), 2) for n in range(1, 301)]


def test_ruler_word_rejects():
    with pytest.raises(ValueError):
        ruler_word("w0", 0)
    with pytest.raises(ValueError):
        ruler_word("w2", 4)


def test_alpha_beta_examples():
    assert alpha([0, 1, 0]) == [1, 1]
    assert alpha([4, 4, 4, 4]) == [0, 0, 0]
    assert beta([1, 2, 1]) == [1, 1, 2, 2, 1, 1]
    assert beta([]) == []
    assert beta(W1_16)[:16] == [1, 1, 2, 2, 1, 1, 3, 3, 1, 1, 2, 2, 1, 1, 4, 4]
    with pytest.raises(ValueError):
        alpha([3])


@pytest.mark.parametrize("n", [17, 64, 513, 4096])
def test_alpha_of_ruler_words_is_bubbled_w1(n):
    w0, w1 = ruler_word("w0", n + 1), ruler_word("w1", n + 1)
    b = beta(w1)[:n]
    assert alpha(w0) == b
    assert alpha(w1) == b


@pytest.mark.parametrize("t", [1, 2, 3, 10])
def test_p2_matches_alpha_seeding(t):
    for h in range(1, 65):
        tri = p2_triangle(h, t)
        grown = seeded_alpha(h, t)
        for r in range(h):
            row = grown[r]
            lo = h - 1 - r
            assert tuple(row[lo : lo + r + 1]) == tri.rows[r]
            assert not any(row[:lo]) and not any(row[lo + r + 1 :])


def test_p2_figure_example():
    rows = p2_triangle(7, 10).rows
    assert rows[0] == (10,)
    assert rows[2] == (10, 0, 10)
    assert rows[4] == (10, 0, 0, 0, 10)
    assert rows[5] == (10, 10, 0, 0, 10, 10)
    assert rows[6] == (10, 0, 10, 0, 10, 0, 10)


def test_p2_small():
    assert p2_triangle(1, 5).rows == ((5,),)
    assert p2_triangle(4, 1).rows == ((1,), (1, 1), (1, 0, 1), (1, 1, 1, 1))
    with pytest.raises(ValueError):
        p2_triangle(0, 1)


def test_seeded_alpha_five_t():
    # the five-row picture: 0 0 0 0 t 0 0 0 0 evolving
    grown = seeded_alpha(5, 1)
    assert grown[4] == [1, 0, 0, 0, 1]
    assert grown[3] == [0, 1, 1, 1, 1, 0]


def test_predict_v2_examples():
    assert predict_v2(1, 8) == 3
    assert [predict_v2(2, k) for k in range(1, 7)] == [1, 1, 2, 2, 1, 1]
    with pytest.raises(ValueError):
        predict_v2(0, 1)


def test_predict_v2_whole_triangle_512():
    A = tomography(NAT, 2, 512).as_array()
    for j in range(1, 513):
        got = [predict_v2(j, k) for k in range(1, 514 - j)]
        assert got == A[j - 1, : 513 - j].tolist(), j


@given(st.integers(1, 2000), st.integers(1, 2000))
def test_predict_v2_random_cells(j, k):
    K = j + k - 1
    if K > 2500:
        return
    assert predict_v2(j, k) == int(tomography(NAT, 2, K).rows[j - 1][k - 1])


def test_hex_distance():
    assert hex_distance((1, 1), (1, 1)) == 0
    for dj, dk in ((0, 1), (0, -1), (-1, 0), (-1, 1), (1, -1), (1, 0)):
        assert hex_distance((5, 5), (5 + dj, 5 + dk)) == 1
    assert hex_distance((5, 5), (6, 6)) == 2
    assert hex_distance((5, 5), (4, 4)) == 2
    assert min_lattice_distance({(1, 1)}, {(2, 2), (1, 4)}) == 2


def test_soliton_p2_g2():
    s = extract_soliton(2, 2)
    assert not s.touched_boundary
    assert s.max_exponent == 2
    assert s.bbox[1] <= 4
    assert (1, 4) in s.cells
    assert s.seed == (1, 4)


@pytest.mark.parametrize("p,g", [(2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (5, 2), (5, 3), (7, 2)])
def test_solitons_are_finite(p, g):
    s = extract_soliton(p, g)
    assert not s.touched_boundary
    assert s.seed in s.cells
    A = tomography(NAT, p, s.bbox[3] + s.bbox[1] + 2)
    for j, k in s.cells:
        assert A.cell(j, k) >= 2
    # no cell adjacent to the component is >= 2
    for j, k in s.cells:
        for dj, dk in ((0, -1), (0, 1), (-1, 0), (-1, 1), (1, -1), (1, 0)):
            n = (j + dj, k + dk)
            if n not in s.cells and n[0] >= 1 and n[1] >= 1:
                assert A.cell(*n) < 2


def test_soliton_rejects_g1():
    with pytest.raises(ValueError):
        extract_soliton(2, 1)


def test_soliton_window_cap():
    with pytest.raises(WindowCapExceeded) as exc:
        extract_soliton(3, 4, half_width=4, cap_cells=100)
    assert exc.value.report.touched_boundary


def test_p2_solitons_disjoint():
    rep = check_soliton_disjointness(2, 6)
    assert rep.ok and not rep.incomplete
    assert set(rep.distances) == {(a, b) for a in range(2, 7) for b in range(a + 1, 7)}
    assert min(rep.distances.values()) >= 2


def test_p3_solitons_disjoint():
    rep = check_soliton_disjointness(3, 3)
    assert rep.ok and not rep.incomplete


def test_single_soliton_is_vacuous():
    rep = check_soliton_disjointness(2, 2)
    assert rep.ok and rep.distances == {}


def test_census_512():
    c = soliton_census(2, 512)
    assert c.seeds_separated
    assert sorted(g for v in c.seeds_by_component.values() for g in v) == list(range(2, 10))


def test_census_agrees_with_extraction():
    c = soliton_census(2, 512)
    A = tomography(NAT, 2, 512).as_array()
    for g in range(2, 7):
        s = extract_soliton(2, g)
        assert all(A[j - 1, k - 1] >= 2 for j, k in s.cells)


def test_high_v2_cells_sit_in_heavy_slice_triangles():
    A = tomography(NAT, 2, 512).as_array()
    rows, cols = np.nonzero(A >= 2)
    for j, k in zip((rows + 1).tolist(), (cols + 1).tolist()):
        if j == 1:
            continue
        H = 1 << ((j - 1).bit_length() - 1)
        i = (k - 1) // H + 1
        assert (i + 1) // 2 % 2 == 0  # weight w1((i+1)/2) >= 2


def test_squarefree_west():
    rep = check_squarefree_west(NAT, 35)
    assert rep.ok
    assert all(FactoredNat.from_int(v).is_squarefree() for v in WEST_NATURALS_35)
    assert check_squarefree_west(NAT, 1024).ok
    bad = check_squarefree_west(InitialGeneration.explicit([4, 1]), 2)
    assert not bad.ok and bad.first_violation[0] == 1 and bad.first_violation[1].value == 4


def test_v2_profile():
    assert v2_west_profile(1) == [0]
    prof = v2_west_profile(16)
    assert [m for m, v in enumerate(prof, 1) if v] == [2, 4, 8, 16]
    assert v2_west_profile(1024) == power_of_two_pattern(1024)
    assert [predict_v2(m, 1) for m in range(1, 513)] == v2_west_profile(512)
