from fractions import Fraction

from freehop import oracles, tables
from freehop.oracles import (
    genus0_moment_by_convolution,
    hbar_moment_series,
    hbar_moment_table,
    polygon_gluings_by_genus,
    star_factorization_counts,
)


def F(a, b=1):
    return Fraction(a, b)


def test_polygon_gluings_harer_zagier():
    assert polygon_gluings_by_genus(1) == {0: 1}
    assert polygon_gluings_by_genus(2) == {0: 2, 1: 1}
    assert polygon_gluings_by_genus(3) == {0: 5, 1: 10}
    assert polygon_gluings_by_genus(4) == {0: 14, 1: 70, 2: 21}
    # total count is (2k-1)!!
    assert sum(polygon_gluings_by_genus(4).values()) == 105


def test_star_counts_classical_moments():
    # the free moment-cumulant formula on one-part targets
    counts3 = star_factorization_counts((3,))
    # m3 = k3 + 3 k2 k1 + k1^3
    assert counts3[((3,),)] == 1
    assert counts3[((1,), (2,))] == 3
    assert counts3[((1,), (1,), (1,))] == 1
    counts4 = star_factorization_counts((4,))
    # m4 = k4 + 4 k3 k1 + 2 k2^2 + 6 k2 k1^2 + k1^4 (noncrossing partitions)
    assert counts4[((4,),)] == 1
    assert counts4[((1,), (3,))] == 4
    assert counts4[((2,), (2,))] == 2
    assert counts4[((1,), (1,), (2,))] == 6
    assert counts4[((1,), (1,), (1,), (1,))] == 1


def test_star_counts_two_point_anchor():
    # F_{0;(2,1)} = k_{2,1} + 2 k_{1,1} k_1 + 2 k_3 + 2 k_2 k_1 (hand
    # enumeration of the strict factorizations of (1_3, (12)(3)))
    counts = star_factorization_counts((2, 1))
    assert counts[((2, 1),)] == 1
    assert counts[((1,), (1, 1))] == 2
    assert counts[((3,),)] == 2
    assert counts[((1,), (2,))] == 2


def test_genus0_oracle_on_gue():
    gue = tables.gue_table()
    for k, cat in [(1, 1), (2, 2), (3, 5), (4, 14)]:
        assert genus0_moment_by_convolution(gue, (2 * k,)) == cat
    assert genus0_moment_by_convolution(gue, (3,)) == 0
    assert genus0_moment_by_convolution(gue, (2, 2)) == 2
    assert genus0_moment_by_convolution(gue, (1, 1)) == 1


def test_hbar_oracle_matches_genus0():
    rt = tables.random_table(seed=31, nmax=2, degmax=4)
    full = hbar_moment_table(rt, 4, 0)
    for (g2, ks), v in full.items():
        assert g2 == 0
        assert v == genus0_moment_by_convolution(rt, ks)


def test_hbar_oracle_gue_genus1():
    series = hbar_moment_series(tables.gue_table(), (4,), 5)
    # phi(1_4, pi_(4)) = hbar^3 F_{0;4} + hbar^5 F_{1;4} (base d+l-2 = 3)
    assert series.coeff(3) == 2
    assert series.coeff(5) == 1
    assert series.coeff(4) == 0


def test_hbar_oracle_half_genus_grading():
    t = {(0, (1,)): F(1), (1, (1,)): F(1, 2)}
    series = hbar_moment_series(t, (1,), 3)
    # d = 1: base grading l + d - 2 = 0
    assert series.coeff(0) == 1
    assert series.coeff(1) == F(1, 2)


def test_star_cache_disk(tmp_path, monkeypatch):
    monkeypatch.setenv("FREEHOP_CACHE", str(tmp_path))
    oracles._star_cache.clear()
    c1 = oracles.star_counts_cached((2, 1))
    assert list(tmp_path.glob("starcounts-2-1.json"))
    oracles._star_cache.clear()
    c2 = oracles.star_counts_cached((2, 1))
    assert c1 == c2
    oracles._star_cache.clear()
