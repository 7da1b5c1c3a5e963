import random
from fractions import Fraction

import pytest

from freehop import pscore, symcore
from freehop.hbar import HbarSeries
from freehop.pscore import (
    blocks_of,
    convolve,
    coarsest,
    delta_function,
    enumerate_ps,
    enumerate_surfaced,
    finest,
    from_blocks,
    join,
    leq,
    moebius,
    moebius_hbar,
    multiplicative_function,
    orbit_partition,
    pp_colength,
    product_extended,
    product_strict,
    sp_colength,
    sp_is_even,
    surfaced_product_extended,
    surfaced_product_strict,
    unit_pp,
    zeta_function,
    zeta_hbar,
)


def test_join_basics():
    d = 4
    a = from_blocks(d, [[0, 1], [2], [3]])
    assert join(finest(d), a) == a
    assert join(a, coarsest(d)) == coarsest(d)
    b = from_blocks(d, [[1, 2], [0], [3]])
    assert join(a, b) == from_blocks(d, [[0, 1, 2], [3]])


def test_orbit_partition_example():
    s = symcore.from_cycles(6, [(0, 1, 5), (2, 4)])
    assert blocks_of(orbit_partition(s)) == [(0, 1, 5), (2, 4), (3,)]


def test_leq():
    d = 3
    a = from_blocks(d, [[0, 1], [2]])
    assert leq(finest(d), a)
    assert leq(a, coarsest(d))
    assert not leq(a, from_blocks(d, [[0, 2], [1]]))


def test_product_strict_d2():
    d = 2
    swap = (1, 0)
    x = (coarsest(d), swap)
    # ({12},(12)) . ({12},(12)) = ({12}, id), colengths 1 + 1 = 2
    z = product_strict(x, x)
    assert z == (coarsest(d), (0, 1))
    assert pp_colength(z) == 2
    # ({12}, id) . ({12},(12)) -> zero (2 + 1 != 1)
    assert product_strict((coarsest(d), (0, 1)), x) is None
    # unit law
    assert product_strict(unit_pp(d), x) == x


def test_product_extended_unit_and_subadditivity():
    for x in enumerate_ps(3):
        assert product_extended(unit_pp(3), x) == x
    for x in enumerate_ps(3):
        for y in enumerate_ps(3):
            z = product_extended(x, y)
            defect = pp_colength(x) + pp_colength(y) - pp_colength(z)
            assert defect >= 0
            assert defect % 2 == 0


def test_colength_block_additivity():
    # |(A, a)| = sum over blocks of the restricted colengths
    for part, perm in enumerate_ps(4):
        total = 0
        for blk in blocks_of(part):
            pts = set(blk)
            ncyc = sum(1 for c in symcore.cycles(perm) if c[0] in pts)
            total += 2 * (len(pts) - 1) - (len(pts) - ncyc)
        assert total == pp_colength((part, perm))


def test_enumerate_ps_sizes():
    assert [len(enumerate_ps(d)) for d in range(5)] == [1, 1, 3, 13, 73]
    d2 = set(enumerate_ps(2))
    assert d2 == {
        (finest(2), (0, 1)),
        (coarsest(2), (0, 1)),
        (coarsest(2), (1, 0)),
    }
    with pytest.raises(ValueError):
        enumerate_ps(7)


def test_surfaced_product_genus_creation():
    d = 2
    swap = (1, 0)
    # colength-additive case: the creation term vanishes
    x = (orbit_partition(swap), swap, (0,))
    z = surfaced_product_extended(x, x)
    assert z == (coarsest(d), (0, 1), (0,))
    assert sp_colength(z) == sp_colength(x) + sp_colength(x)
    # genuine creation: ({12}, id) squared gains one unit of genus
    y = (coarsest(d), (0, 1), (0,))
    z2 = surfaced_product_extended(y, y)
    assert z2 == (coarsest(d), (0, 1), (2,))
    assert sp_colength(z2) == sp_colength(y) + sp_colength(y)


def test_surfaced_strict_matches_plain_on_genus_zero():
    for x in enumerate_ps(3):
        for y in enumerate_ps(3):
            sx = (x[0], x[1], (0,) * pscore.num_blocks(x[0]))
            sy = (y[0], y[1], (0,) * pscore.num_blocks(y[0]))
            plain = product_strict(x, y)
            surf = surfaced_product_strict(sx, sy)
            if plain is None:
                assert surf is None
            else:
                assert surf[:2] == plain
                assert all(g == 0 for g in surf[2])


def test_surfaced_strict_adds_genera():
    d = 3
    # x = ({1,2},(12)) + singleton, genus 1/2 on the first block
    part = from_blocks(d, [[0, 1], [2]])
    swap = symcore.from_cycles(d, [(0, 1)])
    x = (part, swap, (1, 0))
    y = (part, swap, (0, 1))
    z = surfaced_product_strict(x, y)
    assert z is not None
    assert z[1] == (0, 1, 2)
    assert sum(z[2]) == 2
    assert sp_colength(z) == sp_colength(x) + sp_colength(y)


def test_evenness_preserved():
    elems = enumerate_surfaced(3, 2)
    for x in elems[:40]:
        for y in elems[:40]:
            if sp_is_even(x) and sp_is_even(y):
                assert sp_is_even(surfaced_product_extended(x, y))


def test_zeta_values():
    z = zeta_function(2)
    assert z[(orbit_partition((1, 0)), (1, 0))] == 1
    assert (coarsest(3), symcore.from_cycles(3, [(0, 1)])) not in zeta_function(3)
    zh = zeta_hbar(3, 6)
    v = zh[(orbit_partition((1, 2, 0)), (1, 2, 0))]
    assert v.coeff(2) == 1 and v.coeff(0) == 0 and v.coeff(1) == 0


def test_convolution_unit():
    for d in (2, 3):
        delta = delta_function(d)
        f = {x: Fraction(i + 1, 3) for i, x in enumerate(enumerate_ps(d))}
        assert convolve(f, delta, "strict") == {k: v for k, v in f.items()}
        assert convolve(delta, f, "extended") == {k: v for k, v in f.items()}


def test_zeta_star_zeta_value():
    # Three factorizations of ({12}, id) have additive colength, but only
    # ({12},(12)) . ({12},(12)) has both factors supported on zeta
    z = zeta_function(2)
    conv = convolve(z, z, "strict")
    assert conv[(coarsest(2), (0, 1))] == 1
    # exhaustive cross-check of the factorization count itself
    count = 0
    for x in enumerate_ps(2):
        for y in enumerate_ps(2):
            if product_strict(x, y) == (coarsest(2), (0, 1)):
                count += 1
    assert count == 3


def test_multiplicative_commutativity():
    rng = random.Random(11)

    def rand_rule():
        vals = {}

        def rule(mu):
            if mu not in vals:
                vals[mu] = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            return vals[mu]

        return rule

    for d in (3, 4):
        f1 = multiplicative_function(d, rand_rule())
        f2 = multiplicative_function(d, rand_rule())
        assert convolve(f1, f2, "strict") == convolve(f2, f1, "strict")
        assert convolve(f1, f2, "extended") == convolve(f2, f1, "extended")


def test_convolution_associativity():
    rng = random.Random(12)
    elems = enumerate_ps(3)

    def rand_fn():
        return {x: Fraction(rng.randint(-3, 3)) for x in elems}

    for kind in ("strict", "extended"):
        f, g, h = rand_fn(), rand_fn(), rand_fn()
        left = convolve(convolve(f, g, kind), h, kind)
        right = convolve(f, convolve(g, h, kind), kind)
        left = {k: v for k, v in left.items() if v}
        right = {k: v for k, v in right.items() if v}
        assert left == right


def test_multiplicative_reconstruction():
    vals = {}
    rng = random.Random(13)

    def rule(mu):
        if mu not in vals:
            vals[mu] = Fraction(rng.randint(1, 5))
        return vals[mu]

    f = multiplicative_function(4, rule)
    for (part, perm), v in f.items():
        prod = Fraction(1)
        for blk in blocks_of(part):
            mu = symcore.sort_to_partition(
                len(c) for c in symcore.cycles(perm) if c[0] in set(blk)
            )
            prod *= rule(mu)
        assert v == prod


@pytest.mark.parametrize("d", [2, 3, 4])
def test_moebius_inverts_zeta(d):
    mu = moebius(d)
    z = zeta_function(d)
    conv = {k: v for k, v in convolve(mu, z, "strict").items() if v}
    assert conv == delta_function(d)
    conv2 = {k: v for k, v in convolve(z, mu, "strict").items() if v}
    assert conv2 == delta_function(d)


def test_moebius_values_d2():
    mu = moebius(2)
    assert mu[unit_pp(2)] == 1
    assert mu[(coarsest(2), (1, 0))] == -1
    assert mu[(coarsest(2), (0, 1))] == 1


def test_moebius_hbar_roundtrip():
    d, K = 3, 6
    mh = moebius_hbar(d, K)
    zh = zeta_hbar(d, K)
    conv = convolve(mh, zh, "extended")
    for x, v in conv.items():
        want = HbarSeries.one(K) if x == unit_pp(d) else HbarSeries.zero(K)
        assert v == want
    # leading order is delta, first order on PS(2)
    mh2 = moebius_hbar(2, 6)
    assert mh2[unit_pp(2)].coeff(0) == 1
    assert mh2[(orbit_partition((1, 0)), (1, 0))].coeff(1) == -1


def test_leading_order_extraction():
    d, K = 3, 6
    zh = zeta_hbar(d, K)
    lead = pscore.leading_order(zh)
    z = zeta_function(d)
    for x in enumerate_ps(d):
        assert lead.get(x, 0) == z.get(x, 0)
    bad = {unit_pp(2): HbarSeries.monomial(1, -1, 4)}
    with pytest.raises(ValueError):
        pscore.leading_order(bad)


def _hbar_multiplicative(d, K, rule):
    """hbar-graded multiplicative function with block values
    hbar^{colength} * (genus series)."""

    def blockvalue(mu):
        base = sum(mu) + len(mu) - 2
        return HbarSeries({base + g2: rule(mu, g2) for g2 in range(0, 3)}, K)

    return multiplicative_function(d, blockvalue)


def test_leading_order_of_extended_convolution():
    # zeta_hbar (*) Phi at leading order equals zeta * (leading Phi)
    rng = random.Random(14)
    vals = {}

    def rule(mu, g2):
        key = (mu, g2)
        if key not in vals:
            vals[key] = Fraction(rng.randint(-3, 3))
        return vals[key]

    d, K = 3, 8
    phi = _hbar_multiplicative(d, K, rule)
    zh = zeta_hbar(d, K)
    conv = convolve(zh, phi, "extended")
    lead_conv = pscore.leading_order(conv)
    lead_phi = pscore.leading_order(phi)
    plain = convolve(zeta_function(d), lead_phi, "strict")
    for x in enumerate_ps(d):
        assert lead_conv.get(x, Fraction(0)) == plain.get(x, Fraction(0))


def test_infinitesimal_agreement_of_extended_convolution():
    # with half-integer genus allowed, the subleading order agrees with the
    # strict convolution of the dual-number reduction
    rng = random.Random(15)
    vals = {}

    def rule(mu, g2):
        key = (mu, g2)
        if key not in vals:
            vals[key] = Fraction(rng.randint(-3, 3))
        return vals[key]

    d, K = 3, 9
    phi = _hbar_multiplicative(d, K, rule)
    zh = zeta_hbar(d, K)
    conv = convolve(zh, phi, "extended")
    lead_c, sub_c = pscore.infinitesimal_order(conv)
    lead_p, sub_p = pscore.infinitesimal_order(phi)
    # dual-number strict convolution: (a + eps b)(c + eps d) = ac + eps(ad + bc)
    z = zeta_function(d)
    plain_lead = convolve(z, lead_p, "strict")
    plain_sub = convolve(z, sub_p, "strict")
    for x in enumerate_ps(d):
        assert lead_c.get(x, Fraction(0)) == plain_lead.get(x, Fraction(0))
        assert sub_c.get(x, Fraction(0)) == plain_sub.get(x, Fraction(0))


def test_convolve_truncation_mismatch():
    with pytest.raises(ValueError, match="truncation mismatch"):
        convolve(zeta_hbar(2, 4), zeta_hbar(2, 6), "extended")


def test_surfaced_zeta_delta():
    d = 3
    sz = pscore.surfaced_zeta(d)
    sd = pscore.surfaced_delta(d)
    conv = pscore.surfaced_convolve(sd, sz, "extended")
    assert {k: v for k, v in conv.items() if v} == sz


def test_surfaced_json_roundtrip():
    x = (from_blocks(3, [[0, 1], [2]]), symcore.from_cycles(3, [(0, 1)]), (1, 0))
    assert pscore.surfaced_from_json(pscore.surfaced_to_json(x)) == x


def test_setpartition_json():
    part = from_blocks(4, [[0, 2], [1], [3]])
    js = pscore.setpartition_to_json(part)
    assert js == [[1, 3], [2], [4]]
    assert pscore.setpartition_from_json(js, 4) == part
