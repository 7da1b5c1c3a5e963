from fractions import Fraction
from math import factorial

import pytest

from freehop import symcore
from freehop.symcore import (
    canonical_permutation,
    character,
    colength,
    compose,
    conjugacy_class,
    content_polynomial,
    cycle_type,
    inverse,
    partitions,
    z_factor,
)


def test_partitions_small():
    assert partitions(0) == [()]
    assert partitions(1) == [(1,)]
    assert partitions(3) == [(3,), (2, 1), (1, 1, 1)]


def test_partition_count_recurrence():
    # p(n) by Euler's pentagonal recurrence, independent of the enumerator
    p = [1]
    for n in range(1, 11):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            g2 = k * (3 * k + 1) // 2
            if g1 > n and g2 > n:
                break
            sign = -1 if k % 2 == 0 else 1
            if g1 <= n:
                total += sign * p[n - g1]
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p.append(total)
    for n in range(11):
        assert len(partitions(n)) == p[n]


def test_z_factor_examples():
    assert z_factor((1, 1)) == 2
    assert z_factor((2, 1)) == 2
    assert z_factor((3, 3, 1)) == 18


def test_z_factor_class_size():
    # z(lambda) = d!/#C_lambda, checked by enumerating the class
    for lam in [(3, 3, 1)[:2], (2, 1, 1), (3, 1), (2, 2)]:
        d = sum(lam)
        count = sum(1 for _ in conjugacy_class(lam))
        assert z_factor(lam) == Fraction(factorial(d), count)


def test_classes_partition_group():
    for d in range(7):
        assert sum(sum(1 for _ in conjugacy_class(lam)) for lam in partitions(d)) == factorial(d)


def test_canonical_permutation():
    assert canonical_permutation((2, 1)) == (1, 0, 2)
    assert canonical_permutation((1, 1, 1)) == (0, 1, 2)
    assert canonical_permutation((3,)) == (1, 2, 0)


@pytest.mark.parametrize("d", range(1, 9))
def test_canonical_cycle_type_roundtrip(d):
    for lam in partitions(d):
        assert cycle_type(canonical_permutation(lam)) == lam


def test_compose_and_inverse():
    s = (1, 0, 2)
    assert compose(s, s) == (0, 1, 2)
    t = (1, 2, 0)
    assert compose(t, inverse(t)) == (0, 1, 2)
    # composition order: t acts first
    assert compose((1, 0, 2), (0, 2, 1))[1] == 2


def test_cycle_type_example():
    # (1 2 6)(3 5)(4) in 1-indexed cycle notation
    s = symcore.from_cycles(6, [(0, 1, 5), (2, 4)])
    assert cycle_type(s) == (3, 2, 1)
    assert colength(s) == 3


def test_colength():
    assert colength((1, 2, 0)) == 2
    assert colength((0, 1, 2)) == 0
    s = (1, 0, 3, 2)
    t = (2, 3, 0, 1)
    st = compose(s, t)
    assert colength(st) <= colength(s) + colength(t)
    assert (colength(st) - colength(s) - colength(t)) % 2 == 0


def test_colength_conjugation_invariant_and_parity():
    import random

    rng = random.Random(5)
    for _ in range(30):
        d = rng.randint(1, 6)
        s = tuple(rng.sample(range(d), d))
        t = tuple(rng.sample(range(d), d))
        assert colength(s) == colength(inverse(s))
        assert cycle_type(compose(compose(t, s), inverse(t))) == cycle_type(s)
        st = compose(s, t)
        assert colength(st) <= colength(s) + colength(t)
        assert (colength(st) + colength(s) + colength(t)) % 2 == 0


def test_conjugacy_class_counts():
    assert list(conjugacy_class((2,))) == [(1, 0)]
    assert sum(1 for _ in conjugacy_class((2, 1))) == 3
    assert sum(1 for _ in conjugacy_class((3, 1))) == 8


def test_conjugacy_class_restartable():
    stream = conjugacy_class((2, 1))
    first = list(stream)
    assert list(conjugacy_class((2, 1))) == first


def test_character_trivial_and_sign():
    for d in range(1, 6):
        for mu in partitions(d):
            assert character((d,), mu) == 1
            sign = (-1) ** (d - len(mu))
            assert character((1,) * d, mu) == sign
    assert character((1, 1), (2,)) == -1


@pytest.mark.parametrize("d", range(1, 7))
def test_character_orthogonality(d):
    parts = partitions(d)
    # column orthogonality: sum_lam chi(mu) chi(nu) = z(mu) delta
    for mu in parts:
        for nu in parts:
            total = sum(character(lam, mu) * character(lam, nu) for lam in parts)
            assert total == (z_factor(mu) if mu == nu else 0)
    # row orthogonality with 1/z weights
    for lam in parts:
        for rho in parts:
            total = sum(
                Fraction(character(lam, mu) * character(rho, mu)) / z_factor(mu)
                for mu in parts
            )
            assert total == (1 if lam == rho else 0)


def test_character_dimension_hook():
    for d in range(1, 7):
        for lam in partitions(d):
            assert character(lam, (1,) * d) == symcore.hook_dimension(lam)


def test_content_polynomial():
    one = content_polynomial((1,), 6)
    assert one.coeff(0) == 1 and all(one.coeff(j) == 0 for j in range(1, 7))
    two = content_polynomial((2,), 6)
    assert two.coeff(0) == 1 and two.coeff(1) == 1
    hook = content_polynomial((2, 1), 6)
    assert hook.coeff(0) == 1 and hook.coeff(1) == 0 and hook.coeff(2) == -1


def test_perm_json_roundtrip():
    s = (2, 0, 1)
    assert symcore.perm_from_json(symcore.perm_to_json(s)) == s
    with pytest.raises(ValueError):
        symcore.perm_from_json([1, 1, 2])


def test_size_mismatch_errors():
    with pytest.raises(ValueError):
        compose((0, 1), (0,))
    with pytest.raises(ValueError):
        character((2,), (1, 1, 1))
