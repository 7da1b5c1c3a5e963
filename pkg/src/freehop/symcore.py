"""Integer partitions, permutations of [d], conjugacy classes and characters.

Conventions used throughout the package:

- A partition is a tuple of weakly decreasing positive ints; ``()`` is the
  only partition of 0.
- A permutation of [d] is a tuple of length d in one-line notation over the
  points ``0..d-1`` (0-indexed internally; JSON serialization is 1-indexed).
- Composition is function composition: ``compose(s, t)(x) == s[t[x]]``,
  i.e. ``t`` acts first.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import permutations as _all_perms
from math import factorial
from typing import Iterator

Partition = tuple[int, ...]
Perm = tuple[int, ...]


def is_partition(parts) -> bool:
    t = tuple(parts)
    return all(isinstance(p, int) and p >= 1 for p in t) and all(
        t[i] >= t[i + 1] for i in range(len(t) - 1)
    )


def partitions(d: int) -> list[Partition]:
    """All partitions of d, in reverse-lexicographic order.

    >>> partitions(0)
    [()]
    >>> partitions(3)
    [(3,), (2, 1), (1, 1, 1)]
    >>> len(partitions(6))
    11
    """
    if d < 0:
        raise ValueError("d must be nonnegative")
    out: list[Partition] = []

    def rec(rest: int, maxpart: int, prefix: tuple[int, ...]):
        if rest == 0:
            out.append(prefix)
            return
        for p in range(min(rest, maxpart), 0, -1):
            rec(rest - p, p, prefix + (p,))

    rec(d, d if d else 1, ())
    return out


def multiplicities(lam: Partition) -> dict[int, int]:
    m: dict[int, int] = {}
    for p in lam:
        m[p] = m.get(p, 0) + 1
    return m


def z_factor(lam: Partition) -> Fraction:
    """Order of the centralizer of a permutation of cycle type ``lam``.

    Equals ``d!/#C_lam`` and ``prod(lam_i) * prod_j m_j(lam)!``.

    >>> z_factor((1, 1))
    Fraction(2, 1)
    >>> z_factor((2, 1))
    Fraction(2, 1)
    >>> z_factor((3, 3, 1))
    Fraction(18, 1)
    """
    z = 1
    for p in lam:
        z *= p
    for mult in multiplicities(lam).values():
        z *= factorial(mult)
    return Fraction(z)


def class_size(lam: Partition) -> int:
    d = sum(lam)
    return factorial(d) // int(z_factor(lam))


def sort_to_partition(ks) -> Partition:
    """Weakly decreasing reordering of a sequence of positive ints."""
    return tuple(sorted(ks, reverse=True))


# ---------------------------------------------------------------------------
# permutations


def identity(d: int) -> Perm:
    return tuple(range(d))


def compose(s: Perm, t: Perm) -> Perm:
    """s after t: (compose(s, t))(x) = s(t(x)).

    >>> compose((1, 0), (1, 0))
    (0, 1)
    """
    if len(s) != len(t):
        raise ValueError("size mismatch")
    return tuple(s[t[x]] for x in range(len(t)))


def inverse(s: Perm) -> Perm:
    inv = [0] * len(s)
    for x, y in enumerate(s):
        inv[y] = x
    return tuple(inv)


def cycles(s: Perm) -> list[tuple[int, ...]]:
    """Cycles of s, each starting at its least point, sorted by that point."""
    seen = [False] * len(s)
    out = []
    for x in range(len(s)):
        if seen[x]:
            continue
        cyc = [x]
        seen[x] = True
        y = s[x]
        while y != x:
            cyc.append(y)
            seen[y] = True
            y = s[y]
        out.append(tuple(cyc))
    return out


def cycle_type(s: Perm) -> Partition:
    """
    >>> cycle_type((1, 5, 4, 3, 2, 0))   # (1 2 6)(3 5)(4) in 1-indexed cycles
    (3, 2, 1)
    """
    return sort_to_partition(len(c) for c in cycles(s))


def colength(s: Perm) -> int:
    """d minus the number of cycles; minimal transposition count.

    >>> colength((1, 2, 0))
    2
    """
    return len(s) - len(cycles(s))


def canonical_permutation(lam: Partition) -> Perm:
    """The permutation with consecutive-block cycles (1..lam_1)(lam_1+1..)...

    >>> canonical_permutation((2, 1))
    (1, 0, 2)
    >>> canonical_permutation((3,))
    (1, 2, 0)
    """
    img = []
    start = 0
    for p in lam:
        img.extend(list(range(start + 1, start + p)) + [start])
        start += p
    return tuple(img)


def from_cycles(d: int, cycs) -> Perm:
    img = list(range(d))
    for cyc in cycs:
        for i, x in enumerate(cyc):
            img[x] = cyc[(i + 1) % len(cyc)]
    return tuple(img)


def transposition(d: int, a: int, b: int) -> Perm:
    img = list(range(d))
    img[a], img[b] = b, a
    return tuple(img)


def conjugacy_class(lam: Partition) -> Iterator[Perm]:
    """Stream the conjugacy class C_lam inside S(d), each element once.

    Restartable: each call returns a fresh iterator.
    """
    d = sum(lam)
    for s in _all_perms(range(d)):
        if cycle_type(s) == lam:
            yield s


def all_permutations(d: int) -> Iterator[Perm]:
    return _all_perms(range(d))


# ---------------------------------------------------------------------------
# characters (Murnaghan-Nakayama) and contents


def _strip_removals(lam: Partition, length: int):
    """Yield (height, rest) for each removal of a border strip of given
    length from lam, where rest is the remaining partition."""
    ell = len(lam)
    # border strip removals correspond to beta-set moves
    beta = [lam[i] + (ell - 1 - i) for i in range(ell)]
    bset = set(beta)
    for i in range(ell):
        b = beta[i] - length
        if b < 0 or b in bset:
            continue
        nb = sorted(bset - {beta[i]} | {b}, reverse=True)
        rest = tuple(nb[j] - (ell - 1 - j) for j in range(ell))
        rest = tuple(p for p in rest if p > 0)
        if not is_partition(rest):  # pragma: no cover - beta moves keep order
            continue
        # height = number of rows the strip spans minus 1
        height = sum(1 for x in bset if b < x < beta[i])
        yield height, rest


@lru_cache(maxsize=None)
def character(lam: Partition, mu: Partition) -> int:
    """Irreducible symmetric-group character chi^lam(mu), by the
    Murnaghan-Nakayama recursion.

    >>> character((3,), (1, 1, 1))
    1
    >>> character((1, 1), (2,))
    -1
    """
    if sum(lam) != sum(mu):
        raise ValueError("size mismatch")
    if not lam:
        return 1
    k = mu[0]
    rest_mu = mu[1:]
    total = 0
    for height, rest_lam in _strip_removals(lam, k):
        total += (-1) ** height * character(rest_lam, rest_mu)
    return total


def contents(lam: Partition) -> list[int]:
    """Contents j - i over the cells (i, j) of lam (both 1-indexed)."""
    return [j - i for i, p in enumerate(lam, start=1) for j in range(1, p + 1)]


def hook_dimension(lam: Partition) -> int:
    """Dimension of the irreducible indexed by lam (hook length formula)."""
    if not lam:
        return 1
    conj = [0] * lam[0]
    for p in lam:
        for j in range(p):
            conj[j] += 1
    n = factorial(sum(lam))
    for i, p in enumerate(lam):
        for j in range(p):
            n //= (p - j) + (conj[j] - i) - 1
    return n


def content_polynomial(lam: Partition, K: int):
    """prod over cells of (1 + hbar*(j - i)), truncated at hbar^K."""
    from .hbar import HbarSeries

    out = HbarSeries.one(K)
    for c in contents(lam):
        out = out * HbarSeries({0: Fraction(1), 1: Fraction(c)}, K)
    return out


# ---------------------------------------------------------------------------
# JSON helpers (permutations serialized 1-indexed, partitions as int arrays)


def perm_to_json(s: Perm) -> list[int]:
    return [x + 1 for x in s]


def perm_from_json(arr) -> Perm:
    s = tuple(int(x) - 1 for x in arr)
    if sorted(s) != list(range(len(s))):
        raise ValueError("not a permutation: %r" % (arr,))
    return s
