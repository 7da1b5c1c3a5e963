"""Set partitions, partitioned permutations, surfaced permutations, and the
convolution algebra on them (zeta, Moebius, plain and hbar-extended).

A set partition of [d] is stored canonically as a tuple ``ids`` of length d
mapping each point to its block id, blocks numbered 0, 1, ... in order of
their least element.  Half-integer genera are stored doubled (as ints).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations as _all_perms

from .hbar import HbarSeries
from . import symcore
from .symcore import Perm

SetPartition = tuple[int, ...]


def canonical_ids(ids) -> SetPartition:
    relabel: dict[int, int] = {}
    out = []
    for b in ids:
        if b not in relabel:
            relabel[b] = len(relabel)
        out.append(relabel[b])
    return tuple(out)


def from_blocks(d: int, blocks) -> SetPartition:
    ids = [-1] * d
    for i, blk in enumerate(blocks):
        for x in blk:
            if not 0 <= x < d or ids[x] != -1:
                raise ValueError("blocks must partition range(d)")
            ids[x] = i
    if any(b == -1 for b in ids):
        raise ValueError("blocks must cover range(d)")
    return canonical_ids(ids)


def blocks_of(part: SetPartition) -> list[tuple[int, ...]]:
    nb = num_blocks(part)
    out: list[list[int]] = [[] for _ in range(nb)]
    for x, b in enumerate(part):
        out[b].append(x)
    return [tuple(b) for b in out]


def num_blocks(part: SetPartition) -> int:
    return max(part) + 1 if part else 0


def part_colength(part: SetPartition) -> int:
    return len(part) - num_blocks(part)


def finest(d: int) -> SetPartition:
    return tuple(range(d))


def coarsest(d: int) -> SetPartition:
    return (0,) * d


def orbit_partition(s: Perm) -> SetPartition:
    """0_sigma: the partition of [d] into supports of cycles.

    >>> orbit_partition((1, 5, 4, 3, 2, 0))
    (0, 0, 1, 2, 1, 0)
    """
    ids = [0] * len(s)
    for i, cyc in enumerate(symcore.cycles(s)):
        for x in cyc:
            ids[x] = i
    return canonical_ids(tuple(ids))


def join(a: SetPartition, b: SetPartition) -> SetPartition:
    """Smallest common coarsening (the lattice join), by union-find."""
    if len(a) != len(b):
        raise ValueError("size mismatch")
    d = len(a)
    parent = list(range(d))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    first_a: dict[int, int] = {}
    first_b: dict[int, int] = {}
    for x in range(d):
        if a[x] in first_a:
            union(first_a[a[x]], x)
        else:
            first_a[a[x]] = x
        if b[x] in first_b:
            union(first_b[b[x]], x)
        else:
            first_b[b[x]] = x
    return canonical_ids(tuple(find(x) for x in range(d)))


def leq(a: SetPartition, b: SetPartition) -> bool:
    """Refinement order: every block of a inside a block of b."""
    if len(a) != len(b):
        raise ValueError("size mismatch")
    img: dict[int, int] = {}
    for x in range(len(a)):
        if a[x] in img:
            if img[a[x]] != b[x]:
                return False
        else:
            img[a[x]] = b[x]
    return True


def coarsenings(part: SetPartition):
    """All set partitions >= part (partitions of the block set)."""
    blks = blocks_of(part)
    for grouping in set_partitions_of(len(blks)):
        ids = [0] * len(part)
        for gid, group in enumerate(grouping):
            for bi in group:
                for x in blks[bi]:
                    ids[x] = gid
        yield canonical_ids(tuple(ids))


def set_partitions_of(n: int):
    """All set partitions of range(n) as lists of tuples (restricted growth)."""
    if n == 0:
        yield []
        return
    codes = [0] * n

    def rec(i: int, maxid: int):
        if i == n:
            nb = maxid + 1
            blocks: list[list[int]] = [[] for _ in range(nb)]
            for x, c in enumerate(codes):
                blocks[c].append(x)
            yield [tuple(b) for b in blocks]
            return
        for c in range(maxid + 2):
            codes[i] = c
            yield from rec(i + 1, max(maxid, c))

    yield from rec(1, 0)


# ---------------------------------------------------------------------------
# partitioned and surfaced permutations

PartPerm = tuple[SetPartition, Perm]
# surfaced: (partition, perm, genus2) with genus2 a tuple of doubled genera,
# one per block (indexed by block id)
SurfPerm = tuple[SetPartition, Perm, tuple[int, ...]]


def pp_valid(x: PartPerm) -> bool:
    return leq(orbit_partition(x[1]), x[0])


def pp_colength(x: PartPerm) -> int:
    return 2 * part_colength(x[0]) - symcore.colength(x[1])


def sp_colength(x: SurfPerm) -> int:
    return pp_colength((x[0], x[1])) + sum(x[2])


def sp_is_even(x: SurfPerm) -> bool:
    return all(g2 % 2 == 0 for g2 in x[2])


def unit_pp(d: int) -> PartPerm:
    return (finest(d), symcore.identity(d))


def product_extended(x: PartPerm, y: PartPerm) -> PartPerm:
    """(A, a) (.) (B, b) = (A v B, a o b); always defined."""
    if len(x[1]) != len(y[1]):
        raise ValueError("size mismatch")
    return (join(x[0], y[0]), symcore.compose(x[1], y[1]))


def product_strict(x: PartPerm, y: PartPerm) -> PartPerm | None:
    """The multiplication keeping only colength-additive products; None is
    the absorbing zero."""
    z = product_extended(x, y)
    if pp_colength(x) + pp_colength(y) == pp_colength(z):
        return z
    return None


def _restrict_colength_data(part: SetPartition, perm: Perm, block: set[int]):
    """Colength of (A, a) restricted to a union-of-blocks subset."""
    pts = [x for x in range(len(part)) if x in block]
    nb = len({part[x] for x in pts})
    ncyc = sum(1 for cyc in symcore.cycles(perm) if cyc[0] in block)
    return 2 * (len(pts) - nb) - (len(pts) - ncyc)


def surfaced_product_extended(x: SurfPerm, y: SurfPerm) -> SurfPerm:
    """Extended product with genus creation: on each joined block C,

        k(C) = [ |(A,a,g)|_C + |(B,b,h)|_C - |(A v B, a o b)|_C ] / 2.
    """
    (pa, a, g2a), (pb, b, g2b) = x, y
    pc = join(pa, pb)
    c = symcore.compose(a, b)
    k2 = []
    for blk in blocks_of(pc):
        bs = set(blk)
        ca = _restrict_colength_data(pa, a, bs) + sum(
            g2a[pa[pt]] for pt in _block_least_points(pa, bs)
        )
        cb = _restrict_colength_data(pb, b, bs) + sum(
            g2b[pb[pt]] for pt in _block_least_points(pb, bs)
        )
        cc = _restrict_colength_data(pc, c, bs)
        k2.append(ca + cb - cc)
    assert all(v >= 0 for v in k2)
    return (pc, c, tuple(k2))


def _block_least_points(part: SetPartition, inside: set[int]):
    seen = set()
    for x in sorted(inside):
        if part[x] not in seen:
            seen.add(part[x])
            yield x


def surfaced_product_strict(x: SurfPerm, y: SurfPerm) -> SurfPerm | None:
    """Product keeping only colength-additive (no genus creation) cases;
    block genera then just add."""
    if pp_colength((x[0], x[1])) + pp_colength((y[0], y[1])) != pp_colength(
        (join(x[0], y[0]), symcore.compose(x[1], y[1]))
    ):
        return None
    return surfaced_product_extended(x, y)


def enumerate_ps(d: int, bound: int = 6) -> list[PartPerm]:
    """All of PS(d): pairs (A, a) with 0_a <= A."""
    if d > bound:
        raise ValueError("enumeration bound exceeded: d=%d > %d" % (d, bound))
    out = []
    for s in _all_perms(range(d)):
        for part in coarsenings(orbit_partition(s)):
            out.append((part, s))
    return out


def enumerate_genus_maps(nblocks: int, total2: int):
    """All genus vectors (doubled) of length nblocks with given total."""
    if nblocks == 0:
        if total2 == 0:
            yield ()
        return
    for h in range(total2 + 1):
        for rest in enumerate_genus_maps(nblocks - 1, total2 - h):
            yield (h,) + rest


def enumerate_surfaced(d: int, gmax2: int, bound: int = 6) -> list[SurfPerm]:
    """All surfaced permutations with total doubled genus <= gmax2."""
    out = []
    for part, s in enumerate_ps(d, bound):
        nb = num_blocks(part)
        for t2 in range(gmax2 + 1):
            for g2 in enumerate_genus_maps(nb, t2):
                out.append((part, s, g2))
    return out


# ---------------------------------------------------------------------------
# functions on PS(d) and their convolutions
#
# A PSFunction is a plain dict {(part, perm): value}; values may be Fraction
# or HbarSeries.  Multiplicative functions are given by a block rule
# (cycle type -> value) and expanded to total tables when convolving.


def zeta_function(d: int) -> dict[PartPerm, Fraction]:
    return {
        (orbit_partition(s), s): Fraction(1) for s in _all_perms(range(d))
    }


def delta_function(d: int) -> dict[PartPerm, Fraction]:
    return {unit_pp(d): Fraction(1)}


def zeta_hbar(d: int, K: int) -> dict[PartPerm, HbarSeries]:
    return {
        (orbit_partition(s), s): HbarSeries.monomial(1, symcore.colength(s), K)
        for s in _all_perms(range(d))
    }


def delta_hbar(d: int, K: int) -> dict[PartPerm, HbarSeries]:
    return {unit_pp(d): HbarSeries.one(K)}


def convolve(f, g, kind: str = "strict"):
    """Convolution (f * g) or extended convolution (f (*) g) of total tables.

    Sums f(x) g(y) over factorizations x . y = target (strict) or
    x (.) y = target (extended).
    """
    if kind not in ("strict", "extended"):
        raise ValueError("kind must be strict or extended")
    # functions built at different working truncations must not be mixed;
    # guarantees above the working truncation (from positive valuations)
    # are fine
    mins = [
        min(v.K for v in fn.values() if isinstance(v, HbarSeries))
        for fn in (f, g)
        if any(isinstance(v, HbarSeries) for v in fn.values())
    ]
    if len(mins) == 2 and mins[0] != mins[1]:
        raise ValueError("truncation mismatch: %s vs %s" % tuple(mins))
    out: dict[PartPerm, object] = {}
    for x, fx in f.items():
        if _is_zero(fx):
            continue
        for y, gy in g.items():
            if _is_zero(gy):
                continue
            if kind == "strict":
                z = product_strict(x, y)
                if z is None:
                    continue
            else:
                z = product_extended(x, y)
            term = fx * gy
            if z in out:
                out[z] = out[z] + term
            else:
                out[z] = term
    return out


def _is_zero(v) -> bool:
    if isinstance(v, HbarSeries):
        return v.is_zero()
    return v == 0


def multiplicative_function(d: int, blockvalue) -> dict[PartPerm, object]:
    """Total table of the multiplicative function with the given block rule.

    ``blockvalue(mu)`` is the value on a one-block partitioned permutation
    whose permutation has cycle type ``mu``.
    """
    out = {}
    for part, s in enumerate_ps(d):
        v = None
        for blk in blocks_of(part):
            mu = symcore.sort_to_partition(
                len(c) for c in symcore.cycles(s) if c[0] in blk
            )
            bv = blockvalue(mu)
            v = bv if v is None else v * bv
        out[(part, s)] = v
    return out


def moebius(d: int) -> dict[PartPerm, Fraction]:
    """The *-inverse of zeta on PS(d), by triangular solve in colength."""
    zeta = zeta_function(d)
    elements = enumerate_ps(d, bound=max(6, d))
    elements.sort(key=pp_colength)
    mu: dict[PartPerm, Fraction] = {}
    for target in elements:
        val = Fraction(1) if target == unit_pp(d) else Fraction(0)
        tgt_col = pp_colength(target)
        part_t, perm_t = target
        # factorizations (A, a) . (0_b, b) = target with b != id
        for b in _all_perms(range(d)):
            col_b = symcore.colength(b)
            if col_b == 0 or col_b > tgt_col:
                continue
            a = symcore.compose(perm_t, symcore.inverse(b))
            zero_b = orbit_partition(b)
            if not leq(zero_b, part_t):
                continue
            # candidates A: 0_a <= A <= target partition, colength additive,
            # A v 0_b = target partition
            for cand in coarsenings(orbit_partition(a)):
                if not leq(cand, part_t):
                    continue
                x = (cand, a)
                if pp_colength(x) + col_b != tgt_col:
                    continue
                if join(cand, zero_b) != part_t:
                    continue
                val -= mu[x]
        mu[target] = val
    return mu


_moebius_hbar_cache: dict = {}


def moebius_hbar(d: int, K: int) -> dict[PartPerm, HbarSeries]:
    """(*)-inverse of zeta_hbar up to hbar^K, by the Neumann series
    (zeta_hbar differs from the unit delta at order hbar)."""
    if (d, K) in _moebius_hbar_cache:
        return _moebius_hbar_cache[(d, K)]
    zh = zeta_hbar(d, K)
    n = dict(zh)
    unit = unit_pp(d)
    if unit in n:
        n[unit] = n[unit] - HbarSeries.one(K)
        if n[unit].is_zero():
            del n[unit]
    out = delta_hbar(d, K)
    power = delta_hbar(d, K)
    for j in range(1, K + 1):
        power = convolve(power, n, kind="extended")
        power = {x: v.truncate(K) for x, v in power.items() if not v.is_zero()}
        if not power:
            break
        sign = -1 if j % 2 else 1
        for x, v in power.items():
            term = v * sign
            out[x] = out.get(x, HbarSeries.zero(K)) + term
    out = {x: v for x, v in out.items() if not v.is_zero()}
    _moebius_hbar_cache[(d, K)] = out
    return out


def leading_order(phi_h: dict[PartPerm, HbarSeries]) -> dict[PartPerm, Fraction]:
    """Extract the coefficient of hbar^|(A, a)| from an hbar-graded function.

    Raises if any value has terms below its colength order.
    """
    out = {}
    for x, v in phi_h.items():
        col = pp_colength(x)
        if any(e < col for e in v.c):
            raise ValueError("value at %r below hbar^%d" % (x, col))
        out[x] = v.coeff(col)
    return out


def infinitesimal_order(phi_h: dict[PartPerm, HbarSeries]):
    """Extract (leading, subleading) coefficients hbar^|x|, hbar^(|x|+1)."""
    lead = leading_order(phi_h)
    sub = {x: v.coeff(pp_colength(x) + 1) for x, v in phi_h.items()}
    return lead, sub


# ---------------------------------------------------------------------------
# surfaced convolution (total tables on PS(d) up to a genus cutoff)


def surfaced_convolve(f, g, kind: str = "extended"):
    """Convolution of total tables on surfaced permutations."""
    out: dict[SurfPerm, object] = {}
    for x, fx in f.items():
        if _is_zero(fx):
            continue
        for y, gy in g.items():
            if _is_zero(gy):
                continue
            if kind == "extended":
                z = surfaced_product_extended(x, y)
            else:
                z = surfaced_product_strict(x, y)
                if z is None:
                    continue
            term = fx * gy
            if z in out:
                out[z] = out[z] + term
            else:
                out[z] = term
    return out


def surfaced_zeta(d: int) -> dict[SurfPerm, Fraction]:
    return {
        (orbit_partition(s), s, (0,) * len(symcore.cycles(s))): Fraction(1)
        for s in _all_perms(range(d))
    }


def surfaced_delta(d: int) -> dict[SurfPerm, Fraction]:
    return {(finest(d), symcore.identity(d), (0,) * d): Fraction(1)}


def surfaced_multiplicative(d: int, gmax2: int, blockvalue):
    """Total table of a multiplicative function on surfaced permutations.

    ``blockvalue(mu, g2)`` gives the value on a one-block surfaced
    permutation of cycle type mu with doubled genus g2.
    """
    out = {}
    for part, s, g2 in enumerate_surfaced(d, gmax2):
        v = None
        cycs = symcore.cycles(s)
        for bi, blk in enumerate(blocks_of(part)):
            mu = symcore.sort_to_partition(len(c) for c in cycs if c[0] in blk)
            bv = blockvalue(mu, g2[bi])
            v = bv if v is None else v * bv
        out[(part, s, g2)] = v
    return out


# ---------------------------------------------------------------------------
# JSON serialization


def setpartition_to_json(part: SetPartition) -> list[list[int]]:
    return [sorted(x + 1 for x in blk) for blk in blocks_of(part)]


def setpartition_from_json(arr, d: int) -> SetPartition:
    return from_blocks(d, [[x - 1 for x in blk] for blk in arr])


def surfaced_to_json(x: SurfPerm) -> dict:
    part, perm, g2 = x
    return {
        "partition": setpartition_to_json(part),
        "perm": symcore.perm_to_json(perm),
        "genus2": {str(i): v for i, v in enumerate(g2)},
    }


def surfaced_from_json(obj) -> SurfPerm:
    perm = symcore.perm_from_json(obj["perm"])
    part = setpartition_from_json(obj["partition"], len(perm))
    g2 = tuple(obj["genus2"].get(str(i), 0) for i in range(num_blocks(part)))
    sp = (part, perm, g2)
    if not pp_valid((part, perm)):
        raise ValueError("cycles not contained in blocks")
    return sp
