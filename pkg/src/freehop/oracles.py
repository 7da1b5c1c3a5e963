"""Independent brute-force oracles for the transform routes.

These stay deliberately elementary: direct sums over factorizations of
partitioned permutations, and surface-gluing counts by Euler
characteristic.  They share no series or operator machinery with the
routes they check.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from itertools import permutations as _all_perms

from . import symcore
from .hbar import HbarSeries
from .symcore import Partition
from .tables import CoefficientTable, table_get


def _partitions_into_blocks(m: int, nb: int):
    """Set partitions of range(m) with exactly nb blocks, by restricted
    growth strings (codes[i] <= 1 + max of earlier codes, capped at nb)."""
    if nb < 1 or nb > m:
        return
    codes = [0] * m

    def rec(i: int, used: int):
        if used + (m - i) < nb:
            return
        if i == m:
            if used == nb:
                blocks: list[list[int]] = [[] for _ in range(nb)]
                for x, c in enumerate(codes):
                    blocks[c].append(x)
                yield [tuple(b) for b in blocks]
            return
        for c in range(min(used + 1, nb)):
            codes[i] = c
            yield from rec(i + 1, max(used, c + 1))

    yield from rec(0, 0)


def _joins_to_full(d: int, groups_a, groups_b) -> bool:
    parent = list(range(d))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for grp in groups_a:
        for x in grp[1:]:
            union(grp[0], x)
    for grp in groups_b:
        for x in grp[1:]:
            union(grp[0], x)
    r0 = find(0)
    return all(find(x) == r0 for x in range(d))


def star_factorization_counts(lam: Partition) -> dict[tuple[Partition, ...], int]:
    """Counts of strict-product factorizations

        (0_alpha, alpha) . (B, beta) = (1_d, pi_lam)

    grouped by the multiset of cycle types of beta restricted to the blocks
    of B.  This is the entire combinatorial content of the genus-0
    zeta-convolution against a multiplicative function; evaluating a table
    is then a weighted sum over this dictionary.
    """
    d = sum(lam)
    if d == 0:
        return {(): 1}
    pi = symcore.canonical_permutation(lam)
    target_col = d + len(lam) - 2  # |(1_d, pi_lam)|
    out: dict[tuple[Partition, ...], int] = {}
    for beta in _all_perms(range(d)):
        alpha = symcore.compose(pi, symcore.inverse(beta))
        col_a = symcore.colength(alpha)
        col_b = symcore.colength(beta)
        twice_b = target_col - col_a + col_b  # = 2|B|
        if twice_b < 0 or twice_b % 2:
            continue
        nb = d - twice_b // 2
        cycs_b = symcore.cycles(beta)
        m = len(cycs_b)
        if not 1 <= nb <= m:
            continue
        cycs_a = symcore.cycles(alpha)
        for grouping in _partitions_into_blocks(m, nb):
            blocks_pts = [sum((cycs_b[i] for i in grp), ()) for grp in grouping]
            if not _joins_to_full(d, cycs_a, blocks_pts):
                continue
            key = tuple(
                sorted(
                    symcore.sort_to_partition(len(cycs_b[i]) for i in grp)
                    for grp in grouping
                )
            )
            out[key] = out.get(key, 0) + 1
    return out


_star_cache: dict[Partition, dict] = {}


def star_counts_cached(lam: Partition) -> dict[tuple[Partition, ...], int]:
    if lam in _star_cache:
        return _star_cache[lam]
    cdir = os.environ.get("FREEHOP_CACHE")
    path = None
    if cdir:
        path = os.path.join(cdir, "starcounts-%s.json" % "-".join(map(str, lam)))
        if os.path.exists(path):
            with open(path) as fh:
                obj = json.load(fh)
            table = {
                tuple(tuple(t) for t in e["types"]): e["count"] for e in obj["entries"]
            }
            _star_cache[lam] = table
            return table
    table = star_factorization_counts(lam)
    _star_cache[lam] = table
    if path:
        os.makedirs(cdir, exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(
                {
                    "lambda": list(lam),
                    "entries": [
                        {"types": [list(t) for t in key], "count": c}
                        for key, c in sorted(table.items())
                    ],
                },
                fh,
            )
        os.replace(tmp, path)
    return table


def genus0_moment_by_convolution(cum_table: CoefficientTable, ks) -> Fraction:
    """F_{0; k_1..k_n} as the zeta-star-convolution of the genus-0
    multiplicative cumulant function, evaluated at (1_d, pi_lam)."""
    lam = symcore.sort_to_partition(ks)
    counts = star_counts_cached(lam)
    total = Fraction(0)
    for key, c in counts.items():
        prod = Fraction(c)
        for mu in key:
            prod *= table_get(cum_table, 0, mu)
            if not prod:
                break
        total += prod
    return total


# ---------------------------------------------------------------------------
# full hbar-graded oracle (all genus, including half-integer)


def hbar_moment_series(table: CoefficientTable, lam: Partition, K: int) -> HbarSeries:
    """phi_hbar(1_d, pi_lam) = (zeta_hbar (*) Phi_dual)(1_d, pi_lam) by
    direct summation over factorizations with the join condition:

        sum over alpha beta = pi_lam, B >= 0_beta, 0_alpha v B = 1_d
        of hbar^|alpha| prod over blocks of the graded block value.
    """
    d = sum(lam)
    if d == 0:
        return HbarSeries.one(K)
    pi = symcore.canonical_permutation(lam)
    bv_cache: dict[Partition, HbarSeries] = {}

    def blockvalue(mu: Partition) -> HbarSeries:
        if mu not in bv_cache:
            base = sum(mu) + len(mu) - 2
            coeffs = {}
            for g2 in range(0, K - base + 1):
                v = table_get(table, g2, mu)
                if v:
                    coeffs[base + g2] = v
            bv_cache[mu] = HbarSeries(coeffs, K)
        return bv_cache[mu]

    acc = HbarSeries.zero(K)
    for beta in _all_perms(range(d)):
        alpha = symcore.compose(pi, symcore.inverse(beta))
        col_a = symcore.colength(alpha)
        if col_a > K:
            continue
        cycs_a = symcore.cycles(alpha)
        cycs_b = symcore.cycles(beta)
        m = len(cycs_b)
        for nb in range(1, m + 1):
            for grouping in _partitions_into_blocks(m, nb):
                blocks_pts = [sum((cycs_b[i] for i in grp), ()) for grp in grouping]
                if not _joins_to_full(d, cycs_a, blocks_pts):
                    continue
                term = HbarSeries.monomial(1, col_a, K)
                for grp in grouping:
                    mu = symcore.sort_to_partition(len(cycs_b[i]) for i in grp)
                    term = term * blockvalue(mu)
                    if term.is_zero():
                        break
                acc = acc + term
    return acc


def hbar_moment_table(table: CoefficientTable, dmax: int, g2max: int, nmax: int | None = None) -> CoefficientTable:
    """Moment table from the hbar-graded convolution oracle."""
    out: CoefficientTable = {}
    for d in range(1, dmax + 1):
        for lam in symcore.partitions(d):
            if nmax is not None and len(lam) > nmax:
                continue
            base = d + len(lam) - 2
            K = base + g2max
            series = hbar_moment_series(table, lam, K)
            for g2 in range(0, g2max + 1):
                v = series.coeff(base + g2)
                if v:
                    out[(g2, lam)] = v
    return out


# ---------------------------------------------------------------------------
# Gaussian fixture: gluings of a 2k-gon counted by genus


def polygon_gluings_by_genus(k: int) -> dict[int, int]:
    """Pairings of the 2k edges of a polygon, counted by the genus of the
    glued surface: V - E + F = 2 - 2g with E = k, F = 1 and V the number
    of vertex orbits.

    >>> polygon_gluings_by_genus(1)
    {0: 1}
    >>> polygon_gluings_by_genus(2)
    {0: 2, 1: 1}
    """
    n = 2 * k
    rho = tuple((i + 1) % n for i in range(n))  # boundary rotation
    out: dict[int, int] = {}

    def matchings(points: tuple[int, ...]):
        if not points:
            yield ()
            return
        a = points[0]
        for idx in range(1, len(points)):
            b = points[idx]
            rest = points[1:idx] + points[idx + 1 :]
            for m in matchings(rest):
                yield ((a, b),) + m

    for m in matchings(tuple(range(n))):
        eps = [0] * n
        for a, b in m:
            eps[a], eps[b] = b, a
        # vertices of the glued surface: orbits of eps o rho
        sigma = tuple(eps[rho[i]] for i in range(n))
        v = len(symcore.cycles(sigma))
        chi = v - k + 1
        g2 = 2 - chi
        assert g2 % 2 == 0 and g2 >= 0
        out[g2 // 2] = out.get(g2 // 2, 0) + 1
    return out


def gue_moments_by_gluing(kmax: int) -> CoefficientTable:
    """GUE one-point moments F_{g; 2k} for k <= kmax via polygon gluings."""
    out: CoefficientTable = {}
    for k in range(1, kmax + 1):
        for g, c in polygon_gluings_by_genus(k).items():
            out[(2 * g, (2 * k,))] = Fraction(c)
    return out
