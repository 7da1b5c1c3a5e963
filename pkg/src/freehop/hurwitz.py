"""Strictly/weakly monotone and free single Hurwitz numbers, with the
Jucys-Murphy group-algebra oracle and the inverse-pair identity.

A sequence of transpositions tau_i = (a_i b_i) with a_i < b_i is strictly
(weakly) monotone when the b_i are strictly (weakly) increasing.  The count
H_r(lambda, nu) is 1/d! times the number of tuples (alpha, tau_1..tau_r,
beta) with alpha in C_lambda, beta in C_nu and
alpha o tau_1 o ... o tau_r o beta = id.  We fix alpha = pi_lambda and
divide by z(lambda) instead of enumerating C_lambda.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from math import factorial

from . import symcore
from .hbar import HbarSeries
from .symcore import Partition, Perm

KINDS = ("strict", "weak", "free-single")
ORACLE_BOUND = 6


def _monotone_counts(lam: Partition, rmax: int, strict: bool) -> dict[Partition, list[Fraction]]:
    """For fixed alpha = pi_lambda, count monotone sequences by (type of
    beta, r); returns {nu: [counts by r]} already divided by z(lambda).

    beta is forced: beta = (alpha tau_1 ... tau_r)^{-1}.
    """
    d = sum(lam)
    zl = symcore.z_factor(lam)
    out: dict[Partition, list[Fraction]] = {}

    def record(prod: Perm, r: int):
        nu = symcore.cycle_type(symcore.inverse(prod))
        if nu not in out:
            out[nu] = [Fraction(0)] * (rmax + 1)
        out[nu][r] += Fraction(1) / zl

    def dfs(prod: Perm, r: int, last_b: int):
        record(prod, r)
        if r == rmax:
            return
        start = last_b + 1 if strict else last_b
        for b in range(max(start, 1), d):
            for a in range(b):
                nxt = list(prod)
                nxt[a], nxt[b] = prod[b], prod[a]
                dfs(tuple(nxt), r + 1, b)

    # 0-indexed larger entries b range over 1..d-1; the initial last_b makes
    # the first step start at b = 1 for both monotonicity flavours
    dfs(symcore.canonical_permutation(lam), 0, 0 if strict else 1)
    return out


def strict_monotone_count(lam: Partition, nu: Partition, r: int) -> Fraction:
    """H^<_r(lambda, nu).

    >>> strict_monotone_count((2,), (1, 1), 1)
    Fraction(1, 2)
    """
    if sum(lam) != sum(nu):
        raise ValueError("size mismatch")
    d = sum(lam)
    if r >= d and d > 0:
        return Fraction(0)
    table = _monotone_counts(lam, r, strict=True)
    return table.get(nu, [Fraction(0)] * (r + 1))[r]


def weakly_monotone_count(lam: Partition, nu: Partition, r: int) -> Fraction:
    """H^<=_r(lambda, nu).

    >>> weakly_monotone_count((1, 1), (1, 1), 2)
    Fraction(1, 2)
    """
    if sum(lam) != sum(nu):
        raise ValueError("size mismatch")
    table = _monotone_counts(lam, r, strict=False)
    return table.get(nu, [Fraction(0)] * (r + 1))[r]


def free_single_count(lam: Partition, nu: Partition, r: int) -> Fraction:
    """H^|_r(lambda, nu): triples (alpha, psi, beta), |psi| = r,
    alpha o psi o beta = id; alpha fixed to pi_lambda, scaled by 1/z."""
    if sum(lam) != sum(nu):
        raise ValueError("size mismatch")
    d = sum(lam)
    alpha = symcore.canonical_permutation(lam)
    count = 0
    for psi in symcore.all_permutations(d):
        if symcore.colength(psi) != r:
            continue
        if symcore.cycle_type(symcore.inverse(symcore.compose(alpha, psi))) == nu:
            count += 1
    return Fraction(count) / symcore.z_factor(lam)


def hurwitz_series(lam: Partition, nu: Partition, kind: str, K: int) -> HbarSeries:
    """Generating series: strict sums hbar^r H^<_r (a polynomial of degree
    <= d-1), weak sums (-hbar)^r H^<=_r truncated at hbar^K."""
    if kind not in KINDS:
        raise ValueError("unknown kind %r" % kind)
    d = sum(lam)
    if kind == "weak":
        rmax = K
        table = _monotone_counts(lam, rmax, strict=False)
        row = table.get(nu, [])
        return HbarSeries(
            {r: (-1) ** r * v for r, v in enumerate(row) if v}, K
        )
    rmax = min(K, max(d - 1, 0))
    if kind == "strict":
        table = _monotone_counts(lam, rmax, strict=True)
        row = table.get(nu, [])
        return HbarSeries({r: v for r, v in enumerate(row) if v}, K)
    row = [free_single_count(lam, nu, r) for r in range(rmax + 1)]
    return HbarSeries({r: v for r, v in enumerate(row) if v}, K)


def hurwitz_table(d: int, kind: str, K: int, threads: int = 1) -> dict[tuple[Partition, Partition], HbarSeries]:
    """All (lambda, nu) series for given d; one monotone enumeration per
    lambda covers every nu.  Rows are independent, so they can be built by
    a worker pool (results are keyed, hence deterministic)."""
    if kind not in KINDS:
        raise ValueError("unknown kind %r" % kind)
    parts = symcore.partitions(d)
    out = {}
    if kind == "free-single":
        for lam in parts:
            for nu in parts:
                out[(lam, nu)] = hurwitz_series(lam, nu, kind, K)
        return out
    strict = kind == "strict"
    rmax = K if not strict else min(K, max(d - 1, 0))
    if threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = dict(
                zip(parts, pool.map(lambda l: _monotone_counts(l, rmax, strict), parts))
            )
    else:
        rows = {lam: _monotone_counts(lam, rmax, strict) for lam in parts}
    for lam in parts:
        table = rows[lam]
        for nu in parts:
            row = table.get(nu, [])
            sign = (lambda r: (-1) ** r) if kind == "weak" else (lambda r: 1)
            out[(lam, nu)] = HbarSeries(
                {r: sign(r) * v for r, v in enumerate(row) if v}, K
            )
    return out


# ---------------------------------------------------------------------------
# Jucys-Murphy oracle: elements of the group algebra QS(d) as dense maps


def _ga_mul(A: dict[Perm, Fraction], B: dict[Perm, Fraction]) -> dict[Perm, Fraction]:
    out: dict[Perm, Fraction] = {}
    for s, vs in A.items():
        for t, vt in B.items():
            st = symcore.compose(s, t)
            w = out.get(st, Fraction(0)) + vs * vt
            if w:
                out[st] = w
            else:
                out.pop(st, None)
    return out


def _ga_mul_jm(A: dict[Perm, Fraction], d: int, k: int) -> dict[Perm, Fraction]:
    """Multiply A by the Jucys-Murphy element J_k = sum_{i<k} (i k)."""
    out: dict[Perm, Fraction] = {}
    for s, vs in A.items():
        for i in range(k):
            t = list(s)
            # right multiplication: s o (i k)
            t[i], t[k] = s[k], s[i]
            t = tuple(t)
            w = out.get(t, Fraction(0)) + vs
            if w:
                out[t] = w
            else:
                out.pop(t, None)
    return out


def _jm_symmetric(d: int, rmax: int, kind: str) -> list[dict[Perm, Fraction]]:
    """e_r(J_2..J_d) (kind strict) or h_r(J_2..J_d) (kind weak) for
    r = 0..rmax, in the group algebra of S(d).

    JM indices here are 0-based points: J_k = sum_{i<k} (i k) for k = 1..d-1.
    """
    ident = {symcore.identity(d): Fraction(1)}
    levels: list[dict[Perm, Fraction]] = [ident] + [dict() for _ in range(rmax)]
    if kind == "strict":
        for k in range(1, d):
            for r in range(min(rmax, k), 0, -1):
                add = _ga_mul_jm(levels[r - 1], d, k)
                for s, v in add.items():
                    w = levels[r].get(s, Fraction(0)) + v
                    if w:
                        levels[r][s] = w
                    else:
                        levels[r].pop(s, None)
        return levels
    for k in range(1, d):
        # h-recursion: with variable J_k added, h'_r = sum_j h_{r-j} J_k^j
        new_levels = [dict(levels[0])]
        for r in range(1, rmax + 1):
            acc = dict(levels[r])
            prev = new_levels[r - 1]
            add = _ga_mul_jm(prev, d, k)
            for s, v in add.items():
                w = acc.get(s, Fraction(0)) + v
                if w:
                    acc[s] = w
                else:
                    acc.pop(s, None)
            new_levels.append(acc)
        levels = new_levels
    return levels


def jucys_murphy_oracle(lam: Partition, nu: Partition, kind: str, r: int) -> Fraction:
    """[id]-coefficient route: H_r(lambda, nu) = (1/d!) [id] C_lam C_nu e_r(J)
    (strict) or with h_r (weak); free-single uses the colength-r class sum.
    """
    d = sum(lam)
    if d != sum(nu):
        raise ValueError("size mismatch")
    if d > ORACLE_BOUND:
        raise ValueError("oracle bound exceeded: d=%d > %d" % (d, ORACLE_BOUND))
    if kind == "free-single":
        B = {
            s: Fraction(1)
            for s in symcore.all_permutations(d)
            if symcore.colength(s) == r
        }
    else:
        B = _jm_symmetric(d, r, kind)[r]
    C_nu = {s: Fraction(1) for s in symcore.conjugacy_class(nu)}
    P = _ga_mul(C_nu, B)
    total = Fraction(0)
    for s in symcore.conjugacy_class(lam):
        total += P.get(symcore.inverse(s), Fraction(0))
    return total / factorial(d)


def verify_orthogonality(d: int, K: int, threads: int = 1) -> dict:
    """Check both identities of the strict/weak inverse pair exactly as
    hbar-series up to hbar^K; returns a report with per-pair residuals."""
    parts = symcore.partitions(d)
    strict = hurwitz_table(d, "strict", K, threads)
    weak = hurwitz_table(d, "weak", K, threads)
    z = {lam: symcore.z_factor(lam) for lam in parts}
    cases = []
    ok = True
    for order in ("strict-weak", "weak-strict"):
        first, second = (strict, weak) if order == "strict-weak" else (weak, strict)
        for lam in parts:
            for nu in parts:
                acc = HbarSeries.zero(K)
                for rho in parts:
                    acc = acc + first[(lam, rho)] * (z[lam] * z[rho]) * second[(rho, nu)]
                want = HbarSeries.one(K) if lam == nu else HbarSeries.zero(K)
                resid = acc - want
                good = resid.is_zero()
                ok = ok and good
                cases.append(
                    {
                        "input": {"order": order, "lambda": list(lam), "nu": list(nu)},
                        "expected": "delta",
                        "got": "delta" if good else repr(resid),
                        "pass": good,
                    }
                )
    return {"suite": "orthogonality", "d": d, "hbar": K, "pass": ok, "cases": cases}


# ---------------------------------------------------------------------------
# JSON table format and the on-disk cache


def table_to_json(d: int, kind: str, table, K: int) -> dict:
    entries = []
    for (lam, nu), series in sorted(table.items()):
        for r in sorted(series.c):
            entries.append(
                {
                    "lambda": list(lam),
                    "nu": list(nu),
                    "r": r,
                    "value": str(series.c[r]),
                }
            )
    return {"d": d, "kind": kind, "hbar": K, "entries": entries}


def table_from_json(obj) -> dict[tuple[Partition, Partition], HbarSeries]:
    K = obj.get("hbar", sum(obj["entries"][0]["lambda"]) if obj["entries"] else 0)
    out: dict[tuple[Partition, Partition], dict[int, Fraction]] = {}
    for e in obj["entries"]:
        key = (tuple(e["lambda"]), tuple(e["nu"]))
        out.setdefault(key, {})[e["r"]] = Fraction(e["value"])
    return {k: HbarSeries(v, K) for k, v in out.items()}


def cache_dir() -> str | None:
    return os.environ.get("FREEHOP_CACHE")


_memory_cache: dict = {}


def cached_hurwitz_table(d: int, kind: str, K: int):
    """Memory- and disk-cached variant of hurwitz_table (FREEHOP_CACHE
    names the cache directory), keyed by (d, kind, K)."""
    key = (d, kind, K)
    if key in _memory_cache:
        return _memory_cache[key]
    cdir = cache_dir()
    path = None
    if cdir:
        path = os.path.join(cdir, "hurwitz-%s-d%d-K%d.json" % (kind, d, K))
        if os.path.exists(path):
            table = table_from_json_file(path)
            _memory_cache[key] = table
            return table
    table = hurwitz_table(d, kind, K)
    _memory_cache[key] = table
    if path:
        os.makedirs(cdir, exist_ok=True)
        tmp = path + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(table_to_json(d, kind, table, K), fh)
        os.replace(tmp, path)
    return table


def table_from_json_file(path: str):
    with open(path) as fh:
        return table_from_json(json.load(fh))
