"""Coefficient tables: the F_{g; k_1..k_n} grading of a topological
partition function, keyed by (doubled genus, sorted index tuple).

The table never stores the conventional constants (the 1 of the one-point
genus-0 series, or the hbar^(-1) of the full one-point function).
Rationals serialize as exact "p/q" strings.
"""

from __future__ import annotations

import json
import random
from fractions import Fraction

from .symcore import sort_to_partition

CoefficientTable = dict[tuple[int, tuple[int, ...]], Fraction]


def table_get(T: CoefficientTable, g2: int, ks) -> Fraction:
    return T.get((g2, sort_to_partition(ks)), Fraction(0))


def table_set(T: CoefficientTable, g2: int, ks, value) -> None:
    v = Fraction(value)
    key = (g2, sort_to_partition(ks))
    if v:
        T[key] = v
    else:
        T.pop(key, None)


def normalize(T: CoefficientTable) -> CoefficientTable:
    out: CoefficientTable = {}
    for (g2, ks), v in T.items():
        if g2 < 0:
            raise ValueError("negative genus")
        table_set(out, g2, ks, v)
    return out


def restrict_table(T: CoefficientTable, n=None, deg=None, g2=None) -> CoefficientTable:
    out = {}
    for (tg2, ks), v in T.items():
        if n is not None and len(ks) > n:
            continue
        if deg is not None and sum(ks) > deg:
            continue
        if g2 is not None and tg2 > g2:
            continue
        out[(tg2, ks)] = v
    return out


def table_equal(A: CoefficientTable, B: CoefficientTable, n=None, deg=None, g2=None) -> bool:
    a = restrict_table(normalize(A), n, deg, g2)
    b = restrict_table(normalize(B), n, deg, g2)
    return a == b


def table_diff(A: CoefficientTable, B: CoefficientTable) -> dict:
    keys = set(A) | set(B)
    return {
        k: (A.get(k, Fraction(0)), B.get(k, Fraction(0)))
        for k in keys
        if A.get(k, Fraction(0)) != B.get(k, Fraction(0))
    }


def random_table(seed: int, nmax: int, degmax: int, g2max: int = 0,
                 denominators=(1, 2, 3)) -> CoefficientTable:
    """Deterministic pseudo-random table with all admissible entries filled;
    coefficients are small rationals."""
    rng = random.Random(seed)
    out: CoefficientTable = {}
    for g2 in range(g2max + 1):
        for ks in _index_tuples(nmax, degmax):
            num = rng.randint(-3, 3)
            den = rng.choice(denominators)
            if num:
                out[(g2, ks)] = Fraction(num, den)
    return out


def _index_tuples(nmax: int, degmax: int):
    def rec(n, maxpart, total):
        if n == 0:
            yield ()
            return
        for p in range(min(maxpart, total - (n - 1)), 0, -1):
            for rest in rec(n - 1, p, total - p):
                yield (p,) + rest

    seen = set()
    for n in range(1, nmax + 1):
        for tup in rec(n, degmax, degmax):
            if tup not in seen:
                seen.add(tup)
                yield tup


def gue_table() -> CoefficientTable:
    """The Gaussian fixture: the only nonzero free cumulant is the
    genus-0 pair cumulant."""
    return {(0, (2,)): Fraction(1)}


# ---------------------------------------------------------------------------
# JSON schema: {"entries": [{"g2": 0, "k": [2], "value": "1"}]}


def to_json(T: CoefficientTable, meta: dict | None = None) -> dict:
    entries = [
        {"g2": g2, "k": list(ks), "value": str(v)}
        for (g2, ks), v in sorted(T.items())
    ]
    obj = {"entries": entries}
    if meta:
        obj.update(meta)
    return obj


def from_json(obj) -> CoefficientTable:
    out: CoefficientTable = {}
    for e in obj["entries"]:
        table_set(out, int(e["g2"]), tuple(int(x) for x in e["k"]), Fraction(e["value"]))
    return out


def save(path: str, T: CoefficientTable, meta: dict | None = None) -> None:
    with open(path, "w") as fh:
        json.dump(to_json(T, meta), fh, indent=1)


def load(path: str) -> tuple[CoefficientTable, dict]:
    with open(path) as fh:
        obj = json.load(fh)
    meta = {k: v for k, v in obj.items() if k != "entries"}
    return from_json(obj), meta


def to_csv(T: CoefficientTable) -> str:
    lines = ["g2,k,value"]
    for (g2, ks), v in sorted(T.items()):
        lines.append("%d,%s,%s" % (g2, " ".join(map(str, ks)), v))
    return "\n".join(lines) + "\n"
