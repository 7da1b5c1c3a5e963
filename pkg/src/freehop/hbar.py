"""Exact truncated Laurent series in the single grading variable hbar.

A series is a dict {exponent: Fraction} together with a truncation order K:
coefficients with exponent > K are unknown and never stored.  Negative
exponents are allowed (the one-point function carries an hbar^(-1) constant).
Arithmetic tracks the tightest truncation guaranteed by the inputs.
"""

from __future__ import annotations

from fractions import Fraction


class HbarSeries:
    __slots__ = ("c", "K")

    def __init__(self, coeffs: dict[int, Fraction], K: int):
        self.K = K
        self.c = {e: Fraction(v) for e, v in coeffs.items() if v != 0 and e <= K}

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, K: int) -> "HbarSeries":
        return cls({}, K)

    @classmethod
    def one(cls, K: int) -> "HbarSeries":
        return cls({0: Fraction(1)}, K)

    @classmethod
    def const(cls, v, K: int) -> "HbarSeries":
        return cls({0: Fraction(v)}, K)

    @classmethod
    def monomial(cls, v, e: int, K: int) -> "HbarSeries":
        return cls({e: Fraction(v)}, K)

    # -- basics --------------------------------------------------------------
    def floor(self) -> int:
        return min(self.c) if self.c else 0

    def coeff(self, e: int) -> Fraction:
        if e > self.K:
            raise ValueError("coefficient hbar^%d beyond truncation %d" % (e, self.K))
        return self.c.get(e, Fraction(0))

    def truncate(self, K: int) -> "HbarSeries":
        return HbarSeries({e: v for e, v in self.c.items() if e <= K}, min(self.K, K))

    def is_zero(self) -> bool:
        return not self.c

    def __eq__(self, other) -> bool:
        if not isinstance(other, HbarSeries):
            return NotImplemented
        K = min(self.K, other.K)
        return {e: v for e, v in self.c.items() if e <= K} == {
            e: v for e, v in other.c.items() if e <= K
        }

    def __hash__(self):  # pragma: no cover - not used as dict key
        return hash((self.K, tuple(sorted(self.c.items()))))

    def __repr__(self) -> str:
        if not self.c:
            return "O(h^%d)" % (self.K + 1)
        terms = " + ".join(
            "%s*h^%d" % (v, e) if e else str(v) for e, v in sorted(self.c.items())
        )
        return "%s + O(h^%d)" % (terms, self.K + 1)

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other) -> "HbarSeries":
        if not isinstance(other, HbarSeries):
            other = HbarSeries.const(other, self.K)
        K = min(self.K, other.K)
        c = {e: v for e, v in self.c.items() if e <= K}
        for e, v in other.c.items():
            if e <= K:
                w = c.get(e, Fraction(0)) + v
                if w:
                    c[e] = w
                else:
                    c.pop(e, None)
        return HbarSeries(c, K)

    __radd__ = __add__

    def __neg__(self) -> "HbarSeries":
        return HbarSeries({e: -v for e, v in self.c.items()}, self.K)

    def __sub__(self, other) -> "HbarSeries":
        return self + (-other if isinstance(other, HbarSeries) else HbarSeries.const(-Fraction(other), self.K))

    def __rsub__(self, other) -> "HbarSeries":
        return (-self) + other

    def __mul__(self, other) -> "HbarSeries":
        if not isinstance(other, HbarSeries):
            v = Fraction(other)
            return HbarSeries({e: c * v for e, c in self.c.items()}, self.K)
        # truncation: unknown tail of one factor times the lowest known
        # exponent of the other bounds the reliable window
        fa = self.floor()
        fb = other.floor()
        K = min(self.K + fb, other.K + fa)
        c: dict[int, Fraction] = {}
        for ea, va in self.c.items():
            for eb, vb in other.c.items():
                e = ea + eb
                if e <= K:
                    c[e] = c.get(e, Fraction(0)) + va * vb
        return HbarSeries(c, K)

    __rmul__ = __mul__

    def shift(self, e: int) -> "HbarSeries":
        """Multiply by hbar^e."""
        return HbarSeries({k + e: v for k, v in self.c.items()}, self.K + e)

    def inverse(self) -> "HbarSeries":
        """Multiplicative inverse of a series with nonzero lowest term."""
        if not self.c:
            raise ZeroDivisionError("inverting zero series")
        f = self.floor()
        a0 = self.c[f]
        # normalize to 1 + positive-order tail
        tailK = self.K - f
        tail = {e - f: v / a0 for e, v in self.c.items() if e != f}
        inv = {0: Fraction(1)}
        for n in range(1, tailK + 1):
            s = Fraction(0)
            for e, v in tail.items():
                if 0 <= n - e <= n - 1 and (n - e) in inv:
                    s += v * inv[n - e]
            if s:
                inv[n] = -s
        return HbarSeries({e - f: v / a0 for e, v in inv.items()}, tailK - f)

    def __truediv__(self, other) -> "HbarSeries":
        if isinstance(other, HbarSeries):
            return self * other.inverse()
        return self * (Fraction(1) / Fraction(other))


def delta_kron(b: bool, K: int) -> HbarSeries:
    return HbarSeries.one(K) if b else HbarSeries.zero(K)
