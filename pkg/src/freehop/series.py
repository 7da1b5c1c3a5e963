"""Exact truncated multivariate Laurent series.

A Series holds sparse {exponent tuple: Fraction} data over an ordered tuple
of named variables, together with per-variable guarantees:

- ``lo[v]``: guaranteed valuation bound (no stored or true exponent below),
- ``hi[v]``: guaranteed truncation (coefficients above are unknown and
  never stored; INF means exact).

Arithmetic narrows the guarantees to what the inputs support; extracting a
coefficient beyond a guarantee raises TruncationError instead of returning
silent garbage.  An optional total-degree cap over a subset of variables
(the "geometric" w-variables, all of whose series have nonnegative total
degree) keeps intermediate results small; it is part of the evaluation
convention, not of the mathematical truncation bookkeeping.

The sector convention is global: Laurent kernels are only ever expanded
with negative exponents in the later variable (|w_1| < ... < |w_n|).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

INF = 10**9


class TruncationError(ValueError):
    pass


class SectorError(ValueError):
    pass


class Series:
    __slots__ = ("vars", "lo", "hi", "cap", "data", "_capidx", "_finite")

    def __init__(self, vars, lo, hi, data, cap=None, _clean=False):
        self.vars = tuple(vars)
        self.lo = tuple(lo)
        self.hi = tuple(hi)
        self.cap = cap  # (frozenset of var names, max total degree) or None
        self._capidx = (
            tuple(i for i, v in enumerate(self.vars) if v in cap[0]) if cap else ()
        )
        self._finite = tuple(
            (i, l, h)
            for i, (l, h) in enumerate(zip(self.lo, self.hi))
            if h < INF or l > -INF
        )
        if _clean:
            self.data = data
        else:
            self.data = {}
            for e, v in data.items():
                if v == 0:
                    continue
                if self._inside(e):
                    self.data[e] = Fraction(v)

    # -- window helpers ----------------------------------------------------
    def _inside(self, e) -> bool:
        for i, l, h in self._finite:
            x = e[i]
            if x < l or x > h:
                return False
        if self.cap is not None:
            s = 0
            for i in self._capidx:
                s += e[i]
            if s > self.cap[1]:
                return False
        return True

    def _capsum(self, e) -> int:
        s = 0
        for i in self._capidx:
            s += e[i]
        return s

    def idx(self, var: str) -> int:
        return self.vars.index(var)

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, vars, lo=None, hi=None, cap=None) -> "Series":
        n = len(vars)
        return cls(vars, lo or (0,) * n, hi if hi is not None else (INF,) * n, {}, cap)

    @classmethod
    def const(cls, vars, value, cap=None) -> "Series":
        n = len(vars)
        s = cls(vars, (0,) * n, (INF,) * n, {}, cap)
        if value != 0:
            s.data[(0,) * n] = Fraction(value)
        return s

    @classmethod
    def variable(cls, vars, var, power=1, coeff=1, cap=None) -> "Series":
        n = len(vars)
        i = tuple(vars).index(var)
        e = tuple(power if j == i else 0 for j in range(n))
        lo = tuple(min(0, power) if j == i else 0 for j in range(n))
        s = cls(vars, lo, (INF,) * n, {}, cap)
        if coeff != 0:
            s.data[e] = Fraction(coeff)
        return s

    def like(self, data, lo=None, hi=None) -> "Series":
        return Series(
            self.vars,
            self.lo if lo is None else lo,
            self.hi if hi is None else hi,
            data,
            self.cap,
        )

    # -- inspection ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.data

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        a, b = align(self, other)
        return a.data == b.data

    def __repr__(self) -> str:
        items = sorted(self.data.items())[:8]
        terms = ", ".join("%s:%s" % (e, v) for e, v in items)
        more = "..." if len(self.data) > 8 else ""
        return "Series(%s; %s%s)" % (",".join(self.vars), terms, more)

    # -- ring operations -------------------------------------------------------
    def __neg__(self) -> "Series":
        return self.like({e: -v for e, v in self.data.items()})

    def __add__(self, other) -> "Series":
        if not isinstance(other, Series):
            other = Series.const(self.vars, other, self.cap)
        a, b = align(self, other)
        lo = tuple(min(x, y) for x, y in zip(a.lo, b.lo))
        hi = tuple(min(x, y) for x, y in zip(a.hi, b.hi))
        data = dict(a.data)
        for e, v in b.data.items():
            w = data.get(e)
            if w is None:
                data[e] = v
            elif w + v:
                data[e] = w + v
            else:
                del data[e]
        out = Series(a.vars, lo, hi, {}, a.cap, _clean=True)
        out.data = {e: v for e, v in data.items() if out._inside(e)}
        return out

    __radd__ = __add__

    def __sub__(self, other) -> "Series":
        return self + (-other if isinstance(other, Series) else -Fraction(other))

    def __rsub__(self, other) -> "Series":
        return (-self) + other

    def __mul__(self, other) -> "Series":
        if not isinstance(other, Series):
            v = Fraction(other)
            if v == 0:
                return self.like({})
            return self.like({e: c * v for e, c in self.data.items()})
        a, b = align(self, other)
        lo = tuple(x + y for x, y in zip(a.lo, b.lo))
        hi = tuple(
            min(ha + lb, hb + la, INF)
            for ha, la, hb, lb in zip(a.hi, a.lo, b.hi, b.lo)
        )
        out = Series(a.vars, lo, hi, {}, a.cap, _clean=True)
        data: dict[tuple, int] = {}
        finite = out._finite
        capmax = a.cap[1] if a.cap else None
        if len(a.data) > len(b.data):
            a, b = b, a
        # integer arithmetic over a common denominator: one normalization
        # per output entry instead of one gcd per elementary product
        den_a = 1
        for v in a.data.values():
            den_a = den_a // gcd(den_a, v.denominator) * v.denominator
        den_b = 1
        for v in b.data.values():
            den_b = den_b // gcd(den_b, v.denominator) * v.denominator
        if capmax is not None:
            bitems = sorted(
                (b._capsum(eb), eb, vb.numerator * (den_b // vb.denominator))
                for eb, vb in b.data.items()
            )
            aitems = [
                (a._capsum(ea), ea, va.numerator * (den_a // va.denominator))
                for ea, va in a.data.items()
            ]
        else:
            bitems = [
                (0, eb, vb.numerator * (den_b // vb.denominator))
                for eb, vb in b.data.items()
            ]
            aitems = [
                (0, ea, va.numerator * (den_a // va.denominator))
                for ea, va in a.data.items()
            ]
        nv = len(out.vars)
        rng = range(nv)
        for sa, ea, va in aitems:
            budget = capmax - sa if capmax is not None else None
            for sb, eb, vb in bitems:
                if budget is not None and sb > budget:
                    break
                e = tuple(ea[i] + eb[i] for i in rng)
                ok = True
                for i, l, h in finite:
                    x = e[i]
                    if x < l or x > h:
                        ok = False
                        break
                if not ok:
                    continue
                w = data.get(e)
                data[e] = va * vb if w is None else w + va * vb
        den = den_a * den_b
        out.data = {}
        for e, v in data.items():
            if v:
                out.data[e] = Fraction(v, den)
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Series":
        if n < 0:
            return self.inverse() ** (-n)
        out = Series.const(self.vars, 1, self.cap)
        base = self
        while n:
            if n & 1:
                out = out * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n >>= 1
        return out

    def inverse(self) -> "Series":
        """Inverse of a series with invertible lowest term in its first
        nonconstant variable; only supports unit series (constant term
        nonzero, all lo >= 0) which is all the pipeline needs."""
        n = len(self.vars)
        zero = (0,) * n
        c0 = self.data.get(zero)
        if c0 is None or any(l < 0 for l in self.lo):
            raise ValueError("inverse requires a unit series")
        # Newton-free: iterate inv <- inv * (2 - self*inv) doubles correct
        # order; simpler exact approach: triangular by total degree
        hi_bound = min(h for h in self.hi) if self.vars else INF
        tail = self.like({e: v for e, v in self.data.items() if e != zero})
        inv = Series.const(self.vars, Fraction(1) / c0, self.cap)
        if tail.is_zero():
            return self.like(inv.data, lo=(0,) * n, hi=self.hi)
        # geometric series sum_{j} (-tail/c0)^j / c0, truncated by windows
        term = Series.const(self.vars, Fraction(1) / c0, self.cap)
        acc = term
        max_iters = self._inverse_order(tail)
        for _ in range(max_iters):
            term = term * tail * (Fraction(-1) / c0)
            if term.is_zero():
                break
            acc = acc + term
        return Series(self.vars, (0,) * n, self.hi, acc.data, self.cap)

    def _inverse_order(self, tail: "Series") -> int:
        # tail valuation >= 1 somewhere; the loop stops at the first zero
        # term, so only an upper bound on surviving degree is needed
        bounds = [h for h in self.hi if h < INF]
        if self.cap is not None:
            bounds.append(self.cap[1])
        if not bounds:
            raise ValueError("inverse of non-polynomial exact series needs a window")
        return sum(b for b in bounds if b > 0) + 2

    # -- calculus and extraction ----------------------------------------------
    def wdw(self, var: str) -> "Series":
        """Euler operator w d/dw in the given variable."""
        i = self.idx(var)
        return self.like({e: v * e[i] for e, v in self.data.items() if e[i]})

    def shift(self, var: str, k: int) -> "Series":
        """Multiply by var^k."""
        i = self.idx(var)
        lo = tuple(l + (k if j == i else 0) for j, l in enumerate(self.lo))
        hi = tuple(min(h + (k if j == i else 0), INF) for j, h in enumerate(self.hi))
        data = {
            tuple(x + (k if j == i else 0) for j, x in enumerate(e)): v
            for e, v in self.data.items()
        }
        return Series(self.vars, lo, hi, data, self.cap)

    def coeff(self, var: str, k: int) -> "Series":
        """Coefficient of var^k, as a series in the remaining variables."""
        i = self.idx(var)
        if k > self.hi[i]:
            raise TruncationError(
                "coefficient of %s^%d beyond truncation %d" % (var, k, self.hi[i])
            )
        rest = tuple(v for j, v in enumerate(self.vars) if j != i)
        lo = tuple(l for j, l in enumerate(self.lo) if j != i)
        hi = tuple(h for j, h in enumerate(self.hi) if j != i)
        cap = self.cap
        if cap is not None and var in cap[0]:
            cap = (cap[0] - {var}, cap[1] - k)
        data = {}
        for e, v in self.data.items():
            if e[i] == k:
                data[tuple(x for j, x in enumerate(e) if j != i)] = v
        return Series(rest, lo, hi, data, cap)

    def coeff_dict(self, var: str) -> dict[int, "Series"]:
        """All coefficients by exponent of var (within the window)."""
        i = self.idx(var)
        exps = sorted({e[i] for e in self.data})
        return {k: self.coeff(var, k) for k in exps}

    def max_exp(self, var: str) -> int:
        i = self.idx(var)
        return max((e[i] for e in self.data), default=0)

    def min_exp(self, var: str) -> int:
        i = self.idx(var)
        return min((e[i] for e in self.data), default=0)

    def drop_var(self, var: str) -> "Series":
        """Remove a variable the series does not depend on."""
        i = self.idx(var)
        if any(e[i] for e in self.data):
            raise ValueError("series depends on %s" % var)
        return self.coeff(var, 0)

    def with_vars(self, vars) -> "Series":
        """Reindex over a superset of variables (new ones exact, exponent 0)."""
        vars = tuple(vars)
        pos = []
        for v in self.vars:
            if v not in vars:
                raise ValueError("missing variable %s" % v)
            pos.append(vars.index(v))
        n = len(vars)
        lo = [0] * n
        hi = [INF] * n
        for j, p in enumerate(pos):
            lo[p] = self.lo[j]
            hi[p] = self.hi[j]
        data = {}
        for e, v in self.data.items():
            ee = [0] * n
            for j, p in enumerate(pos):
                ee[p] = e[j]
            data[tuple(ee)] = v
        return Series(vars, tuple(lo), tuple(hi), data, self.cap)

    def restrict(self, var: str, lo: int, hi: int) -> "Series":
        """Tighten the stored window of one variable (drops data outside)."""
        i = self.idx(var)
        nlo = tuple(max(l, lo) if j == i else l for j, l in enumerate(self.lo))
        nhi = tuple(min(h, hi) if j == i else h for j, h in enumerate(self.hi))
        data = {e: v for e, v in self.data.items() if lo <= e[i] <= hi}
        return Series(self.vars, nlo, nhi, data, self.cap, _clean=True)

    def with_cap(self, cap) -> "Series":
        """Attach (and apply) a total-degree cap."""
        return Series(self.vars, self.lo, self.hi, self.data, cap)

    def scalar(self) -> Fraction:
        """Value of a series with no variable dependence."""
        for e, v in self.data.items():
            if any(e):
                raise ValueError("not a scalar")
        return self.data.get((0,) * len(self.vars), Fraction(0))

    # -- substitution ----------------------------------------------------------
    def substitute(self, var: str, g: "Series", powers: dict | None = None) -> "Series":
        """Replace ``var`` by the series g (in any variables not including
        ``var``).  Powers g^k for the occurring exponents k are formed
        exactly; negative k require g to have valuation 1 in exactly one
        variable (Laurent re-expansion) or be a unit.  A caller-owned
        ``powers`` cache avoids re-forming g^k across invocations.

        g must not carry a total-degree cap when negative powers occur:
        capping a series that is later inverted discards needed data.
        """
        i = self.idx(var)
        groups: dict[int, dict] = {}
        for e, v in self.data.items():
            k = e[i]
            rest = tuple(x for j, x in enumerate(e) if j != i)
            groups.setdefault(k, {})[rest] = v
        rest_vars = tuple(v for j, v in enumerate(self.vars) if j != i)
        out_vars = list(rest_vars)
        for v in g.vars:
            if v not in out_vars:
                out_vars.append(v)
        out_vars = tuple(out_vars)
        # carry substitution-validity: truncation of self in var limits the
        # output in g's variables when g has positive valuation there
        acc = None
        if powers is None:
            powers = {}

        def g_power(k: int) -> Series:
            if k in powers:
                return powers[k]
            if k >= 0:
                p = g ** k
            else:
                p = g.laurent_power(k)
            powers[k] = p
            return p

        for k, data in sorted(groups.items()):
            rest = Series(
                rest_vars,
                tuple(l for j, l in enumerate(self.lo) if j != i),
                tuple(h for j, h in enumerate(self.hi) if j != i),
                data,
                self._cap_without(var),
            ).with_vars(out_vars)
            term = rest * g_power(k).with_vars(out_vars)
            acc = term if acc is None else acc + term
        if acc is None:
            acc = Series.zero(out_vars, cap=self._cap_without(var))
        # unknown self-coefficients beyond hi[var] enter g's variables at
        # exponent >= (hi[var]+1) * valuation(g); clamp the claim accordingly
        H = self.hi[i]
        if H < INF:
            nhi = list(acc.hi)
            for v in g.vars:
                val = max(g.min_exp(v), 0)
                if val > 0:
                    j = acc.idx(v)
                    nhi[j] = min(nhi[j], (H + 1) * val - 1)
            acc = Series(acc.vars, acc.lo, tuple(nhi), acc.data, acc.cap)
        return acc

    def _cap_without(self, var: str):
        if self.cap is None or var not in self.cap[0]:
            return self.cap
        # substitution target inherits the cap through the substituted
        # variable only when the caller re-applies it; drop here
        return None

    def laurent_power(self, k: int) -> "Series":
        """g^k for negative k when g = c1*t*(1 + O(t)) in a single variable."""
        assert k < 0
        sup = [v for j, v in enumerate(self.vars) if any(e[j] for e in self.data)]
        if len(sup) != 1:
            raise ValueError("Laurent power needs a univariate series")
        t = sup[0]
        i = self.idx(t)
        if self.min_exp(t) != 1:
            raise ValueError("Laurent power needs valuation exactly 1")
        unit = self.shift(t, -1)
        inv_unit = unit.inverse()
        return (inv_unit ** (-k)).shift(t, k)


def align(a: Series, b: Series) -> tuple[Series, Series]:
    if a.vars == b.vars:
        if a.cap != b.cap:
            cap = _merge_caps(a.cap, b.cap)
            a = Series(a.vars, a.lo, a.hi, a.data, cap)
            b = Series(b.vars, b.lo, b.hi, b.data, cap)
        return a, b
    vars = list(a.vars)
    for v in b.vars:
        if v not in vars:
            vars.append(v)
    cap = _merge_caps(a.cap, b.cap)
    aa = a.with_vars(vars)
    bb = b.with_vars(vars)
    aa.cap = bb.cap = cap
    return aa, bb


def _merge_caps(ca, cb):
    if ca is None:
        return cb
    if cb is None or ca == cb:
        return ca
    raise ValueError("incompatible total-degree caps: %r vs %r" % (ca, cb))


# ---------------------------------------------------------------------------
# univariate helpers


def poly1(var: str, coeffs: dict[int, Fraction], hi: int = INF, cap=None) -> Series:
    lo = min((e for e in coeffs if coeffs[e] != 0), default=0)
    return Series((var,), (lo,), (hi,), {(e,): v for e, v in coeffs.items()}, cap)


def univariate_coeffs(s: Series, var: str) -> dict[int, Fraction]:
    i = s.idx(var)
    out = {}
    for e, v in s.data.items():
        if any(x for j, x in enumerate(e) if j != i):
            raise ValueError("not univariate in %s" % var)
        out[e[i]] = v
    return out


def sigma_coefficients(K: int) -> dict[int, Fraction]:
    """Taylor coefficients of sinh(t/2)/(t/2) = sum t^(2j)/(4^j (2j+1)!),
    through degree K.

    >>> sigma_coefficients(4)[2]
    Fraction(1, 24)
    >>> sigma_coefficients(4)[4]
    Fraction(1, 1920)
    """
    from math import factorial

    out = {}
    j = 0
    while 2 * j <= K:
        out[2 * j] = Fraction(1, 4**j * factorial(2 * j + 1))
        j += 1
    return out


def sigma_series(K: int):
    """sinh(t/2)/(t/2) as a truncated series in a placeholder variable."""
    from .hbar import HbarSeries

    return HbarSeries(sigma_coefficients(K), K)


def apply_diagonal(s: Series, var: str, eigen) -> Series:
    """Apply a diagonal operator: multiply the coefficient of var^k by the
    eigenvalue series eigen(k) (e.g. the hyperbolic-sine kernel
    sigma(hbar u w d/dw) acting as sigma(hbar u k) on w^k)."""
    out = None
    for k, part in s.coeff_dict(var).items():
        term = part * eigen(k)
        if var not in term.vars:
            term = term.with_vars(tuple(term.vars) + (var,))
        term = term.shift(var, k)
        out = term if out is None else out + term
    if out is None:
        return s
    return out


def kernel_series(wi: str, wj: str, vars, depth: int, cap=None) -> Series:
    """The sector expansion sum_{k>=1} k wi^k wj^(-k) of the double-pole
    kernel wi*wj/(wi-wj)^2, truncated at the given depth.

    Only valid with wi earlier than wj in the sector order; callers pass
    variables in increasing index order.  The depth is part of the
    evaluation convention (terms beyond it cannot reach monomials with all
    exponents in [1, D] when depth >= n*D), so the windows are declared
    complete; the honest negative valuation bound is kept.
    """
    vars = tuple(vars)
    i, j = vars.index(wi), vars.index(wj)
    if i >= j:
        raise SectorError("kernel requires sector order %s < %s" % (wi, wj))
    n = len(vars)
    data = {}
    for k in range(1, depth + 1):
        e = [0] * n
        e[i], e[j] = k, -k
        data[tuple(e)] = Fraction(k)
    lo = tuple(-depth if t == j else 0 for t in range(n))
    return Series(vars, lo, (INF,) * n, data, cap)


def lagrange_invert(x_of_w: Series, var: str, D: int) -> Series:
    """Inverse series w(X) of X(w) = w*(1 + O(w)), to degree D, in the same
    variable name; X(w(X)) = X + O(X^(D+1)).

    >>> from fractions import Fraction
    >>> X = poly1("w", {1: Fraction(1), 3: Fraction(-1)}, hi=12)
    >>> w = lagrange_invert(X, "w", 5)
    >>> sorted(univariate_coeffs(w, "w").items())[:2]
    [(1, Fraction(1, 1)), (3, Fraction(1, 1))]
    """
    cs = univariate_coeffs(x_of_w, var)
    if cs.get(1) != 1 or any(e < 1 for e in cs):
        raise ValueError("expected a series w*(1 + O(w)) with unit linear term")
    if x_of_w.hi[x_of_w.idx(var)] < D:
        raise TruncationError("input known only to degree %d < %d" % (x_of_w.hi[0], D))
    a = {1: Fraction(1)}
    for k in range(2, D + 1):
        # residual of X(w(X)) at order k given a_1..a_{k-1}
        resid = Fraction(0)
        # compute [X^k] of sum_m c_m * (w(X))^m with current partial inverse
        wpart = poly1(var, a, hi=k)
        comp = Series.zero((var,), hi=(k,))
        wpow = Series.const((var,), 1)
        wpow = wpow.with_vars((var,))
        for m in range(1, k + 1):
            wpow = (wpow * wpart).restrict(var, 0, k)
            c = cs.get(m)
            if c:
                comp = comp + wpow * c
        resid = univariate_coeffs(comp, var).get(k, Fraction(0))
        a[k] = -resid
        if a[k] == 0:
            del a[k]
    return poly1(var, a, hi=D)
