"""Vertex operator weights, hyperedge weights, and the graph-sum evaluator
for the functional relations between moment and cumulant n-point series.

Grading conventions (pinned by the (0,1), (0,2) closed forms and the test
suite): the n-point series carried by a hyperedge is the full graded one,

    G_m = hbar^(-1) delta_{m,1} + sum_g hbar^(2g-2+m) G_{g,m},

with the double-pole kernel (at genus 0) added for off-diagonal pairs; a
hyperedge weight multiplies in one factor hbar*u_i*sigma(hbar u_i k) per
slot.  The vertex weight consumes the u-dependence, introduces and consumes
an auxiliary v, and applies powers of P w d/dw.

Truncation scheme: all variables w_i live under a shared total-degree cap D
(every factor in the pipeline has monomials of nonnegative total degree, so
monomials above the cap can never re-enter the extractable range); the
one-point data is built to degree D, kernels to depth n*D (a kernel's
negative exponent in a later variable can be compensated by earlier
kernels, at most (n-1) deep, plus degree D of table data).  The hbar and
u/v variables carry honest per-variable truncation windows.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .graphs import Graph
from .series import INF, Series, poly1, sigma_coefficients, lagrange_invert, univariate_coeffs
from .symcore import sort_to_partition
from .tables import CoefficientTable, normalize, table_get


def npoint_series(table: CoefficientTable, g2: int, wvars, D: int, constants: bool = True) -> Series:
    """The fixed-genus n-point series delta_{g,0} delta_{n,1} + sum
    F_{g;k} prod w_i^{k_i} built from a coefficient table.  No kernel."""
    wvars = tuple(wvars)
    n = len(wvars)
    acc = Series.zero(wvars)
    if constants and g2 == 0 and n == 1:
        acc = acc + Series.const(wvars, 1)
    for (tg2, ks), val in table.items():
        if tg2 != g2 or len(ks) != n or sum(ks) > D:
            continue
        for comp in _distinct_permutations(ks):
            acc = acc + Series(wvars, (0,) * n, (INF,) * n, {comp: val})
    return acc


def series_to_table(S: Series, g2: int, wvars, D: int) -> CoefficientTable:
    """Inverse of npoint_series: read symmetric coefficients back off,
    ignoring the conventional constant."""
    out: CoefficientTable = {}
    for e, val in S.data.items():
        exps = tuple(e[S.idx(v)] if v in S.vars else 0 for v in wvars)
        if any(x < 1 for x in exps) or sum(exps) > D:
            continue
        key = (g2, sort_to_partition(exps))
        prev = out.get(key)
        if prev is not None and prev != val:
            raise AssertionError("asymmetric coefficients at %r" % (key,))
        out[key] = val
    return out


def _distinct_permutations(ks):
    """Distinct orderings of a multiset tuple."""
    out = set()

    def rec(rem, prefix):
        if not rem:
            out.add(prefix)
            return
        seen = set()
        for i, x in enumerate(rem):
            if x in seen:
                continue
            seen.add(x)
            rec(rem[:i] + rem[i + 1 :], prefix + (x,))

    rec(tuple(ks), ())
    return sorted(out)


class Evaluator:
    """Shared state for one functional-relation evaluation.

    sign=+1 computes moments from cumulants (the table is the cumulant
    side); sign=-1 is the dual direction (the table is the moment side).
    """

    def __init__(self, table: CoefficientTable, n: int, D: int, K: int, sign: int = 1):
        self.table = normalize(table)
        self.n = n
        self.D = D
        self.K = K  # hbar working truncation
        self.sign = sign
        self.wvars = tuple("w%d" % i for i in range(n))
        self.uvars = tuple("u%d" % i for i in range(n))
        self.cap = (frozenset(self.wvars), D)
        self.kernel_depth = n * D
        self.sig = sigma_coefficients(K + 2)
        self.sig_inv = self._invert_even(self.sig, K + 2)
        self._cache: dict = {}

    # -- small helpers -------------------------------------------------------
    @staticmethod
    def _invert_even(coeffs: dict[int, Fraction], K: int) -> dict[int, Fraction]:
        inv = {0: Fraction(1)}
        for m in range(2, K + 1, 2):
            s = Fraction(0)
            for e, v in coeffs.items():
                if 0 < e <= m and (m - e) in inv:
                    s += v * inv[m - e]
            if s:
                inv[m] = -s
        return inv

    def _memo(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def _w_atom(self, i: int, coeffs: dict[int, Fraction]) -> Series:
        v = self.wvars[i]
        lo = min((e for e, c in coeffs.items() if c), default=0)
        return Series((v,), (lo,), (INF,), {(e,): c for e, c in coeffs.items()}, self.cap)

    # -- one-point data -------------------------------------------------------
    def C_coeffs(self) -> dict[int, Fraction]:
        def build():
            out = {0: Fraction(1)}
            for k in range(1, self.D + 1):
                v = table_get(self.table, 0, (k,))
                if v:
                    out[k] = v
            return out

        return self._memo(("Ccoef",), build)

    def C(self, i: int) -> Series:
        return self._memo(("C", i), lambda: self._w_atom(i, self.C_coeffs()))

    def invC(self, i: int) -> Series:
        return self._memo(("invC", i), lambda: self.C(i).inverse())

    def P(self, i: int) -> Series:
        """The logarithmic-derivative factor d ln(input var) / d ln(output
        var) for the change of variables between the two sides:

            forward (sign +1): X = w / C(w),  P = C / (C - w C'),
            dual    (sign -1): w = X * M(X),  P = M / (M + X M').
        """

        def build():
            C = self.C(i)
            D_ = C - C.wdw(self.wvars[i]) * self.sign
            return C * D_.inverse()

        return self._memo(("P", i), build)

    def x_of_w_coeffs(self) -> dict[int, Fraction]:
        """Coefficients of the output variable as a series in the input
        one: w/C(w) forward, X*M(X) dual."""

        def build():
            c = self._w_atom(0, self.C_coeffs())
            v = Series.variable((self.wvars[0],), self.wvars[0], cap=self.cap)
            x = v * (c.inverse() if self.sign > 0 else c)
            return univariate_coeffs(x, self.wvars[0])

        return self._memo(("Xcoef",), build)

    def w_of_x_coeffs(self, depth: int) -> dict[int, Fraction]:
        """Inverse series of the change of variables, for re-expansion."""

        def build():
            c_coeffs = self.C_coeffs()
            cs = poly1("t", {e: v for e, v in c_coeffs.items()}, hi=depth + 1)
            factor = cs.inverse() if self.sign > 0 else cs
            x = (poly1("t", {1: Fraction(1)}, hi=depth + 1) * factor).restrict(
                "t", 0, depth
            )
            w = lagrange_invert(x, "t", depth)
            return univariate_coeffs(w, "t")

        return self._memo(("wofx", depth), build)

    # -- sigma slot factors ----------------------------------------------------
    def _slot_factor(self, i: int, k: int) -> Series:
        """hbar * u_i * sigma(hbar u_i k) as a series in (h, u_i)."""
        key = ("slot", i, abs(k))
        if key in self._cache:
            return self._cache[key]
        vars = ("h", self.uvars[i])
        data = {}
        for e2, c in self.sig.items():
            if e2 + 1 <= self.K:
                data[(e2 + 1, e2 + 1)] = c * (k ** e2)
        s = Series(vars, (0, 0), (self.K, INF), data)
        self._cache[key] = s
        return s

    def _hu_sigma_each(self, s: Series, i: int) -> Series:
        """Multiply each monomial by hbar u_i sigma(hbar u_i k) with k its
        w_i-exponent (the diagonal action of the hyperbolic-sine kernel)."""
        h_u_vars = ("h", self.uvars[i])
        out_vars = list(s.vars)
        for v in h_u_vars:
            if v not in out_vars:
                out_vars.append(v)
        out_vars = tuple(out_vars)
        base = s.with_vars(out_vars)
        iw = base.idx(self.wvars[i])
        ih = base.idx("h")
        iu = base.idx(self.uvars[i])
        data: dict[tuple, Fraction] = {}
        hi_h = min(base.hi[ih], self.K)
        for e, val in base.data.items():
            k = e[iw]
            for e2, c in self.sig.items():
                he = e[ih] + e2 + 1
                if he > hi_h:
                    continue
                ee = list(e)
                ee[ih] = he
                ee[iu] = e[iu] + e2 + 1
                ee = tuple(ee)
                w = val * c * (k ** e2)
                if w:
                    data[ee] = data.get(ee, Fraction(0)) + w
        lo = list(base.lo)
        hi = list(base.hi)
        lo[ih] = base.lo[ih] + 1
        lo[iu] = base.lo[iu] + 1
        hi[ih] = hi_h
        return Series(out_vars, tuple(lo), tuple(hi), data, base.cap)

    def _series_exp(self, S: Series) -> Series:
        """exp of a series with positive hbar valuation."""
        ih = S.idx("h")
        assert S.lo[ih] >= 1 or all(e[ih] >= 1 for e in S.data)
        out = Series.const(S.vars, 1, S.cap) + S
        term = S
        j = 1
        while True:
            j += 1
            term = term * S * Fraction(1, j)
            if term.is_zero():
                break
            out = out + term
            if j > self.K + 4:  # pragma: no cover - safety stop
                break
        return out

    # -- vertex weight layers ---------------------------------------------------
    def one_point_tail(self, i: int) -> Series:
        """G_1 - hbar^(-1) as a series over (h, w_i): the genus-0 part
        hbar^(-1)(C-1) plus hbar^(g2-1) one-point entries for g2 >= 1."""

        def build():
            wv = self.wvars[i]
            vars = ("h", wv)
            data = {}
            for k in range(1, self.D + 1):
                v = self.C_coeffs().get(k)
                if v:
                    data[(-1, k)] = v
                for g2 in range(1, self.K + 2):
                    vv = table_get(self.table, g2, (k,))
                    if vv and g2 - 1 <= self.K:
                        data[(g2 - 1, k)] = vv
            return Series(vars, (-1, 1), (self.K, INF), data, self.cap)

        return self._memo(("g1tail", i), build)

    def a_series(self, i: int) -> Series:
        """The u-layer weight at the i-th white vertex:

        exp( hbar u sigma(hbar u w d/dw)(G_1 - hbar^(-1)) - u (C - 1) )
        / ( hbar u sigma(hbar u) ).
        """

        def build():
            wv, uv = self.wvars[i], self.uvars[i]
            d1 = self._hu_sigma_each(self.one_point_tail(i), i)
            cminus1 = self.C(i) - Series.const((wv,), 1, self.cap)
            u = Series.variable((uv,), uv)
            E = d1 - u * cminus1
            expE = self._series_exp(E)
            # 1/(hbar u sigma(hbar u))
            inv_data = {}
            for e2, c in self.sig_inv.items():
                if e2 - 1 <= self.K:
                    inv_data[(e2 - 1, e2 - 1)] = c
            inv = Series(("h", uv), (-1, -1), (self.K, INF), inv_data)
            return expE * inv

        return self._memo(("A", i), build)

    def _b_exponent_raw(self) -> Series:
        """E_B over (h, v, t) with t = 1/y:

        sign * v * [sigma(hbar v d_y)/sigma(hbar d_y) - 1] ln y
            = -sign * v * sum_{j >= 2 even} q_j (j-1)! t^j,
        where q_j collects hbar^j sigma/inverse-sigma data.
        """

        def build():
            data: dict[tuple, Fraction] = {}
            for j in range(2, self.K + 1, 2):
                # q_j = hbar^j sum_{2a+2b=j} sig_{2a} v^{2a} siginv_{2b}
                for a2 in range(0, j + 1, 2):
                    b2 = j - a2
                    if a2 in self.sig and b2 in self.sig_inv:
                        coeff = -self.sign * self.sig[a2] * self.sig_inv[b2] * factorial(j - 1)
                        e = (j, 1 + a2, j)  # (h, v, t)
                        data[e] = data.get(e, Fraction(0)) + coeff
            return Series(("h", "v", "t"), (2, 1, 2), (self.K, INF, INF), data)

        return self._memo(("EB",), build)

    def _apply_dy_plus_v_over_y(self, s: Series) -> Series:
        """One application of (d_y + sign * v / y) in the t = 1/y picture:
        t^a -> (sign*v - a) t^(a+1)."""
        it = s.idx("t")
        iv = s.idx("v")
        data: dict[tuple, Fraction] = {}
        for e, val in s.data.items():
            a = e[it]
            e1 = list(e)
            e1[it] = a + 1
            e1[iv] = e[iv] + 1
            e1 = tuple(e1)
            data[e1] = data.get(e1, Fraction(0)) + self.sign * val
            if a:
                e2 = list(e)
                e2[it] = a + 1
                e2 = tuple(e2)
                data[e2] = data.get(e2, Fraction(0)) - a * val
        lo = list(s.lo)
        lo[it] = s.lo[it] + 1
        return Series(s.vars, tuple(lo), s.hi, {e: v for e, v in data.items() if v})

    def b_raw(self, r: int) -> Series:
        """(d_y + sign v/y)^r exp(E_B), in the (h, v, t) picture."""
        if ("Braw", r) in self._cache:
            return self._cache[("Braw", r)]
        if r == 0:
            out = self._series_exp(self._b_exponent_raw())
        else:
            out = self._apply_dy_plus_v_over_y(self.b_raw(r - 1))
        self._cache[("Braw", r)] = out
        return out

    def b_series(self, i: int, r: int) -> Series:
        """B_r at the i-th vertex: the t-picture specialised at y = C(w_i)."""

        def build():
            return self.b_raw(r).substitute("t", self.invC(i))

        return self._memo(("B", i, r), build)

    def pwd(self, s: Series, i: int, m: int = 1) -> Series:
        """(P(w_i) w_i d/dw_i)^m applied to s."""
        P = self.P(i)
        for _ in range(m):
            s = P * s.wdw(self.wvars[i])
        return s

    # -- hyperedge weights --------------------------------------------------------
    def edge_weight(self, I: tuple[int, ...]) -> Series:
        """c(u_I, w_I) for the hyperedge (multiset) I, with the genus-0
        kernel included for off-diagonal pairs and per-slot diagonal sigma
        operators applied before identifying repeated variables."""

        def build():
            m = len(I)
            acc = None
            entries = []
            for (g2, ks), val in self.table.items():
                if len(ks) == m and sum(ks) <= self.D:
                    for comp in _distinct_permutations(ks):
                        entries.append((g2, comp, val))
            if m == 2 and I[0] != I[1]:
                for k in range(1, self.kernel_depth + 1):
                    entries.append((0, (k, -k), Fraction(k)))
            for g2, comp, val in entries:
                hexp = g2 - 2 + m
                if hexp > self.K:
                    continue
                term = Series(("h",), (hexp,), (self.K, ), {(hexp,): val})
                # w-monomial
                wexp: dict[str, int] = {}
                for slot, k in zip(I, comp):
                    wv = self.wvars[slot]
                    wexp[wv] = wexp.get(wv, 0) + k
                wvars = tuple(sorted(wexp))
                wmono = Series(
                    wvars,
                    tuple(min(wexp[v], 0) for v in wvars),
                    (INF,) * len(wvars),
                    {tuple(wexp[v] for v in wvars): Fraction(1)},
                    self.cap,
                )
                term = term * wmono
                for slot, k in zip(I, comp):
                    term = term * self._slot_factor(slot, k)
                acc = term if acc is None else acc + term
            if acc is None:
                acc = Series.zero(("h",), hi=(self.K,))
            return acc

        return self._memo(("edge", tuple(I)), build)

    # -- full vertex reduction -------------------------------------------------------
    def reduce_vertex(self, S: Series, i: int) -> Series:
        """Apply the full operator weight at vertex i to the series S
        (which may depend on h, u_i, w_* and other u's)."""
        uv = self.uvars[i]
        S = S * self.a_series(i)
        # u-extraction and B-sum
        if uv in S.vars:
            parts = S.coeff_dict(uv)
        else:
            parts = {0: S}
        T = None
        for r, part in parts.items():
            if r < 0:
                continue  # only r >= 0 enters; the hbar^(-1) u^(-1) unit
                # is accounted for by the n = 1 delta correction
            term = self.b_series(i, r) * part
            T = term if T is None else T + term
        if T is None:
            return Series.zero(("h",), hi=(self.K,))
        # v-extraction and the (P w d/dw)^m sum
        out = None
        if "v" in T.vars:
            vparts = T.coeff_dict("v")
        else:
            vparts = {0: T}
        for mdeg, part in vparts.items():
            term = self.pwd(self.P(i) * part, i, mdeg)
            out = term if out is None else out + term
        return out

    def graph_term(self, g: Graph) -> Series:
        S = Series(("h",), (0,), (self.K,), {(0,): Fraction(1)})
        for I in g.edges:
            S = S * self.edge_weight(I)
        S = self.prune_w(S)
        for i in range(self.n):
            S = self.prune_w(self.reduce_vertex(S, i))
        return S * Fraction(1, g.aut_order())

    # -- n = 1 correction -------------------------------------------------------------
    def delta_series(self, g2: int) -> Series:
        """Delta_g(X) in the w-picture: [hbar^(2g)] sum_m (P w d/dw)^m
        ( [v^(m+1)] exp(E_B)|_{y=C} * P w d/dw C )."""
        bexp = self.b_raw(0).substitute("t", self.invC(0))
        core = bexp * (self.P(0) * self.C(0).wdw(self.wvars[0]))
        out = None
        vparts = core.coeff_dict("v") if "v" in core.vars else {0: core}
        for mp1, part in vparts.items():
            if mp1 < 1:
                continue
            term = self.pwd(part, 0, mp1 - 1)
            out = term if out is None else out + term
        if out is None:
            return Series.zero((self.wvars[0],), cap=self.cap)
        return out.coeff("h", g2)

    def prune_w(self, S: Series) -> Series:
        """Drop monomials with any w-exponent above D (once every factor
        with negative w-exponents, i.e. every kernel, has been multiplied
        in, later factors only raise w-exponents, so such monomials can
        never re-enter the extractable range), and below the kernel
        budget."""
        for wv in self.wvars:
            if wv in S.vars:
                S = S.restrict(wv, -self.kernel_depth, self.D)
        return S

    # -- re-expansion ------------------------------------------------------------------
    def reexpand(self, S: Series) -> Series:
        """Substitute w_i = w(X_i) for every variable, expressing a
        w-series as an X-series with the same variable names.

        The inverse series is built uncapped (negative powers of a capped
        series would be wrong); the total-degree cap is re-applied after
        each variable, which is valid because a valuation-1 substitution
        never lowers a monomial's total degree.
        """
        depth = (self.n + 1) * self.D + 2
        wc = self.w_of_x_coeffs(depth)
        S = self.prune_w(S)
        for i in range(self.n):
            wv = self.wvars[i]
            if wv not in S.vars:
                continue
            g = Series((wv,), (1,), (depth,), {(e,): v for e, v in wc.items()})
            cache = self._cache.setdefault(("gpow", wv), {})
            S = S.substitute(wv, g, powers=cache).with_cap(self.cap)
            S = self.prune_w(S)
        return S

    def x_kernel(self, i: int, j: int, depth: int | None = None) -> Series:
        from .series import kernel_series

        return kernel_series(
            self.wvars[i], self.wvars[j], (self.wvars[i], self.wvars[j]),
            self.kernel_depth if depth is None else depth, self.cap,
        )

    # -- table extraction -----------------------------------------------------------------
    def extract_table(self, S: Series, g2: int, check_symmetric: bool = True) -> CoefficientTable:
        """Read F_{g; k_1..k_n} off an X-series.

        Entries with any exponent above D are beyond the reliable depth
        (kernel truncation) and skipped; within that range, surviving
        negative or vanishing exponents indicate a bug and raise.
        """
        out: CoefficientTable = {}
        seen: dict[tuple, dict] = {}
        for e, val in S.data.items():
            exps = []
            for v in self.wvars:
                x = e[S.idx(v)] if v in S.vars else 0
                exps.append(x)
            if any(x > self.D for x in exps):
                continue
            if any(x < 0 for x in exps):
                raise AssertionError("negative exponent survived: %r -> %s" % (e, val))
            if any(x == 0 for x in exps):
                raise AssertionError("vanishing exponent survived: %r -> %s" % (e, val))
            if sum(exps) > self.D:
                continue
            key = sort_to_partition(exps)
            seen.setdefault(key, {})[tuple(exps)] = val
        for key, by_order in seen.items():
            vals = set(by_order.values())
            if check_symmetric and len(vals) != 1:
                raise AssertionError("asymmetric coefficients at %r: %r" % (key, by_order))
            out[(g2, key)] = next(iter(vals))
        return out
