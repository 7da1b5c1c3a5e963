"""The master moment/cumulant transform in its equivalent forms, and the
tree/graph functional-relation routes.

Routes between a cumulant table and a moment table:

- hurwitz:     Z(lam) = z(lam) sum_nu H^<(lam, nu) Z_dual(nu), inverted
               with the weakly monotone series;
- convolution: Phi = zeta_hbar (*) Phi_dual on PS(d) (and the Moebius
               inverse Phi_dual = mu_hbar (*) Phi);
- schur:       the content-polynomial multiplier in the Schur basis;
- formula:     the tree (genus 0), graph (all genus) and special-tree
               (genus 1/2) functional relations, plus coefficient-wise
               versions and their duals.

Z-tables attach hbar^(d + ell(lam)) * z(lam) times the monomial coefficient
of p_lam; equivalently Z(lam) = sum over partitions A of the cycle set of
pi_lam of products of block values

    hbar^(|mu| + ell(mu) - 2 + g2) F_{g2; mu},

which pins all gradings against the classical moment-cumulant relations.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from . import graphs, pscore, symcore
from .hbar import HbarSeries
from .hurwitz import cached_hurwitz_table
from .operators import Evaluator, _distinct_permutations
from .series import INF, Series
from .symcore import Partition, sort_to_partition
from .tables import CoefficientTable, table_get


# ---------------------------------------------------------------------------
# partition-function tables


def blockvalue_series(table: CoefficientTable, mu: Partition, K: int) -> HbarSeries:
    """Value of the multiplicative function on a one-block partitioned
    permutation of cycle type mu, as an hbar-series."""
    base = sum(mu) + len(mu) - 2
    coeffs = {}
    for g2 in range(0, K - base + 1):
        v = table_get(table, g2, mu)
        if v:
            coeffs[base + g2] = v
    return HbarSeries(coeffs, K)


def z_value(table: CoefficientTable, nu: Partition, K: int) -> HbarSeries:
    """Z(nu): sum over set partitions of the cycle set of pi_nu of block
    value products."""
    out = HbarSeries.zero(K)
    for grouping in pscore.set_partitions_of(len(nu)):
        term = HbarSeries.one(K)
        for block in grouping:
            mu = sort_to_partition(nu[i] for i in block)
            term = term * blockvalue_series(table, mu, K)
        out = out + term
    return out


def z_table(table: CoefficientTable, d: int, K: int) -> dict[Partition, HbarSeries]:
    return {nu: z_value(table, nu, K) for nu in symcore.partitions(d)}


def table_from_z(ztabs: dict[Partition, HbarSeries], dmax: int, K: int, g2max: int) -> CoefficientTable:
    """Invert the Z-assembly: peel off multi-block contributions to recover
    block values, then read the F-table off their hbar gradings."""
    block: dict[Partition, HbarSeries] = {}
    out: CoefficientTable = {}
    for d in range(1, dmax + 1):
        for nu in symcore.partitions(d):
            acc = ztabs[nu]
            for grouping in pscore.set_partitions_of(len(nu)):
                if len(grouping) == 1:
                    continue
                term = HbarSeries.one(K)
                for blk in grouping:
                    mu = sort_to_partition(nu[i] for i in blk)
                    term = term * block[mu]
                acc = acc - term
            block[nu] = acc
            base = d + len(nu) - 2
            for g2 in range(0, min(g2max, K - base) + 1):
                v = acc.coeff(base + g2)
                if v:
                    out[(g2, nu)] = v
    return out


def default_K(dmax: int, g2max: int) -> int:
    return 2 * dmax - 2 + g2max + 1


# ---------------------------------------------------------------------------
# route: hurwitz (master relation)


def master_forward(cum_table: CoefficientTable, dmax: int, g2max: int, K: int | None = None) -> CoefficientTable:
    """Moments from cumulants via strictly monotone Hurwitz numbers."""
    K = default_K(dmax, g2max) if K is None else K
    ztabs: dict[Partition, HbarSeries] = {(): HbarSeries.one(K)}
    for d in range(1, dmax + 1):
        zdual = z_table(cum_table, d, K)
        strict = cached_hurwitz_table(d, "strict", K)
        for lam in symcore.partitions(d):
            acc = HbarSeries.zero(K)
            for nu in symcore.partitions(d):
                acc = acc + strict[(lam, nu)] * zdual[nu]
            ztabs[lam] = acc * symcore.z_factor(lam)
    return table_from_z(ztabs, dmax, K, g2max)


def master_inverse(mom_table: CoefficientTable, dmax: int, g2max: int, K: int | None = None) -> CoefficientTable:
    """Cumulants from moments via weakly monotone Hurwitz numbers."""
    K = default_K(dmax, g2max) if K is None else K
    ztabs: dict[Partition, HbarSeries] = {(): HbarSeries.one(K)}
    for d in range(1, dmax + 1):
        zmom = z_table(mom_table, d, K)
        weak = cached_hurwitz_table(d, "weak", K)
        for nu in symcore.partitions(d):
            acc = HbarSeries.zero(K)
            for lam in symcore.partitions(d):
                acc = acc + weak[(nu, lam)] * zmom[lam]
            ztabs[nu] = acc * symcore.z_factor(nu)
    return table_from_z(ztabs, dmax, K, g2max)


# ---------------------------------------------------------------------------
# route: convolution on PS(d)


def _blockvalue_fn(table: CoefficientTable, K: int):
    cache: dict[Partition, HbarSeries] = {}

    def fn(mu: Partition) -> HbarSeries:
        if mu not in cache:
            cache[mu] = blockvalue_series(table, mu, K)
        return cache[mu]

    return fn


def convolution_forward(cum_table: CoefficientTable, dmax: int, g2max: int, K: int | None = None) -> CoefficientTable:
    """Moments from cumulants by the extended convolution with zeta_hbar,
    evaluated on total tables over PS(d)."""
    K = default_K(dmax, g2max) if K is None else K
    out: CoefficientTable = {}
    for d in range(1, dmax + 1):
        phi_dual = pscore.multiplicative_function(d, _blockvalue_fn(cum_table, K))
        zet = pscore.zeta_hbar(d, K)
        phi = pscore.convolve(zet, phi_dual, kind="extended")
        for lam in symcore.partitions(d):
            target = (pscore.coarsest(d), symcore.canonical_permutation(lam))
            val = phi.get(target, HbarSeries.zero(K))
            base = d + len(lam) - 2
            for g2 in range(0, g2max + 1):
                if base + g2 <= K:
                    v = val.coeff(base + g2)
                    if v:
                        out[(g2, lam)] = v
    return out


def moebius_inverse_route(mom_table: CoefficientTable, dmax: int, g2max: int, K: int | None = None) -> CoefficientTable:
    """Cumulants from moments by extended convolution with mu_hbar."""
    K = default_K(dmax, g2max) if K is None else K
    out: CoefficientTable = {}
    for d in range(1, dmax + 1):
        phi = pscore.multiplicative_function(d, _blockvalue_fn(mom_table, K))
        mu_h = pscore.moebius_hbar(d, K)
        phi_dual = pscore.convolve(mu_h, phi, kind="extended")
        for lam in symcore.partitions(d):
            target = (pscore.coarsest(d), symcore.canonical_permutation(lam))
            val = phi_dual.get(target, HbarSeries.zero(K))
            base = d + len(lam) - 2
            for g2 in range(0, g2max + 1):
                if base + g2 <= K:
                    v = val.coeff(base + g2)
                    if v:
                        out[(g2, lam)] = v
    return out


# ---------------------------------------------------------------------------
# route: Schur-basis content-polynomial oracle


def schur_d_oracle(cum_table: CoefficientTable, dmax: int, g2max: int, K: int | None = None,
                   inverse: bool = False) -> CoefficientTable:
    """Transform by expanding the degree-d part in the Schur basis and
    multiplying s_lam by prod_{(i,j) in lam} (1 + hbar (j - i))."""
    K = default_K(dmax, g2max) if K is None else K
    ztabs: dict[Partition, HbarSeries] = {(): HbarSeries.one(K)}
    for d in range(1, dmax + 1):
        zdual = z_table(cum_table, d, K)
        parts = symcore.partitions(d)
        # the content multiplier acts on the hbar-twisted coefficients
        # b_nu = Z(nu) hbar^(-d) / z(nu) (one power of hbar per p-factor),
        # which is what makes the class-algebra and p-basis gradings agree
        b = {nu: zdual[nu].shift(-d) / symcore.z_factor(nu) for nu in parts}
        c = {}
        for lam in parts:
            acc = HbarSeries.zero(K)
            for nu in parts:
                chi = symcore.character(lam, nu)
                if chi:
                    acc = acc + b[nu] * chi
            c[lam] = acc
        for lam in parts:
            mult = symcore.content_polynomial(lam, K + 2 * d + 2)
            c[lam] = c[lam] * (mult.inverse() if inverse else mult)
        for nu in parts:
            # back to the p-basis: the 1/z of s_lam = sum chi p_nu / z(nu)
            # cancels against the z(nu) in the Z-normalization
            acc = HbarSeries.zero(K)
            for lam in parts:
                chi = symcore.character(lam, nu)
                if chi:
                    acc = acc + c[lam] * chi
            ztabs[nu] = acc.shift(d)
    return table_from_z(ztabs, dmax, K, g2max)


# ---------------------------------------------------------------------------
# functional-relation routes (trees, graphs, coefficients)


def _edge_genus0(ev: Evaluator, I: tuple[int, ...], g2: int = 0, shifted: bool = True,
                 depth: int | None = None) -> Series:
    """Genus-fixed hyperedge series: G_{g, #I}(w_I) with the double-pole
    kernel (to the given depth) added for shifted off-diagonal pairs at
    genus 0."""
    m = len(I)
    acc = None
    for (tg2, ks), val in ev.table.items():
        if tg2 != g2 or len(ks) != m or sum(ks) > ev.D:
            continue
        for comp in _distinct_permutations(ks):
            wexp: dict[str, int] = {}
            for slot, k in zip(I, comp):
                wv = ev.wvars[slot]
                wexp[wv] = wexp.get(wv, 0) + k
            wvars = tuple(sorted(wexp))
            mono = Series(
                wvars,
                tuple(0 for _ in wvars),
                (INF,) * len(wvars),
                {tuple(wexp[v] for v in wvars): val},
                ev.cap,
            )
            acc = mono if acc is None else acc + mono
    if shifted and g2 == 0 and m == 2 and I[0] != I[1]:
        ker = ev.x_kernel(I[0], I[1], depth)
        acc = ker if acc is None else acc + ker
    if acc is None:
        acc = Series.zero((ev.wvars[I[0]],), cap=ev.cap)
    return acc


def _tree_kernel_depths(edges, D: int) -> dict[tuple[int, ...], int]:
    """Minimal safe kernel depths per tree edge: a kernel's positive side
    must return below degree D through the negative reach of its earlier
    variable, which is fed only by this tree's other kernels."""
    depths: dict[tuple[int, ...], int] = {}
    pairs = [I for I in edges if len(I) == 2 and I[0] != I[1]]

    def depth(I):
        if I not in depths:
            i = I[0]
            depths[I] = D + sum(depth(J) for J in pairs if J[1] == i and J != I)
        return depths[I]

    for I in pairs:
        depth(I)
    return depths


def _genus0_b_polys(ev: Evaluator, r: int) -> Series:
    """(d_y + sign v/y)^r . 1 in the (v, t) picture."""
    s = Series.const(("v", "t"), 1)
    for _ in range(r):
        s = ev._apply_dy_plus_v_over_y(s)
    return s


def _apply_genus0_vertex(ev: Evaluator, S: Series, i: int, r: int) -> Series:
    """The genus-0 operator piece: sum_m (P w d/dw)^m P [v^m] b_r with
    y = C(w_i), applied to S."""
    braw = _genus0_b_polys(ev, r)
    b = braw.substitute("t", ev.invC(i))
    T = b * S
    out = None
    vparts = T.coeff_dict("v") if "v" in T.vars else {0: T}
    for m, part in vparts.items():
        term = ev.pwd(ev.P(i) * part, i, m)
        out = term if out is None else out + term
    if out is None:
        out = Series.zero((ev.wvars[i],), cap=ev.cap)
    return out


def genus0_moments(table: CoefficientTable, n: int, D: int, sign: int = 1) -> CoefficientTable:
    """Genus-0 n-point relation: Lagrange inversion for n = 1, the closed
    two-point formula for n = 2, the tree sum for n >= 3.  sign=-1 runs the
    dual direction (cumulants from moments)."""
    ev = Evaluator(table, n, D, K=2, sign=sign)
    if n == 1:
        one = Series.const((ev.wvars[0],), 1, ev.cap)
        S = ev.reexpand(ev.C(0) - one)
        return ev.extract_table(S, 0)
    if n == 2:
        core = ev.P(0) * ev.P(1) * _edge_genus0(ev, (0, 1))
        S = ev.reexpand(core) - ev.x_kernel(0, 1)
        return ev.extract_table(S, 0)
    by_val: dict[tuple, Series] = {}
    for tree in (g for g in graphs.enumerate_graphs(n, 0) if g.excess() == 0):
        depths = _tree_kernel_depths(tree.edges, D)
        term = None
        for I in tree.edges:
            e = _edge_genus0(ev, I, depth=depths.get(I))
            term = e if term is None else term * e
        term = ev.prune_w(term)
        val = tree.valencies()
        by_val[val] = term if val not in by_val else by_val[val] + term
    total = None
    for val, term in by_val.items():
        for i in range(n):
            term = ev.prune_w(_apply_genus0_vertex(ev, term, i, val[i] - 1))
        total = term if total is None else total + term
    S = ev.reexpand(total)
    return ev.extract_table(S, 0)


def _binom_factor(k: int, r: int, sign: int) -> Fraction:
    """k!/(k-r)! forward (zero past r = k), (-1)^r (r+k-1)!/(k-1)! dual."""
    if sign > 0:
        if r > k:
            return Fraction(0)
        return Fraction(factorial(k), factorial(k - r))
    return Fraction((-1) ** r * factorial(r + k - 1), factorial(k - 1))


def _leaf_vectors(n: int, total: int):
    def rec(i, rem):
        if i == n:
            yield ()
            return
        for l in range(rem + 1):
            for rest in rec(i + 1, rem - l):
                yield (l,) + rest

    return rec(0, total)


def genus0_moment_coefficient(table: CoefficientTable, ks: tuple[int, ...], sign: int = 1) -> Fraction:
    """Coefficient-wise genus-0 relation over trees with univalent leaves:

        F_{0;k} = [prod w^k] sum_r prod_i binom-factor(k_i, r_i)
                  sum_{T in T_n(r+1)} prod'' G_{0,#I} / prod_i leaves_i!,

    with factor k!/(k-r)! forward and (-1)^r (r+k-1)!/(k-1)! dual; each
    leaf carries one factor (G_{0,1} - 1) of valuation >= 1, so leaves
    beyond total degree sum(k) never contribute."""
    n = len(ks)
    D = sum(ks)
    ev = Evaluator(table, n, D, K=2, sign=sign)
    one = {i: ev.C(i) - Series.const((ev.wvars[i],), 1, ev.cap) for i in range(n)}
    base_trees = (
        [(graphs.Graph(1, ()), (0,))]
        if n == 1
        else [(g, g.valencies()) for g in graphs.enumerate_graphs(n, 0) if g.excess() == 0]
    )
    total = Fraction(0)
    for base, baseval in base_trees:
        base_term = None
        for I in base.edges:
            e = _edge_genus0(ev, I)
            base_term = e if base_term is None else base_term * e
        for leaves in _leaf_vectors(n, D):
            if n == 1 and leaves[0] == 0:
                continue
            rvec = tuple(v + l - 1 for v, l in zip(baseval, leaves))
            factor = Fraction(1)
            for k, r in zip(ks, rvec):
                factor *= _binom_factor(k, r, sign)
                if factor == 0:
                    break
            if factor == 0:
                continue
            term = base_term
            aut = 1
            for i, li in enumerate(leaves):
                if li:
                    term = (one[i] ** li) if term is None else term * one[i] ** li
                    aut *= factorial(li)
            if term is None:
                continue
            coeff = term
            ok = True
            for i in range(n):
                wv = ev.wvars[i]
                if wv in coeff.vars:
                    coeff = coeff.coeff(wv, ks[i])
                elif ks[i] != 0:
                    ok = False
                    break
            if ok:
                total += factor * coeff.scalar() / aut
    return total


def genus0_coefficient_table(table: CoefficientTable, n: int, D: int, sign: int = 1) -> CoefficientTable:
    """All F_{0; k_1..k_n} with total degree <= D by the coefficient-wise
    tree relation.  The sum over univalent leaves is folded into one series
    product per base tree using marker variables, so each tree costs one
    product chain; the binomial factors (which depend on the target
    exponents) are applied during extraction.
    """
    ev = Evaluator(table, n, D, K=2, sign=sign)
    # leaf-weight matrices: W[v][k][a] = sum_l factor(k, v+l-1)/l! *
    # [w^(k-a)] (C-1)^l, contracting the whole leaf sum at white valency v
    one_pows: list[dict[int, Fraction]] = [{0: Fraction(1)}]
    one = ev.C(0) - Series.const((ev.wvars[0],), 1, ev.cap)
    onec = {e[0]: v for e, v in one.data.items()}
    maxdeg = (n + 1) * D
    for l in range(1, D + 1):
        prev = one_pows[-1]
        cur: dict[int, Fraction] = {}
        for e1, v1 in prev.items():
            for e2, v2 in onec.items():
                e = e1 + e2
                if e <= maxdeg:
                    cur[e] = cur.get(e, Fraction(0)) + v1 * v2
        one_pows.append(cur)

    def weight(v: int, k: int, a: int) -> Fraction:
        total = Fraction(0)
        for l in range(0, D + 1):
            r = v + l - 1
            f = _binom_factor(k, r, sign) if r >= 0 else Fraction(0)
            if f:
                c = one_pows[l].get(k - a)
                if c:
                    total += f * c / factorial(l)
        return total

    wcache: dict[tuple[int, int, int], Fraction] = {}

    def W(v: int, k: int, a: int) -> Fraction:
        key = (v, k, a)
        if key not in wcache:
            wcache[key] = weight(v, k, a)
        return wcache[key]

    base_trees = (
        [(graphs.Graph(1, ()), (0,))]
        if n == 1
        else [(g, g.valencies()) for g in graphs.enumerate_graphs(n, 0) if g.excess() == 0]
    )
    acc_by_k: dict[tuple[int, ...], Fraction] = {}
    for base, baseval in base_trees:
        depths = _tree_kernel_depths(base.edges, D)
        term = None
        for I in base.edges:
            e = _edge_genus0(ev, I, depth=depths.get(I))
            term = e if term is None else term * e
        if term is None:
            term = Series.const(ev.wvars, 1, ev.cap)
        term = ev.prune_w(term.with_vars(ev.wvars))
        idxs = [term.idx(v) for v in ev.wvars]
        # sequential tensor contraction: replace one a_i axis by the k_i
        # axis at a time, weighting with W(v_i, k_i, a_i)
        state: dict[tuple, Fraction] = {
            tuple(e[j] for j in idxs): v for e, v in term.data.items()
        }
        for i in range(n):
            nxt: dict[tuple, Fraction] = {}
            for key, val in state.items():
                a = key[i]
                kmin = max(1, a)
                kmax = D - sum(x for x in key[:i]) - (n - 1 - i)
                for k in range(kmin, kmax + 1):
                    wgt = W(baseval[i], k, a)
                    if wgt:
                        nk = key[:i] + (k,) + key[i + 1 :]
                        nv = nxt.get(nk)
                        nxt[nk] = wgt * val if nv is None else nv + wgt * val
            state = nxt
        for ks, v in state.items():
            acc_by_k[ks] = acc_by_k.get(ks, Fraction(0)) + v
    for ks in _compositions(n, D):
        acc_by_k.setdefault(ks, Fraction(0))
    out: CoefficientTable = {}
    grouped: dict[tuple, set] = {}
    for ks, v in acc_by_k.items():
        grouped.setdefault(sort_to_partition(ks), set()).add(v)
    for key, vals in grouped.items():
        if len(vals) != 1:
            raise AssertionError("asymmetric coefficient route at %r" % (key,))
        v = next(iter(vals))
        if v:
            out[(0, key)] = v
    return out


def _compositions(n: int, D: int):
    """Ordered tuples of n positive integers with total <= D."""

    def rec(i, rem):
        if i == n:
            yield ()
            return
        for k in range(1, rem - (n - 1 - i) + 1):
            for rest in rec(i + 1, rem - k):
                yield (k,) + rest

    return list(rec(0, D))


def allgenus_moments(table: CoefficientTable, n: int, g2: int, D: int, sign: int = 1) -> CoefficientTable:
    """The all-genus graph relation for one (g, n) target; g2 is the
    doubled genus.  Covers half-integer genus via odd hbar gradings."""
    if (g2, n) == (0, 1):
        return genus0_moments(table, 1, D, sign)
    T_target = g2 - 2 + n
    if T_target < 0:
        raise ValueError("no hbar^%d sector" % T_target)
    K = T_target + n + 2
    ev = Evaluator(table, n, D, K=K, sign=sign)
    total = None
    for g in graphs.enumerate_graphs(n, g2 // 2):
        term = ev.graph_term(g)
        total = term if total is None else total + term
    S = total.coeff("h", T_target)
    if n == 1:
        S = S + ev.delta_series(g2)
    S = ev.reexpand(S)
    if (g2, n) == (0, 2):
        S = S - ev.x_kernel(0, 1)
    return ev.extract_table(S, g2)


def half_genus_moments_special_trees(table: CoefficientTable, n: int, D: int) -> CoefficientTable:
    """Genus-1/2 functional relation via trees with one special black
    vertex (which may be univalent): the special hyperedge carries the
    genus-1/2 cumulant series, all others the genus-0 ones."""
    ev = Evaluator(table, n, D, K=2)
    total = None
    maxval = n + 1
    for val in _valency_vectors(n, maxval):
        for tree in graphs.enumerate_special_trees(n, val):
            sp = tree.edges[0]
            term = _edge_genus0(ev, sp, g2=1, shifted=False)
            for I in tree.edges[1:]:
                term = term * _edge_genus0(ev, I)
            term = ev.prune_w(term)
            for i in range(n):
                term = ev.prune_w(_apply_genus0_vertex(ev, term, i, val[i] - 1))
            total = term if total is None else total + term
    if total is None:
        return {}
    S = ev.reexpand(total)
    return ev.extract_table(S, 1)


def half_genus_moment_coefficient(table: CoefficientTable, ks: tuple[int, ...]) -> Fraction:
    """Coefficient-wise genus-1/2 relation over special trees with leaves."""
    n = len(ks)
    D = sum(ks)
    ev = Evaluator(table, n, D, K=2)
    one = {i: ev.C(i) - Series.const((ev.wvars[i],), 1, ev.cap) for i in range(n)}
    specials = []
    for val in _valency_vectors(n, n + 1):
        specials.extend((g, g.valencies()) for g in graphs.enumerate_special_trees(n, val))
    total = Fraction(0)
    for base, baseval in specials:
        sp = base.edges[0]
        base_term = _edge_genus0(ev, sp, g2=1, shifted=False)
        for I in base.edges[1:]:
            base_term = base_term * _edge_genus0(ev, I)
        for leaves in _leaf_vectors(n, D):
            rvec = tuple(v + l - 1 for v, l in zip(baseval, leaves))
            factor = Fraction(1)
            for k, r in zip(ks, rvec):
                factor *= _binom_factor(k, r, 1)
                if factor == 0:
                    break
            if factor == 0:
                continue
            term = base_term
            aut = 1
            for i, li in enumerate(leaves):
                if li:
                    term = term * one[i] ** li
                    aut *= factorial(li)
            coeff = term
            ok = True
            for i in range(n):
                wv = ev.wvars[i]
                if wv in coeff.vars:
                    coeff = coeff.coeff(wv, ks[i])
                elif ks[i] != 0:
                    ok = False
                    break
            if ok:
                total += factor * coeff.scalar() / aut
    return total


def _valency_vectors(n: int, maxval: int):
    def rec(i):
        if i == n:
            yield ()
            return
        for v in range(1, maxval + 1):
            for rest in rec(i + 1):
                yield (v,) + rest

    return rec(0)


# ---------------------------------------------------------------------------
# specialized closed-form cross-checks


def specialized_03(table: CoefficientTable, D: int) -> CoefficientTable:
    """Closed form of the three-point genus-0 relation (the four-tree sum
    written out): star term plus, for each centre i,

        prod_{j != i} P(w_j) * (P w_i d/dw_i)[ (P/C)(w_i)
                                  prod_{j != i} Gt_{0,2}(w_i, w_j) ]."""
    ev = Evaluator(table, 3, D, K=2)
    P = [ev.P(i) for i in range(3)]
    total = ev.prune_w(P[0] * P[1] * P[2] * _edge_genus0(ev, (0, 1, 2)))
    for i in range(3):
        others = [j for j in range(3) if j != i]
        prod = None
        for j in others:
            pair = tuple(sorted((i, j)))
            e = _edge_genus0(ev, pair)
            prod = e if prod is None else prod * e
        inner = ev.P(i) * ev.invC(i) * ev.prune_w(prod)
        term = ev.pwd(inner, i, 1)
        for j in others:
            term = term * P[j]
        total = total + ev.prune_w(term)
    S = ev.reexpand(total)
    return ev.extract_table(S, 0)


def specialized_11(table: CoefficientTable, D: int) -> CoefficientTable:
    """Closed five-term form of the (1,1) relation."""
    ev = Evaluator(table, 1, D, K=4)
    w = ev.wvars[0]
    C = ev.C(0)
    P = ev.P(0)
    invC = ev.invC(0)
    one24 = Fraction(1, 24)
    # G_{1,1} cumulant series
    g11 = ev._w_atom(0, {k: table_get(ev.table, 2, (k,)) for k in range(1, D + 1)})
    # G_{0,2}(w, w): diagonal restriction
    diag = {}
    for (g2, ks), val in ev.table.items():
        if g2 == 0 and len(ks) == 2 and sum(ks) <= D:
            for comp in _distinct_permutations(ks):
                e = comp[0] + comp[1]
                diag[e] = diag.get(e, Fraction(0)) + val
    g02diag = ev._w_atom(0, diag)

    t1 = P * g11
    t2 = ev.pwd(P * invC, 0, 1) * (-one24)
    inner3 = P * invC * invC * C.wdw(w).wdw(w)
    t3 = (ev.pwd(ev.pwd(inner3, 0, 1) - inner3, 0, 1)) * one24
    t4 = ev.pwd(P * invC * g02diag, 0, 1) * Fraction(1, 2)
    inner5 = P * C.wdw(w) * invC * invC
    t5 = (ev.pwd(inner5, 0, 2) - inner5) * (-one24)
    S = ev.reexpand(t1 + t2 + t3 + t4 + t5)
    return ev.extract_table(S, 2)
