import random
from fractions import Fraction


from freehop.operators import Evaluator, npoint_series, series_to_table
from freehop.series import Series, apply_diagonal, poly1, univariate_coeffs
from freehop.tables import gue_table, random_table
from freehop.transforms import _genus0_b_polys


def F(a, b=1):
    return Fraction(a, b)


def test_substitution_gue():
    ev = Evaluator(gue_table(), 1, 8, K=2)
    x = ev.x_of_w_coeffs()
    # X = w/(1+w^2) = w - w^3 + w^5 - ...
    assert x[1] == 1 and x[3] == -1 and x[5] == 1
    P = univariate_coeffs(ev.P(0), "w0")
    # P = (1+w^2)/(1-w^2) = 1 + 2w^2 + 2w^4 + ...
    assert P[0] == 1 and P[2] == 2 and P[4] == 2


def test_substitution_trivial():
    ev = Evaluator({}, 1, 6, K=2)
    assert ev.x_of_w_coeffs() == {1: F(1)}
    assert univariate_coeffs(ev.P(0), "w0") == {0: F(1)}


def test_p_is_dlog_inverse():
    # d ln X / d ln w * P == 1 to degree 12
    t = random_table(seed=1, nmax=1, degmax=13)
    ev = Evaluator(t, 1, 13, K=2)
    x = ev._w_atom(0, ev.x_of_w_coeffs())
    dlogX = x.wdw("w0").shift("w0", -1) * x.shift("w0", -1).inverse()
    prod = dlogX * ev.P(0)
    assert prod.data[(0,)] == 1
    assert all(v == 0 for e, v in prod.data.items() if 0 < e[0] <= 12)


def test_genus0_vertex_pieces():
    ev = Evaluator(gue_table(), 1, 6, K=2)
    # r = 0: only m = 0 with coefficient 1
    b0 = _genus0_b_polys(ev, 0)
    assert b0.data == {(0, 0): F(1)}
    # r = 1: (d_y + v/y) . 1 = v/y -> v t
    b1 = _genus0_b_polys(ev, 1)
    assert b1.data == {(1, 1): F(1)}
    # r = 2: (v^2 - v)/y^2
    b2 = _genus0_b_polys(ev, 2)
    assert b2.data == {(2, 2): F(1), (1, 2): F(-1)}


def test_apply_diagonal_eigenvector():
    # sigma-type diagonal action: w^3 picks eigenvalue at k = 3
    s = poly1("w", {3: F(1)})

    def eigen(k):
        return poly1("u", {k: F(1)})

    out = apply_diagonal(s, "w", eigen)
    assert out.data == {(3, 3): F(1)} and set(out.vars) == {"w", "u"}


def test_edge_weight_leading_order():
    # c(u_I, w_I) = hbar^{2#I-2} (prod u_i) Gt_{0,#I} + higher, for
    # off-diagonal I; spot the coefficient of the table part
    t = {(0, (1, 1)): F(5)}
    ev = Evaluator(t, 2, 4, K=4)
    c = ev.edge_weight((0, 1))
    ih = c.idx("h")
    iu0, iu1 = c.idx("u0"), c.idx("u1")
    iw0, iw1 = c.idx("w0"), c.idx("w1")
    val = {
        (e[iw0], e[iw1]): v
        for e, v in c.data.items()
        if e[ih] == 2 and e[iu0] == 1 and e[iu1] == 1 and e[iw0] > 0 and e[iw1] > 0
    }
    assert val == {(1, 1): F(5)}
    # kernel part sits at the same leading hbar order
    ker = {
        (e[iw0], e[iw1]): v
        for e, v in c.data.items()
        if e[ih] == 2 and e[iu0] == 1 and e[iu1] == 1 and e[iw1] < 0
    }
    assert ker[(1, -1)] == 1 and ker[(3, -3)] == 3


def test_edge_weight_kernel_only():
    ev = Evaluator({}, 2, 3, K=3)
    c = ev.edge_weight((0, 1))
    assert not c.is_zero()
    iw1 = c.idx("w1")
    assert all(e[iw1] < 0 for e in c.data)


def test_edge_weight_diagonal():
    # I = {j,j} with F_{0;1,1} = 1: lowest order hbar^2 u^2 w^2 with
    # per-slot sigma factors
    t = {(0, (1, 1)): F(1)}
    ev = Evaluator(t, 1, 4, K=4)
    c = ev.edge_weight((0, 0))
    ih, iu, iw = c.idx("h"), c.idx("u0"), c.idx("w0")
    low = {e: v for e, v in c.data.items() if e[ih] == 2}
    assert low == {tuple(2 if i in (ih, iu, iw) else 0 for i in range(len(c.vars))): F(1)}


def test_npoint_series_builders():
    # empty table, n = 1, genus 0: the conventional constant 1
    s = npoint_series({}, 0, ("w0",), 6)
    assert s.data == {(0,): F(1)}
    # table {F_{0;2} = 1} gives 1 + w^2
    s2 = npoint_series({(0, (2,)): F(1)}, 0, ("w0",), 6)
    assert s2.data == {(0,): F(1), (2,): F(1)}
    # round trip on random symmetric tables
    rng = random.Random(3)
    t = {}
    for ks in [(1, 1), (2, 1), (3, 2), (2, 2)]:
        t[(0, ks)] = F(rng.randint(1, 9))
    s3 = npoint_series(t, 0, ("w0", "w1"), 5)
    assert series_to_table(s3, 0, ("w0", "w1"), 5) == t


def test_vertex_operator_full_genus0_reduction():
    # the hbar^0-order of the full vertex weight applied to a u-monomial
    # reproduces the genus-0 operator piece O_r at r = degree - 1
    t = random_table(seed=9, nmax=1, degmax=4)
    ev = Evaluator(t, 1, 4, K=4)
    from freehop.series import INF

    for r in (0, 1, 2):
        probe = Series(("h", "u0"), (2, r + 1), (ev.K, INF), {(2, r + 1): F(1)})
        got = ev.reduce_vertex(probe, 0).coeff("h", 1)
        b = _genus0_b_polys(ev, r).substitute("t", ev.invC(0))
        want = None
        vparts = b.coeff_dict("v")
        for m, part in vparts.items():
            term = ev.pwd(ev.P(0) * part, 0, m)
            want = term if want is None else want + term
        diff = got - want
        assert all(v == 0 for v in diff.data.values())
