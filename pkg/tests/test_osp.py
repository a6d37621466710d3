import random
from fractions import Fraction

import pytest

from ospchar.errors import DeterminantError, MembershipError, ParityError
from ospchar.grassmann import EXACT, GrassmannElement, QQi
from ospchar.osp import (
    OSpElement,
    check_membership,
    compose_general,
    exp_odd,
    from_sl2,
    inverse,
    membership_residuals,
    reduce_body,
    z2_flip,
)
from ospchar.sampling import rand_odd_soul, rand_osp, rand_sl2_params
from ospchar.superlinalg import SuperMatrix, smul, supertrace

N = 8


def test_from_sl2_examples():
    ident = from_sl2(1, 0, 0, 1, n=N)
    assert ident.matrix == SuperMatrix.identity(N)
    u = from_sl2(1, 1, 0, 1, n=N)
    assert u.matrix == SuperMatrix.from_scalar_rows(
        [[1, 1, 0], [0, 1, 0], [0, 0, 1]], N, parity="even"
    )
    d = from_sl2(2, 0, 0, Fraction(1, 2), n=N)
    ok, bad = check_membership(d.matrix)
    assert ok, bad
    with pytest.raises(DeterminantError):
        from_sl2(2, 0, 0, 2, n=N)


def test_exp_odd_series():
    zero = GrassmannElement.zero(N)
    assert exp_odd(zero, zero).matrix == SuperMatrix.identity(N)

    xi = GrassmannElement.theta(1, N)
    e = exp_odd(xi, zero)
    q1 = SuperMatrix.from_scalar_rows([[0, 0, 1], [0, 0, 0], [0, -1, 0]], N)
    want = SuperMatrix.identity(N) + SuperMatrix(
        [[xi * v for v in row] for row in q1.entries]
    )
    assert e.matrix == want

    # generic power-series oracle, truncated by nilpotency
    g1, g2 = GrassmannElement.theta(1, N), GrassmannElement.theta(2, N)
    q2 = SuperMatrix.from_scalar_rows([[0, 0, 0], [0, 0, 1], [1, 0, 0]], N)
    m = SuperMatrix(
        [[g1 * q1.entries[i][j] + g2 * q2.entries[i][j] for j in range(3)]
         for i in range(3)]
    )
    series = SuperMatrix.identity(N)
    term = SuperMatrix.identity(N)
    fact = Fraction(1)
    for k in range(1, 8):
        fact /= k
        term = smul(term, m)
        series = series + term.scale(fact)
    assert exp_odd(g1, g2).matrix == series

    with pytest.raises(ParityError):
        exp_odd(GrassmannElement.one(N), zero)


def test_stanford_witten_parametrization():
    # bosonic upper-triangular part times exp(xi q1), with 2 standing in
    # for e^a and 5 for the off-diagonal coordinate
    xi = GrassmannElement.theta(1, N)
    u = compose_general(2, 5, 0, Fraction(1, 2), xi, GrassmannElement.zero(N))
    ea = GrassmannElement.scalar(2, N)
    want = smul(
        from_sl2(2, 5, 0, Fraction(1, 2), n=N).matrix,
        exp_odd(xi, GrassmannElement.zero(N)).matrix,
    )
    assert u.matrix == want
    assert u.matrix[0, 2] == ea * xi
    assert u.matrix[2, 1] == -xi
    ok, bad = check_membership(u.matrix)
    assert ok, bad


def test_compose_general_membership_and_relations():
    rng = random.Random(5)
    for _ in range(20):
        g = rand_osp(rng, n=N)
        for name, resid in membership_residuals(g.matrix):
            assert resid.is_zero(), name


def test_displayed_inverse_on_independent_symbols():
    # fourteen independent symbols: even entries as generator pairs, odd
    # entries as single generators; the inverse formula is linear so this
    # certifies it for all matrices at once
    n = 14
    pair = lambda k: GrassmannElement.monomial(1, [2 * k + 1, 2 * k + 2], n)
    a, b, c, d, f = (pair(k) for k in range(5))
    al, be, ga, de = (GrassmannElement.theta(11 + k, n) for k in range(4))
    g = SuperMatrix([[a, b, al], [c, d, be], [ga, de, f]], parity="even")
    from ospchar.superlinalg import j_inverse, j_matrix, supertranspose

    got = smul(smul(j_inverse(n), supertranspose(g)), j_matrix(n))
    want = SuperMatrix([[d, -b, de], [-c, a, -ga], [-be, al, f]], parity="even")
    assert got == want


def test_inverse_examples():
    ident = from_sl2(1, 0, 0, 1, n=N)
    assert inverse(ident).matrix == SuperMatrix.identity(N)
    rng = random.Random(7)
    for _ in range(10):
        g = rand_osp(rng, n=N)
        assert smul(g.matrix, inverse(g).matrix) == SuperMatrix.identity(N)
        assert inverse(inverse(g)).matrix == g.matrix


def test_check_membership_diagnostics():
    ident = SuperMatrix.identity(N)
    ok, bad = check_membership(ident)
    assert ok and not bad
    # a lone odd entry with no compensation
    e = [list(row) for row in ident.entries]
    e[0][2] = GrassmannElement.theta(1, N)
    ok, bad = check_membership(SuperMatrix(e))
    assert not ok and bad
    with pytest.raises(MembershipError):
        OSpElement(SuperMatrix(e))


def test_f_relation_uses_the_inverse_form():
    # f = 1 - alpha*beta on elements with alpha*beta != 0; the naive
    # "f = 1 + alpha*beta" variant fails on them
    g1, g2 = GrassmannElement.theta(1, N), GrassmannElement.theta(2, N)
    g = exp_odd(g1, g2)
    alpha, beta, f = g.matrix[0, 2], g.matrix[1, 2], g.matrix[2, 2]
    one = GrassmannElement.one(N)
    assert f == one - alpha * beta
    assert f * (one + alpha * beta) == one
    assert f != one + alpha * beta


def test_reduce_body_examples():
    assert reduce_body(from_sl2(1, 0, 0, 1, n=N)) == [[QQi(1), QQi(0)], [QQi(0), QQi(1)]]
    g1, g2 = GrassmannElement.theta(1, N), GrassmannElement.theta(2, N)
    g = compose_general(2, 0, 0, Fraction(1, 2), g1, g2)
    assert reduce_body(g) == [[QQi(2), QQi(0)], [QQi(0), QQi(Fraction(1, 2))]]
    rng = random.Random(11)
    for _ in range(10):
        a, b = rand_osp(rng, n=N), rand_osp(rng, n=N)
        ra, rb = reduce_body(a), reduce_body(b)
        want = [
            [ra[0][0] * rb[0][0] + ra[0][1] * rb[1][0],
             ra[0][0] * rb[0][1] + ra[0][1] * rb[1][1]],
            [ra[1][0] * rb[0][0] + ra[1][1] * rb[1][0],
             ra[1][0] * rb[0][1] + ra[1][1] * rb[1][1]],
        ]
        assert reduce_body(a @ b) == want


def test_z2_flip_examples():
    ident = from_sl2(1, 0, 0, 1, n=N)
    assert z2_flip(ident).matrix == ident.matrix

    xi = GrassmannElement.theta(1, N)
    zero = GrassmannElement.zero(N)
    one = GrassmannElement.one(N)
    m = SuperMatrix(
        [[one, zero, xi], [zero, one, zero], [zero, -xi, one]], parity="even"
    )
    flip_mat = from_sl2(-1, 0, 0, -1, n=N).matrix
    conj = smul(smul(flip_mat, m), flip_mat)
    want = SuperMatrix(
        [[one, zero, -xi], [zero, one, zero], [zero, xi, one]], parity="even"
    )
    assert conj == want

    rng = random.Random(13)
    for _ in range(10):
        g = rand_osp(rng, n=N)
        assert z2_flip(z2_flip(g)).matrix == g.matrix
        assert supertrace(z2_flip(g).matrix) == supertrace(g.matrix)
        assert z2_flip(g).matrix == smul(smul(flip_mat, g.matrix), flip_mat)


def test_closure():
    rng = random.Random(17)
    for _ in range(10):
        g, h = rand_osp(rng, n=N), rand_osp(rng, n=N)
        ok, bad = check_membership((g @ h).matrix)
        assert ok, bad


def test_osp_json():
    rng = random.Random(19)
    g = rand_osp(rng, n=N)
    payload = g.to_json()
    assert "matrix" in payload and "provenance" in payload
    assert SuperMatrix.from_json(payload["matrix"], EXACT) == g.matrix
