import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ospchar.errors import (
    DomainError,
    ExactnessError,
    ModeMismatchError,
    ZeroBodyError,
)
from ospchar.grassmann import (
    EXACT,
    FLOAT,
    GrassmannElement,
    QQi,
    analytic_apply,
    body,
    gadd,
    ginv,
    gmul,
    soul,
)

N = 6


def theta(i, n=N):
    return GrassmannElement.theta(i, n)


def scalar(v, n=N):
    return GrassmannElement.scalar(v, n)


# -- strategies for exact elements -----------------------------------------

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
masks = st.integers(min_value=0, max_value=(1 << N) - 1)


@st.composite
def elements(draw, parity=None):
    terms = {}
    for _ in range(draw(st.integers(0, 4))):
        m = draw(masks)
        if parity is not None and m.bit_count() % 2 != parity:
            continue
        terms[m] = QQi(draw(coeffs), draw(coeffs))
    return GrassmannElement(N, EXACT, terms)


# -- examples ----------------------------------------------------------------


def test_gadd_examples():
    assert gadd(theta(1), theta(1)) == theta(1) * 2
    assert gadd(theta(1), -theta(1)).is_zero()
    x = scalar(1) + theta(1) * theta(2)
    assert gadd(scalar(1), theta(1) * theta(2)) == x


def test_gmul_sign_convention():
    assert gmul(theta(1), theta(2)) == GrassmannElement.monomial(1, [1, 2], N)
    assert gmul(theta(2), theta(1)) == GrassmannElement.monomial(-1, [1, 2], N)
    assert gmul(theta(1), theta(1)).is_zero()


def test_body_soul_examples():
    x = scalar(3) + theta(1) * theta(2)
    assert body(x) == QQi(3)
    assert soul(x) == theta(1) * theta(2)
    assert body(theta(1)) == QQi(0)
    assert x == scalar(body(x).re) + soul(x)


def test_ginv_examples():
    one = GrassmannElement.one(N)
    assert ginv(one) == one
    n12 = theta(1) * theta(2)
    assert ginv(one + n12) == one - n12
    x = scalar(2) + theta(1)
    want = scalar(Fraction(1, 2)) - theta(1) * Fraction(1, 4)
    assert ginv(x) == want
    assert gmul(x, ginv(x)) == one


def test_ginv_zero_body_raises():
    with pytest.raises(ZeroBodyError):
        ginv(theta(1))


def test_mode_and_size_mixing_rejected():
    f = GrassmannElement.scalar(1.0, N, FLOAT)
    with pytest.raises(ModeMismatchError):
        gadd(scalar(1), f)
    with pytest.raises(ModeMismatchError):
        gmul(theta(1), GrassmannElement.theta(1, N + 1))


def test_analytic_exp():
    assert analytic_apply("exp", theta(1)) == GrassmannElement.one(N) + theta(1)
    assert analytic_apply("exp", GrassmannElement.zero(N)) == GrassmannElement.one(N)
    with pytest.raises(ExactnessError):
        analytic_apply("exp", scalar(1))


def test_analytic_sqrt():
    x = GrassmannElement.one(N) + theta(1) * theta(2)
    r = analytic_apply("sqrt", x)
    assert r == GrassmannElement.one(N) + theta(1) * theta(2) * Fraction(1, 2)
    assert gmul(r, r) == x
    with pytest.raises(DomainError):
        analytic_apply("sqrt", theta(1))
    with pytest.raises(ExactnessError):
        analytic_apply("sqrt", scalar(2))


def test_analytic_float_mode():
    x = GrassmannElement.scalar(2.0, N, FLOAT) + GrassmannElement.theta(1, N, FLOAT)
    r = analytic_apply("sqrt", x)
    assert (gmul(r, r) - x).max_abs_coeff() < 1e-12
    e = analytic_apply("exp", GrassmannElement.theta(1, N, FLOAT))
    assert (e - (GrassmannElement.one(N, FLOAT) + GrassmannElement.theta(1, N, FLOAT))).max_abs_coeff() < 1e-12


def test_analytic_power_and_reciprocal():
    x = scalar(2) + theta(1) * theta(2)
    assert analytic_apply("power", x, power=3) == x * x * x
    assert analytic_apply("reciprocal", x) == ginv(x)


# -- algebra laws ------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(elements(), elements(), elements())
def test_associativity_distributivity(x, y, z):
    assert gmul(gmul(x, y), z) == gmul(x, gmul(y, z))
    assert gmul(x, gadd(y, z)) == gadd(gmul(x, y), gmul(x, z))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 1), st.integers(0, 1), st.data())
def test_supercommutativity(p, q, data):
    x = data.draw(elements(parity=p))
    y = data.draw(elements(parity=q))
    sign = -1 if p and q else 1
    assert gmul(x, y) == gmul(y, x) * sign


@settings(max_examples=40, deadline=None)
@given(elements())
def test_soul_nilpotency(x):
    p = GrassmannElement.one(N)
    for _ in range(N + 1):
        p = gmul(p, soul(x))
    assert p.is_zero()


@settings(max_examples=40, deadline=None)
@given(elements())
def test_ginv_roundtrip(x):
    x = x + scalar(1)  # force an invertible body away from zero
    if not x.body():
        x = x + scalar(1)
    assert gmul(x, ginv(x)) == GrassmannElement.one(N)


def test_parity_split():
    x = scalar(2) + theta(1) + theta(1) * theta(2) + theta(3)
    assert x.even_part() + x.odd_part() == x
    assert x.even_part().is_even() and x.odd_part().is_odd()


def test_json_roundtrip():
    x = scalar(QQi(Fraction(3, 7), Fraction(-1, 2))) + theta(2) * theta(5) * Fraction(2, 3)
    assert GrassmannElement.from_json(x.to_json(), EXACT) == x
    f = x.to_float()
    assert GrassmannElement.from_json(f.to_json(), FLOAT) == f


def test_qqi_sqrt():
    assert QQi(Fraction(9, 4)).sqrt() == QQi(Fraction(3, 2))
    assert QQi(-4).sqrt() == QQi(0, 2)
    z = QQi(0, 2).sqrt()
    assert z * z == QQi(0, 2)
    assert QQi(2).sqrt() is None
