"""Deterministic random samplers shared by the test suites and the CLI.

All exact samplers draw small-height Gaussian rationals so fraction growth
stays bounded; souls are short combinations of low-degree Grassmann
monomials.  Every function takes an explicit ``random.Random``.
"""
from __future__ import annotations

import cmath
import random
from fractions import Fraction

from .grassmann import EXACT, FLOAT, QQi, GrassmannElement
from .osp import OSpElement, compose_general
from .superlinalg import SuperVector

DEFAULT_SEED = 0xF2C3


def rand_fraction(rng: random.Random, height: int = 7, nonzero=False) -> Fraction:
    while True:
        f = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if f or not nonzero:
            return f


def rand_qqi(rng, height=7, nonzero=False, imaginary=False) -> QQi:
    while True:
        im = rand_fraction(rng, height) if imaginary and rng.random() < 0.3 else 0
        q = QQi(rand_fraction(rng, height), im)
        if q or not nonzero:
            return q


def rand_odd_soul(rng, n, max_gen=None, terms=2) -> GrassmannElement:
    """Random odd element: a short combination of single generators."""
    max_gen = max_gen or n
    out = GrassmannElement.zero(n, EXACT)
    for _ in range(terms):
        i = rng.randint(1, max_gen)
        out = out + GrassmannElement.theta(i, n) * rand_qqi(rng, 5)
    return out


def rand_even_soul(rng, n, max_gen=None, terms=1) -> GrassmannElement:
    """Random nilpotent even element built from generator pairs."""
    max_gen = max_gen or n
    out = GrassmannElement.zero(n, EXACT)
    for _ in range(terms):
        i = rng.randint(1, max_gen - 1)
        j = rng.randint(i + 1, max_gen)
        out = out + GrassmannElement.monomial(rand_qqi(rng, 5), [i, j], n)
    return out


def rand_sl2_params(rng, height=5):
    """Exact (a, b, c, d) with ad - bc = 1 and a invertible."""
    a = rand_qqi(rng, height, nonzero=True)
    b = rand_qqi(rng, height)
    c = rand_qqi(rng, height)
    d = (QQi(1) + b * c) / a
    return a, b, c, d


def rand_osp(rng, n=8, max_gen=None, odd_terms=2) -> OSpElement:
    """Random exact OSp(1|2) element in provenance form."""
    a, b, c, d = rand_sl2_params(rng)
    gamma = rand_odd_soul(rng, n, max_gen=max_gen, terms=odd_terms)
    delta = rand_odd_soul(rng, n, max_gen=max_gen, terms=odd_terms)
    return compose_general(a, b, c, d, gamma, delta, n=n, mode=EXACT)


def rand_sl2_complex(rng) -> list:
    """Random SL(2, C) matrix with entries of moderate size (float)."""
    while True:
        a = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        b = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        c = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        if abs(a) < 0.2:
            continue
        d = (1 + b * c) / a
        m = [[a, b], [c, d]]
        tr = a + d
        if abs(tr * tr - 4) > 0.05:
            return m


def rand_unipotent_pair_complex(rng):
    """(A, B) with A a random conjugate of a unipotent matrix."""
    sigma = rng.choice([1.0, -1.0])
    u = [[sigma, sigma * rng.uniform(0.5, 2.0)], [0j, sigma]]
    g = rand_sl2_complex(rng)
    from .normalform import _m2conj  # local import to avoid a cycle at import time

    return _m2conj(g, u), rand_sl2_complex(rng)


def rand_vector_graded(rng, n, max_gen=None, flipped=False) -> SuperVector:
    """A graded point of the (2|1) module, or of its parity flip.

    Standard typing has components (even, even, odd); the flipped typing
    (odd, odd, even) is the natural point of the 1|2-dimensional module in
    the same coordinates.
    """
    even = lambda: GrassmannElement.scalar(rand_qqi(rng, 5), n) + rand_even_soul(
        rng, n, max_gen=max_gen
    )
    odd = lambda: rand_odd_soul(rng, n, max_gen=max_gen)
    if flipped:
        return SuperVector([odd(), odd(), even()])
    return SuperVector([even(), even(), odd()])


def rand_vector_free(rng, n, max_gen=None, souls=True) -> SuperVector:
    """A point of the free rank-3 module: inhomogeneous components."""
    def comp():
        e = GrassmannElement.scalar(rand_qqi(rng, 5), n)
        if souls:
            e = e + rand_even_soul(rng, n, max_gen=max_gen)
            e = e + rand_odd_soul(rng, n, max_gen=max_gen, terms=1)
        return e

    return SuperVector([comp(), comp(), comp()])
