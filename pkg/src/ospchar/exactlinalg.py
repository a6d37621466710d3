"""Exact linear algebra over Gaussian rationals for the relation census."""
from __future__ import annotations

from fractions import Fraction
from math import gcd

from .grassmann import QQi


def _row_primitive(row):
    """Scale a row to Gaussian integers divided by their content."""
    denom = 1
    for c in row:
        denom = denom * c.re.denominator // gcd(denom, c.re.denominator)
        denom = denom * c.im.denominator // gcd(denom, c.im.denominator)
    ints = []
    content = 0
    for c in row:
        re = c.re.numerator * (denom // c.re.denominator)
        im = c.im.numerator * (denom // c.im.denominator)
        ints.append((re, im))
        content = gcd(content, gcd(abs(re), abs(im)))
    if content > 1:
        ints = [(re // content, im // content) for re, im in ints]
    return [QQi(re, im) for re, im in ints]


class KernelAccumulator:
    """Running intersection of kernels of linear constraints on Q(i)^m.

    Starts from the full space and cuts it down one constraint (column of
    the evaluation matrix) at a time; each surviving basis vector is kept in
    primitive Gaussian-integer form so growth stays bounded.  This is the
    workhorse of the relation census: the number of constraints is large but
    the dimension collapses quickly, making per-constraint updates cheap.
    """

    def __init__(self, m: int):
        self.m = m
        self.basis = [
            [QQi(1) if j == i else QQi() for j in range(m)] for i in range(m)
        ]

    @property
    def dimension(self):
        return len(self.basis)

    def feed(self, column):
        if not self.basis:
            return
        dots = []
        for vec in self.basis:
            acc = QQi()
            for a, b in zip(vec, column):
                if a and b:
                    acc = acc + a * b
            dots.append(acc)
        pivot = next((i for i, d in enumerate(dots) if d), None)
        if pivot is None:
            return
        pvec, pdot = self.basis[pivot], dots[pivot]
        new_basis = []
        for i, (vec, d) in enumerate(zip(self.basis, dots)):
            if i == pivot:
                continue
            if d:
                f = d / pdot
                vec = _row_primitive([a - f * b for a, b in zip(vec, pvec)])
            new_basis.append(vec)
        self.basis = new_basis


def kernel_basis(rows):
    """Basis of the left kernel of the matrix whose rows are given."""
    m = len(rows)
    if m == 0:
        return []
    acc = KernelAccumulator(m)
    for column in zip(*rows):
        acc.feed(list(column))
        if not acc.basis:
            break
    return acc.basis


def rref(rows):
    """Reduced row echelon form with unit pivots, rows sorted by pivot.

    A canonical representative of the row span, used to compare census
    kernels across seeds and generator budgets.
    """
    work = [list(r) for r in rows if any(r)]
    width = len(work[0]) if work else 0
    pivots = []
    row_at = 0
    for col in range(width):
        pivot = None
        for i in range(row_at, len(work)):
            if work[i][col]:
                pivot = i
                break
        if pivot is None:
            continue
        work[row_at], work[pivot] = work[pivot], work[row_at]
        pv = work[row_at][col]
        work[row_at] = [c / pv for c in work[row_at]]
        for i in range(len(work)):
            if i != row_at and work[i][col]:
                f = work[i][col]
                work[i] = [a - f * b for a, b in zip(work[i], work[row_at])]
        pivots.append(col)
        row_at += 1
    return work[:row_at]


def in_span(vector, basis):
    """Whether an exact vector lies in the span of the basis rows."""
    if not basis:
        return all(not c for c in vector)
    rows = [list(r) for r in basis]
    v = list(vector)
    width = len(v)
    used = [False] * len(rows)
    for col in range(width):
        pivot = None
        for i, r in enumerate(rows):
            if not used[i] and r[col]:
                pivot = i
                break
        if pivot is None:
            continue
        used[pivot] = True
        p = rows[pivot][col]
        for i, r in enumerate(rows):
            if i != pivot and r[col]:
                f = r[col] / p
                rows[i] = [a - f * b for a, b in zip(r, rows[pivot])]
        if v[col]:
            f = v[col] / p
            v = [a - f * b for a, b in zip(v, rows[pivot])]
    return all(not c for c in v)
