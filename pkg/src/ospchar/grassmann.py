"""Arithmetic in the complex Grassmann algebra on N anticommuting generators.

Elements are stored canonically as a map from generator subsets (bitmasks) to
nonzero coefficients.  Two coefficient modes are supported and never mixed:

* ``exact``  -- Gaussian rationals (pairs of ``fractions.Fraction``),
* ``float``  -- complex doubles.

The soul (nonconstant part) of every element is nilpotent, which is what makes
inverses, analytic functions and Newton lifting terminate exactly.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction

from .errors import (
    DomainError,
    ExactnessError,
    ModeMismatchError,
    ZeroBodyError,
)

EXACT = "exact"
FLOAT = "float"

MAX_GENERATORS = 16


def _frac_sqrt(f: Fraction):
    """Exact square root of a nonnegative Fraction, or None."""
    if f < 0:
        return None
    pn, pd = f.numerator, f.denominator
    rn, rd = math.isqrt(pn), math.isqrt(pd)
    if rn * rn == pn and rd * rd == pd:
        return Fraction(rn, rd)
    return None


class QQi:
    """A Gaussian rational re + im*i with exact Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        # fast path: arithmetic results pass Fractions straight through
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    def __add__(self, other):
        other = _as_qqi(other)
        return QQi(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_qqi(other)
        return QQi(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _as_qqi(other) - self

    def __mul__(self, other):
        other = _as_qqi(other)
        return QQi(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_qqi(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return QQi(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        return _as_qqi(other) / self

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __pow__(self, k: int):
        if k < 0:
            return QQi(1) / self ** (-k)
        out = QQi(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (QQi, int, Fraction)):
            other = _as_qqi(other)
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def conjugate(self):
        return QQi(self.re, -self.im)

    def norm_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def sqrt(self):
        """Exact square root with re > 0 (or re == 0, im >= 0), or None."""
        if self.im == 0:
            r = _frac_sqrt(self.re)
            if r is not None:
                return QQi(r, 0)
            r = _frac_sqrt(-self.re)
            if r is not None:
                return QQi(0, r)
            return None
        n = _frac_sqrt(self.norm_sq())
        if n is None:
            return None
        re = _frac_sqrt((self.re + n) / 2)
        if re is None or re == 0:
            return None
        im = self.im / (2 * re)
        cand = QQi(re, im)
        return cand if cand * cand == self else None

    def to_complex(self) -> complex:
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


def _as_qqi(value) -> QQi:
    if isinstance(value, QQi):
        return value
    if isinstance(value, (int, Fraction)):
        return QQi(value, 0)
    raise ModeMismatchError(f"cannot use {value!r} as an exact scalar")


def as_coeff(value, mode):
    """Coerce a number into the coefficient type of the given mode."""
    if mode == EXACT:
        return _as_qqi(value)
    if mode == FLOAT:
        if isinstance(value, QQi):
            raise ModeMismatchError("exact scalar used in float mode")
        return complex(value)
    raise ValueError(f"unknown mode {mode!r}")


def coeff_is_zero(c) -> bool:
    if isinstance(c, QQi):
        return not c
    return c == 0


def coeff_to_json(c):
    if isinstance(c, QQi):
        return {"re": str(c.re), "im": str(c.im)}
    return {"re": c.real, "im": c.imag}


def coeff_from_json(obj, mode):
    if mode == EXACT:
        return QQi(Fraction(obj["re"]), Fraction(obj["im"]))
    return complex(obj["re"], obj["im"])


def _inversion_sign(s_bits: int, t_bits: int) -> int:
    """Sign from moving the generators of t_bits past those of s_bits."""
    sign = 1
    t = t_bits
    while t:
        low = t & -t
        above = s_bits >> low.bit_length()
        if above.bit_count() & 1:
            sign = -sign
        t ^= low
    return sign


def _mask_indices(mask: int):
    """Ascending 1-based generator indices of a subset bitmask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def subset_sort_key(mask: int):
    """Canonical subset order: by size, then lexicographic index list."""
    return (mask.bit_count(), _mask_indices(mask))


class GrassmannElement:
    """An element of the Grassmann algebra on ``n`` generators.

    ``terms`` maps a subset bitmask (bit i-1 <-> generator i) to a nonzero
    coefficient.  Instances are immutable; all operations return new elements.
    """

    __slots__ = ("n", "mode", "terms")

    def __init__(self, n: int, mode: str, terms: dict | None = None):
        if not 1 <= n <= MAX_GENERATORS:
            raise ValueError(f"generator count must be in 1..{MAX_GENERATORS}, got {n}")
        if mode not in (EXACT, FLOAT):
            raise ValueError(f"unknown mode {mode!r}")
        self.n = n
        self.mode = mode
        clean = {}
        if terms:
            for mask, c in terms.items():
                if mask >> n:
                    raise ValueError(f"subset {mask:#x} uses generators beyond {n}")
                if not coeff_is_zero(c):
                    clean[mask] = c
        self.terms = clean

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, n, mode=EXACT):
        return cls(n, mode, {})

    @classmethod
    def one(cls, n, mode=EXACT):
        return cls(n, mode, {0: as_coeff(1, mode)})

    @classmethod
    def scalar(cls, value, n, mode=EXACT):
        return cls(n, mode, {0: as_coeff(value, mode)})

    @classmethod
    def theta(cls, i, n, mode=EXACT):
        """The i-th generator (1-based)."""
        if not 1 <= i <= n:
            raise ValueError(f"generator index {i} out of range 1..{n}")
        return cls(n, mode, {1 << (i - 1): as_coeff(1, mode)})

    @classmethod
    def monomial(cls, coeff, indices, n, mode=EXACT):
        """coeff * theta_{i1}...theta_{ik} for strictly ascending indices."""
        mask = 0
        prev = 0
        for i in indices:
            if not prev < i <= n:
                raise ValueError(f"indices must be strictly ascending in 1..{n}")
            mask |= 1 << (i - 1)
            prev = i
        return cls(n, mode, {mask: as_coeff(coeff, mode)})

    # -- structure ----------------------------------------------------

    def body(self):
        """Coefficient of the empty subset."""
        return self.terms.get(0, as_coeff(0, self.mode))

    def soul(self) -> "GrassmannElement":
        return GrassmannElement(
            self.n, self.mode, {m: c for m, c in self.terms.items() if m}
        )

    def even_part(self) -> "GrassmannElement":
        return GrassmannElement(
            self.n,
            self.mode,
            {m: c for m, c in self.terms.items() if not m.bit_count() & 1},
        )

    def odd_part(self) -> "GrassmannElement":
        return GrassmannElement(
            self.n,
            self.mode,
            {m: c for m, c in self.terms.items() if m.bit_count() & 1},
        )

    def parity(self):
        """0 for even, 1 for odd, None for mixed or zero."""
        if not self.terms:
            return None
        parities = {m.bit_count() & 1 for m in self.terms}
        return parities.pop() if len(parities) == 1 else None

    def is_zero(self) -> bool:
        return not self.terms

    def is_even(self) -> bool:
        return all(not m.bit_count() & 1 for m in self.terms)

    def is_odd(self) -> bool:
        return bool(self.terms) and all(m.bit_count() & 1 for m in self.terms)

    def max_abs_coeff(self) -> float:
        """Largest coefficient magnitude; used for float-mode residuals."""
        best = 0.0
        for c in self.terms.values():
            mag = math.sqrt(c.norm_sq()) if isinstance(c, QQi) else abs(c)
            best = max(best, float(mag))
        return best

    def embed(self, n_new: int) -> "GrassmannElement":
        """Reinterpret in a larger algebra with the same generators."""
        if n_new < self.n:
            raise ValueError("cannot embed into a smaller algebra")
        return GrassmannElement(n_new, self.mode, dict(self.terms))

    def to_float(self) -> "GrassmannElement":
        """Convert exact coefficients to complex doubles."""
        if self.mode == FLOAT:
            return self
        return GrassmannElement(
            self.n, FLOAT, {m: c.to_complex() for m, c in self.terms.items()}
        )

    def restrict(self, n_new: int) -> "GrassmannElement":
        """Drop back to a smaller algebra; fails if high generators occur."""
        for m in self.terms:
            if m >> n_new:
                raise ValueError("element uses generators beyond the target algebra")
        return GrassmannElement(n_new, self.mode, dict(self.terms))

    # -- arithmetic ---------------------------------------------------

    def _check_compatible(self, other):
        if not isinstance(other, GrassmannElement):
            raise TypeError(f"expected GrassmannElement, got {type(other).__name__}")
        if self.n != other.n:
            raise ModeMismatchError(
                f"generator count mismatch: {self.n} vs {other.n}"
            )
        if self.mode != other.mode:
            raise ModeMismatchError(f"mode mismatch: {self.mode} vs {other.mode}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, QQi, float, complex)):
            other = GrassmannElement.scalar(other, self.n, self.mode)
        self._check_compatible(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            acc = terms.get(m)
            terms[m] = c if acc is None else acc + c
        return GrassmannElement(self.n, self.mode, terms)

    __radd__ = __add__

    def __neg__(self):
        return GrassmannElement(self.n, self.mode, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, QQi, float, complex)):
            other = GrassmannElement.scalar(other, self.n, self.mode)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QQi, float, complex)):
            c = as_coeff(other, self.mode)
            return GrassmannElement(
                self.n, self.mode, {m: v * c for m, v in self.terms.items()}
            )
        self._check_compatible(other)
        terms = {}
        for ms, cs in self.terms.items():
            for mt, ct in other.terms.items():
                if ms & mt:
                    continue
                prod = cs * ct
                if _inversion_sign(ms, mt) < 0:
                    prod = -prod
                m = ms | mt
                acc = terms.get(m)
                terms[m] = prod if acc is None else acc + prod
        return GrassmannElement(self.n, self.mode, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QQi, float, complex)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        out = GrassmannElement.one(self.n, self.mode)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inv(self) -> "GrassmannElement":
        """Exact inverse: geometric series in the nilpotent soul."""
        b = self.body()
        if coeff_is_zero(b):
            raise ZeroBodyError("element with zero body is not invertible")
        binv = as_coeff(1, self.mode) / b
        s = self.soul() * (-binv)
        out = GrassmannElement.one(self.n, self.mode)
        power = GrassmannElement.one(self.n, self.mode)
        for _ in range(self.n):
            power = power * s
            if power.is_zero():
                break
            out = out + power
        return out * binv

    def __eq__(self, other):
        if not isinstance(other, GrassmannElement):
            return NotImplemented
        return (
            self.n == other.n and self.mode == other.mode and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.n, self.mode, frozenset(self.terms.items())))

    # -- io -------------------------------------------------------------

    def to_json(self):
        items = sorted(self.terms, key=subset_sort_key)
        return {
            "n": self.n,
            "terms": [
                {"idx": _mask_indices(m), **coeff_to_json(self.terms[m])}
                for m in items
            ],
        }

    @classmethod
    def from_json(cls, obj, mode=EXACT):
        n = obj["n"]
        terms = {}
        for t in obj["terms"]:
            mask = 0
            for i in t["idx"]:
                mask |= 1 << (i - 1)
            terms[mask] = coeff_from_json(t, mode)
        return cls(n, mode, terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms, key=subset_sort_key):
            c = self.terms[m]
            mono = "".join(f"θ{i}" for i in _mask_indices(m))
            parts.append(f"{c!r}{mono}" if mono else f"{c!r}")
        return " + ".join(parts)


# -- operation-style wrappers ------------------------------------------


def gadd(x: GrassmannElement, y: GrassmannElement) -> GrassmannElement:
    """Sum of two elements of the same algebra and mode."""
    return x + y


def gmul(x: GrassmannElement, y: GrassmannElement) -> GrassmannElement:
    """Product; generators anticommute and square to zero."""
    return x * y


def body(x: GrassmannElement):
    return x.body()


def soul(x: GrassmannElement) -> GrassmannElement:
    return x.soul()


def ginv(x: GrassmannElement) -> GrassmannElement:
    return x.inv()


def _binomial_series_coeffs(a: Fraction, kmax: int):
    """Rational binomial coefficients C(a, k) for k = 0..kmax."""
    coeffs = [Fraction(1)]
    c = Fraction(1)
    for k in range(1, kmax + 1):
        c = c * (a - (k - 1)) / k
        coeffs.append(c)
    return coeffs


def analytic_apply(name: str, x: GrassmannElement, power=None) -> GrassmannElement:
    """Apply a named analytic function via its Taylor series around the body.

    Supported names: ``exp``, ``sqrt``, ``reciprocal`` and ``power`` (with an
    integer exponent passed as ``power=``).  The series terminates because the
    soul is nilpotent.  In exact mode the body image must itself be a Gaussian
    rational, otherwise ExactnessError is raised.
    """
    b = x.body()
    s = x.soul()
    n = x.n
    one = GrassmannElement.one(n, x.mode)

    # soul powers s^0 .. s^n
    powers = [one]
    p = one
    for _ in range(n):
        p = p * s
        if p.is_zero():
            break
        powers.append(p)
    kmax = len(powers) - 1

    if name == "exp":
        if x.mode == EXACT:
            if not coeff_is_zero(b):
                raise ExactnessError("exp of a nonzero body is irrational")
            f0 = as_coeff(1, EXACT)
        else:
            f0 = cmath.exp(b)
        out = GrassmannElement.zero(n, x.mode)
        fact = 1
        for k in range(kmax + 1):
            if k:
                fact *= k
            coef = f0 * (Fraction(1, fact) if x.mode == EXACT else 1.0 / fact)
            out = out + powers[k] * coef
        return out

    if name == "sqrt":
        if coeff_is_zero(b):
            raise DomainError("sqrt branch undefined at zero body")
        if x.mode == EXACT:
            root = b.sqrt()
            if root is None:
                raise ExactnessError(f"sqrt({b!r}) is not a Gaussian rational")
        else:
            root = cmath.sqrt(b)
        binv = as_coeff(1, x.mode) / b
        binom = _binomial_series_coeffs(Fraction(1, 2), kmax)
        out = GrassmannElement.zero(n, x.mode)
        bk = as_coeff(1, x.mode)
        for k in range(kmax + 1):
            ck = binom[k] if x.mode == EXACT else float(binom[k])
            out = out + powers[k] * (root * ck * bk)
            bk = bk * binv
        return out

    if name == "reciprocal":
        if coeff_is_zero(b):
            raise DomainError("reciprocal undefined at zero body")
        return x.inv()

    if name == "power":
        if power is None or not isinstance(power, int):
            raise ValueError("power requires an integer exponent")
        return x ** power

    raise ValueError(f"unknown analytic function {name!r}")
