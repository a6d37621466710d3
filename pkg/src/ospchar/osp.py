"""Construction and validation of OSp(1|2) group elements.

An element is a 3x3 even supermatrix preserving the form J, with unit
Berezinian.  Membership is checked through three independent families of
equations: the form invariance g^st J g = J, Ber(g) = 1, and the entry
relations tying the odd column to the odd row.

Note on the entry relations: writing g = [[a,b,alpha],[c,d,beta],
[gamma,delta,f]], form invariance forces f^2 = 1 - 2*alpha*beta, so the
identity component satisfies f = 1 - alpha*beta and f^{-1} = 1 + alpha*beta
= ad - bc.  (The frequently quoted variant "f = 1 + alpha*beta" fails on any
element with alpha*beta != 0, e.g. the exponential of a generic odd pair;
the corrected form below is validated against the inverse formula.)
"""
from __future__ import annotations

from fractions import Fraction

from .errors import (
    DeterminantError,
    MembershipError,
    ParityError,
    ShapeError,
)
from .grassmann import EXACT, FLOAT, QQi, GrassmannElement, coeff_is_zero
from .superlinalg import (
    SuperMatrix,
    berezinian,
    j_inverse,
    j_matrix,
    smul,
    supertranspose,
    supertrace,
)

FLOAT_TOL = 1e-9

#: generators of the odd part of osp(1|2), in the (2|1) layout
Q1_ROWS = [[0, 0, 1], [0, 0, 0], [0, -1, 0]]
Q2_ROWS = [[0, 0, 0], [0, 0, 1], [1, 0, 0]]


def _as_even_element(value, n, mode):
    if isinstance(value, GrassmannElement):
        if value.n != n or value.mode != mode:
            raise ShapeError("parameter algebra does not match requested n/mode")
        if not value.is_even():
            raise ParityError("sl2 parameters must be even")
        return value
    return GrassmannElement.scalar(value, n, mode)


class OSpElement:
    """A certified OSp(1|2) element: matrix plus construction record."""

    __slots__ = ("matrix", "provenance")

    def __init__(self, matrix: SuperMatrix, provenance=None, validate=True):
        if matrix.rows != 3 or matrix.cols != 3:
            raise ShapeError("OSp(1|2) elements are 3x3")
        if matrix.parity is None:
            matrix = SuperMatrix(matrix.entries, parity="even")
        self.matrix = matrix
        self.provenance = provenance
        if validate:
            ok, violations = check_membership(matrix)
            if not ok:
                raise MembershipError(f"matrix is not in OSp(1|2): {violations}")

    @property
    def n(self):
        return self.matrix.n

    @property
    def mode(self):
        return self.matrix.mode

    def __getitem__(self, ij):
        return self.matrix[ij]

    def __matmul__(self, other):
        if isinstance(other, OSpElement):
            return OSpElement(smul(self.matrix, other.matrix), validate=False)
        return NotImplemented

    def __eq__(self, other):
        return isinstance(other, OSpElement) and self.matrix == other.matrix

    def __repr__(self):
        return f"OSpElement({self.matrix!r})"

    def str_(self) -> GrassmannElement:
        return supertrace(self.matrix)

    def ber(self) -> GrassmannElement:
        return berezinian(self.matrix)

    def to_json(self):
        obj = {"matrix": self.matrix.to_json()}
        if self.provenance is not None:
            obj["provenance"] = self.provenance
        return obj


def from_sl2(a, b, c, d, n=8, mode=EXACT) -> OSpElement:
    """Embed an SL(2) matrix as the block-diagonal element with corner 1."""
    a, b, c, d = (_as_even_element(v, n, mode) for v in (a, b, c, d))
    det = a * d - b * c
    if det != GrassmannElement.one(n, mode):
        if mode == EXACT:
            raise DeterminantError(f"ad - bc = {det!r}, expected 1")
        if (det - 1).max_abs_coeff() > FLOAT_TOL:
            raise DeterminantError(f"ad - bc = {det!r}, expected 1")
    zero = GrassmannElement.zero(n, mode)
    one = GrassmannElement.one(n, mode)
    m = SuperMatrix([[a, b, zero], [c, d, zero], [zero, zero, one]], parity="even")
    prov = {"sl2": [a, b, c, d]}
    return OSpElement(m, provenance=prov, validate=False)


def exp_odd(gamma: GrassmannElement, delta: GrassmannElement) -> OSpElement:
    """Exponential of gamma*q1 + delta*q2; the series truncates by nilpotency."""
    for arg in (gamma, delta):
        if not (arg.is_zero() or arg.is_odd()):
            raise ParityError("exp_odd arguments must be purely odd")
    n, mode = gamma.n, gamma.mode
    if delta.n != n or delta.mode != mode:
        raise ParityError("exp_odd arguments disagree in n or mode")
    q1 = SuperMatrix.from_scalar_rows(Q1_ROWS, n, mode)
    q2 = SuperMatrix.from_scalar_rows(Q2_ROWS, n, mode)
    # odd coefficients act from the left of the scalar generator entries
    m = SuperMatrix(
        [
            [gamma * q1.entries[i][j] + delta * q2.entries[i][j] for j in range(3)]
            for i in range(3)
        ]
    )
    out = SuperMatrix.identity(n, mode)
    term = SuperMatrix.identity(n, mode)
    k = 0
    fact = Fraction(1)
    while True:
        k += 1
        fact /= k
        term = smul(term, m)
        if all(e.is_zero() for row in term.entries for e in row):
            break
        coef = fact if mode == EXACT else float(fact)
        out = out + term.scale(coef)
        if k > 2 * n + 2:
            break
    result = SuperMatrix(out.entries, parity="even")
    return OSpElement(result, provenance={"odd": [gamma, delta]}, validate=False)


def compose_general(a, b, c, d, gamma, delta, n=None, mode=None) -> OSpElement:
    """Bosonic part times the exponential of the odd generators."""
    if n is None:
        n = gamma.n if isinstance(gamma, GrassmannElement) else 8
    if mode is None:
        mode = gamma.mode if isinstance(gamma, GrassmannElement) else EXACT
    bos = from_sl2(a, b, c, d, n=n, mode=mode)
    if not isinstance(gamma, GrassmannElement):
        gamma = GrassmannElement.scalar(gamma, n, mode)
    if not isinstance(delta, GrassmannElement):
        delta = GrassmannElement.scalar(delta, n, mode)
    ferm = exp_odd(gamma, delta)
    out = OSpElement(smul(bos.matrix, ferm.matrix), validate=False)
    out_prov = {
        "sl2": bos.provenance["sl2"],
        "odd": [gamma, delta],
    }
    return OSpElement(out.matrix, provenance=out_prov, validate=False)


def inverse(g: OSpElement) -> OSpElement:
    """g^{-1} = J^{-1} g^st J."""
    n, mode = g.n, g.mode
    m = smul(smul(j_inverse(n, mode), supertranspose(g.matrix)), j_matrix(n, mode))
    return OSpElement(m, validate=False)


def _entries(m: SuperMatrix):
    e = m.entries
    return {
        "a": e[0][0], "b": e[0][1], "alpha": e[0][2],
        "c": e[1][0], "d": e[1][1], "beta": e[1][2],
        "gamma": e[2][0], "delta": e[2][1], "f": e[2][2],
    }


def membership_residuals(m: SuperMatrix):
    """All membership residuals of a 3x3 even matrix, as (name, element)."""
    n, mode = m.n, m.mode
    res = []
    form = smul(smul(supertranspose(m), j_matrix(n, mode)), m) - j_matrix(n, mode)
    for i in range(3):
        for j in range(3):
            res.append((f"form({i + 1},{j + 1})", form.entries[i][j]))
    one = GrassmannElement.one(n, mode)
    v = _entries(m)
    if coeff_is_zero(v["f"].body()):
        res.append(("berezinian", one))  # not even defined; flag as violated
    else:
        res.append(("berezinian", berezinian(m) - one))
    res.append(("alpha = b*gamma - a*delta",
                v["alpha"] - (v["b"] * v["gamma"] - v["a"] * v["delta"])))
    res.append(("beta = d*gamma - c*delta",
                v["beta"] - (v["d"] * v["gamma"] - v["c"] * v["delta"])))
    res.append(("gamma = a*beta - c*alpha",
                v["gamma"] - (v["a"] * v["beta"] - v["c"] * v["alpha"])))
    res.append(("delta = b*beta - d*alpha",
                v["delta"] - (v["b"] * v["beta"] - v["d"] * v["alpha"])))
    res.append(("f*(ad - bc) = 1", v["f"] * (v["a"] * v["d"] - v["b"] * v["c"]) - one))
    res.append(("f*(1 + alpha*beta) = 1",
                v["f"] * (one + v["alpha"] * v["beta"]) - one))
    return res


def check_membership(m: SuperMatrix, tol: float = FLOAT_TOL):
    """Evaluate every membership equation; never fails fast.

    Returns (ok, violations) where violations lists the names of equations
    with nonzero residual (exact mode) or residual above tol (float mode).
    """
    if m.rows != 3 or m.cols != 3:
        raise ShapeError("membership applies to 3x3 matrices")
    if m.parity is None:
        try:
            m = SuperMatrix(m.entries, parity="even")
        except ParityError:
            return False, ["parity structure"]
    violations = []
    for name, r in membership_residuals(m):
        bad = not r.is_zero() if m.mode == EXACT else r.max_abs_coeff() > tol
        if bad:
            violations.append(name)
    return not violations, violations


def reduce_body(g: OSpElement):
    """Body of the even block: a 2x2 scalar matrix, guaranteed in SL(2)."""
    e = g.matrix.entries
    out = [[e[i][j].body() for j in range(2)] for i in range(2)]
    det = out[0][0] * out[1][1] - out[0][1] * out[1][0]
    one = QQi(1) if g.mode == EXACT else 1.0
    if g.mode == EXACT:
        if det != one:
            raise DeterminantError(f"body determinant {det!r} is not 1")
    elif abs(det - 1) > FLOAT_TOL:
        raise DeterminantError(f"body determinant {det!r} is not 1")
    return out


def z2_flip(g: OSpElement) -> OSpElement:
    """Conjugation by diag(-1,-1,1): negates the four odd entries."""
    e = g.matrix.entries
    flipped = [
        [e[0][0], e[0][1], -e[0][2]],
        [e[1][0], e[1][1], -e[1][2]],
        [-e[2][0], -e[2][1], e[2][2]],
    ]
    return OSpElement(SuperMatrix(flipped, parity="even"),
                      provenance=g.provenance, validate=False)
