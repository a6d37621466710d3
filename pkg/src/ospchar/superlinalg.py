"""Supermatrix algebra over the Grassmann algebra in (2|1) layout.

Square matrices are 3x3 with rows/columns 1,2 even and 3 odd.  Rectangular
matrices (Gram matrices of vector tuples) carry no block structure.  The
supertranspose sign convention is frozen by ``calibrate_supertranspose``,
which picks the unique sign pair reproducing the standard inverse formula
g^{-1} = J^{-1} g^{st} J entry-for-entry on a matrix of independent symbols.
"""
from __future__ import annotations

from itertools import permutations

from .errors import ModeMismatchError, ParityError, ShapeError, ZeroBodyError
from .grassmann import EXACT, GrassmannElement, coeff_is_zero

#: parity of each slot of the (2|1) layout
SLOT_PARITY = (0, 0, 1)

#: calibrated supertranspose block signs (upper-right, lower-left); see
#: calibrate_supertranspose for the procedure that fixes them.
ST_SIGNS = (-1, 1)


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class SuperVector:
    """A 3-component vector over the Grassmann algebra, layout (2|1).

    Components may be arbitrary Grassmann elements; graded points have
    parities matching (even, even, odd) or the flipped (odd, odd, even).
    """

    __slots__ = ("components",)

    def __init__(self, components):
        comps = tuple(components)
        if len(comps) != 3:
            raise ShapeError("a SuperVector has exactly 3 components")
        n, mode = comps[0].n, comps[0].mode
        for c in comps:
            if c.n != n or c.mode != mode:
                raise ModeMismatchError("vector components disagree in n or mode")
        self.components = comps

    @property
    def n(self):
        return self.components[0].n

    @property
    def mode(self):
        return self.components[0].mode

    @classmethod
    def basis(cls, i, n, mode=EXACT):
        comps = [GrassmannElement.zero(n, mode) for _ in range(3)]
        comps[i - 1] = GrassmannElement.one(n, mode)
        return cls(comps)

    def __getitem__(self, i):
        return self.components[i]

    def __eq__(self, other):
        return isinstance(other, SuperVector) and self.components == other.components

    def __repr__(self):
        return f"SuperVector({list(self.components)!r})"


class SuperMatrix:
    """An r x c matrix of Grassmann elements, optionally with declared parity."""

    __slots__ = ("rows", "cols", "entries", "parity")

    def __init__(self, entries, parity=None):
        rows = tuple(tuple(row) for row in entries)
        if not rows or not rows[0]:
            raise ShapeError("empty matrix")
        cols = len(rows[0])
        n, mode = rows[0][0].n, rows[0][0].mode
        for row in rows:
            if len(row) != cols:
                raise ShapeError("ragged matrix rows")
            for e in row:
                if not isinstance(e, GrassmannElement):
                    raise TypeError("matrix entries must be GrassmannElements")
                if e.n != n or e.mode != mode:
                    raise ModeMismatchError("matrix entries disagree in n or mode")
        self.rows = len(rows)
        self.cols = cols
        self.entries = rows
        self.parity = parity
        if parity is not None:
            self._check_declared_parity()

    def _check_declared_parity(self):
        if self.parity not in ("even", "odd"):
            raise ValueError(f"parity must be 'even', 'odd' or None, not {self.parity!r}")
        if self.rows != 3 or self.cols != 3:
            raise ShapeError("declared parity applies to 3x3 (2|1) matrices")
        want_odd_offset = 1 if self.parity == "odd" else 0
        for i in range(3):
            for j in range(3):
                slot = (SLOT_PARITY[i] + SLOT_PARITY[j] + want_odd_offset) % 2
                e = self.entries[i][j]
                bad = e.even_part() if slot else e.odd_part()
                if not bad.is_zero():
                    raise ParityError(
                        f"entry ({i + 1},{j + 1}) has a component of the wrong parity"
                    )

    # -- constructors ---------------------------------------------------

    @classmethod
    def identity(cls, n, mode=EXACT, size=3, parity="even"):
        one = GrassmannElement.one(n, mode)
        zero = GrassmannElement.zero(n, mode)
        ent = [[one if i == j else zero for j in range(size)] for i in range(size)]
        return cls(ent, parity=parity if size == 3 else None)

    @classmethod
    def zero(cls, rows, cols, n, mode=EXACT):
        z = GrassmannElement.zero(n, mode)
        return cls([[z] * cols for _ in range(rows)])

    @classmethod
    def from_scalar_rows(cls, scalar_rows, n, mode=EXACT, parity=None):
        ent = [
            [GrassmannElement.scalar(v, n, mode) for v in row] for row in scalar_rows
        ]
        return cls(ent, parity=parity)

    @property
    def n(self):
        return self.entries[0][0].n

    @property
    def mode(self):
        return self.entries[0][0].mode

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, SuperMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __repr__(self):
        body = "; ".join(
            ", ".join(repr(e) for e in row) for row in self.entries
        )
        return f"SuperMatrix[{body}]"

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise ShapeError("shape mismatch in matrix sum")
        par = self.parity if self.parity == other.parity else None
        return SuperMatrix(
            [
                [self.entries[i][j] + other.entries[i][j] for j in range(self.cols)]
                for i in range(self.rows)
            ],
            parity=par,
        )

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return SuperMatrix(
            [[e * c for e in row] for row in self.entries], parity=self.parity
        )

    def __matmul__(self, other):
        return smul(self, other)

    def matvec(self, v: SuperVector) -> SuperVector:
        if self.cols != 3:
            raise ShapeError("matvec requires a 3-column matrix")
        out = []
        for i in range(self.rows):
            acc = GrassmannElement.zero(self.n, self.mode)
            for k in range(3):
                acc = acc + self.entries[i][k] * v[k]
            out.append(acc)
        return SuperVector(out)

    def max_abs_coeff(self) -> float:
        return max(e.max_abs_coeff() for row in self.entries for e in row)

    def map(self, fn) -> "SuperMatrix":
        return SuperMatrix([[fn(e) for e in row] for row in self.entries])

    def to_float(self) -> "SuperMatrix":
        return SuperMatrix(
            [[e.to_float() for e in row] for row in self.entries], parity=self.parity
        )

    # -- io ---------------------------------------------------------------

    def to_json(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "parity": self.parity if self.parity else "none",
            "entries": [[e.to_json() for e in row] for row in self.entries],
        }

    @classmethod
    def from_json(cls, obj, mode=EXACT):
        parity = obj.get("parity")
        if parity == "none":
            parity = None
        entries = [
            [GrassmannElement.from_json(e, mode) for e in row]
            for row in obj["entries"]
        ]
        return cls(entries, parity=parity)


def j_matrix(n, mode=EXACT) -> SuperMatrix:
    """The even bilinear form of OSp(1|2) in the (2|1) layout."""
    return SuperMatrix.from_scalar_rows(
        [[0, -1, 0], [1, 0, 0], [0, 0, -1]], n, mode, parity="even"
    )


def j_inverse(n, mode=EXACT) -> SuperMatrix:
    return SuperMatrix.from_scalar_rows(
        [[0, 1, 0], [-1, 0, 0], [0, 0, -1]], n, mode, parity="even"
    )


def smul(m: SuperMatrix, p: SuperMatrix) -> SuperMatrix:
    """Matrix product; each entry is a left-to-right sum of gmul products."""
    if m.cols != p.rows:
        raise ShapeError(f"cannot multiply {m.rows}x{m.cols} by {p.rows}x{p.cols}")
    if m.n != p.n or m.mode != p.mode:
        raise ModeMismatchError("matrix factors disagree in n or mode")
    parity = None
    if m.parity is not None and p.parity is not None:
        parity = "even" if m.parity == p.parity else "odd"
    out = []
    for i in range(m.rows):
        row = []
        for j in range(p.cols):
            acc = GrassmannElement.zero(m.n, m.mode)
            for k in range(m.cols):
                acc = acc + m.entries[i][k] * p.entries[k][j]
            row.append(acc)
        out.append(row)
    return SuperMatrix(out, parity=parity)


def supertranspose(m: SuperMatrix) -> SuperMatrix:
    """Graded transpose of an even (2|1) matrix, with calibrated block signs."""
    if m.rows != 3 or m.cols != 3:
        raise ShapeError("supertranspose is defined for 3x3 (2|1) matrices")
    if m.parity != "even":
        raise ParityError("supertranspose requires declared even parity")
    s_ur, s_ll = ST_SIGNS
    e = m.entries
    out = [
        [e[0][0], e[1][0], e[2][0] * s_ur],
        [e[0][1], e[1][1], e[2][1] * s_ur],
        [e[0][2] * s_ll, e[1][2] * s_ll, e[2][2]],
    ]
    return SuperMatrix(out, parity="even")


def supertrace(m: SuperMatrix) -> GrassmannElement:
    """M11 + M22 - M33 for the (2|1) layout."""
    if m.rows != 3 or m.cols != 3:
        raise ShapeError("supertrace is defined for 3x3 (2|1) matrices")
    e = m.entries
    return e[0][0] + e[1][1] - e[2][2]


def berezinian(m: SuperMatrix) -> GrassmannElement:
    """det(A - B D^{-1} C) * D^{-1} for the block form [[A,B],[C,D]]."""
    if m.rows != 3 or m.cols != 3:
        raise ShapeError("berezinian is defined for 3x3 (2|1) matrices")
    if m.parity != "even":
        raise ParityError("berezinian requires declared even parity")
    e = m.entries
    d = e[2][2]
    if coeff_is_zero(d.body()):
        raise ZeroBodyError("odd-odd block has zero body")
    dinv = d.inv()
    # schur[i][j] = A_ij - B_i * D^{-1} * C_j, factors in written order
    schur = [
        [e[i][j] - e[i][2] * dinv * e[2][j] for j in range(2)] for i in range(2)
    ]
    det2 = schur[0][0] * schur[1][1] - schur[0][1] * schur[1][0]
    return det2 * dinv


def leibniz_det(m: SuperMatrix) -> GrassmannElement:
    """Sum over permutations with factors multiplied in row order."""
    if m.rows != m.cols:
        raise ShapeError("determinant of a non-square matrix")
    r = m.rows
    out = GrassmannElement.zero(m.n, m.mode)
    for perm in permutations(range(r)):
        term = GrassmannElement.one(m.n, m.mode)
        for i in range(r):
            term = term * m.entries[i][perm[i]]
            if term.is_zero():
                break
        if _perm_sign(perm) < 0:
            term = -term
        out = out + term
    return out


def pairing(v: SuperVector, w: SuperVector) -> GrassmannElement:
    """B(v, w) = sum_ij v_i J_ij w_j with factors in written order."""
    if v.n != w.n or v.mode != w.mode:
        raise ModeMismatchError("pairing arguments disagree in n or mode")
    return -(v[0] * w[1]) + v[1] * w[0] - v[2] * w[2]


def lambda_rank(m: SuperMatrix, tol: float = 1e-12):
    """Rank over the Grassmann algebra using body-invertible pivots.

    Returns ``(rank, nilpotent_residual)``.  Odd or pure-soul entries are
    nilpotent and never qualify as pivots; if elimination stops with a
    nonzero residual made of such entries the flag is set.
    """
    exact = m.mode == EXACT

    def pivotable(e):
        b = e.body()
        if exact:
            return not coeff_is_zero(b)
        return abs(b) > tol

    work = [list(row) for row in m.entries]
    active_rows = list(range(m.rows))
    active_cols = list(range(m.cols))
    rank = 0
    while True:
        pivot = None
        for i in active_rows:
            for j in active_cols:
                if pivotable(work[i][j]):
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        pi, pj = pivot
        inv = work[pi][pj].inv()
        for i in active_rows:
            if i == pi:
                continue
            factor = work[i][pj] * inv
            if factor.is_zero():
                continue
            for j in active_cols:
                work[i][j] = work[i][j] - factor * work[pi][j]
        active_rows.remove(pi)
        active_cols.remove(pj)
        rank += 1
        if not active_rows or not active_cols:
            break
    residual = False
    for i in active_rows:
        for j in active_cols:
            e = work[i][j]
            nonzero = not e.is_zero() if exact else e.max_abs_coeff() > tol
            if nonzero:
                residual = True
    return rank, residual


def calibrate_supertranspose():
    """Determine the supertranspose block signs from the inverse formula.

    Builds a 3x3 matrix of fourteen independent Grassmann symbols (nilpotent
    even squares standing in for free even entries) and returns the unique
    sign pair (s_upper_right, s_lower_left) for which J^{-1} M^st J equals the
    reshuffled matrix [[d,-b,delta],[-c,a,-gamma],[-beta,alpha,f]].
    """
    n = 14
    sym = {}
    names = ["a", "b", "c", "d", "f"]
    for k, name in enumerate(names):
        sym[name] = GrassmannElement.monomial(1, [2 * k + 1, 2 * k + 2], n)
    for k, name in enumerate(["alpha", "beta", "gamma", "delta"]):
        sym[name] = GrassmannElement.theta(11 + k, n)
    g = SuperMatrix(
        [
            [sym["a"], sym["b"], sym["alpha"]],
            [sym["c"], sym["d"], sym["beta"]],
            [sym["gamma"], sym["delta"], sym["f"]],
        ],
        parity="even",
    )
    target = SuperMatrix(
        [
            [sym["d"], -sym["b"], sym["delta"]],
            [-sym["c"], sym["a"], -sym["gamma"]],
            [-sym["beta"], sym["alpha"], sym["f"]],
        ],
        parity="even",
    )
    jm, jinv = j_matrix(n), j_inverse(n)
    winners = []
    for s_ur, s_ll in ((1, -1), (-1, 1)):
        e = g.entries
        st = SuperMatrix(
            [
                [e[0][0], e[1][0], e[2][0] * s_ur],
                [e[0][1], e[1][1], e[2][1] * s_ur],
                [e[0][2] * s_ll, e[1][2] * s_ll, e[2][2]],
            ],
            parity="even",
        )
        if smul(smul(jinv, st), jm) == target:
            winners.append((s_ur, s_ll))
    if len(winners) != 1:
        raise RuntimeError(f"calibration did not single out a sign pair: {winners}")
    return winners[0]
