"""Simultaneous triangulation of matrix pairs and root lifting.

Two constructive algorithms share one normal-form contract:

* ``sl2_triangulate`` (float, body level): conjugates an SL(2,C) pair so the
  first matrix is lower triangular with unit subdiagonal and the second upper
  triangular.  The diagonalizable branch clears the remaining corner through
  a biquadratic in the free conjugator parameter y; the unipotent branch is
  handled separately with a 90-degree rotation.

* ``osp_triangulate`` (exact or float): the OSp(1|2) version.  The conjugator

      g = [[0, -1/x, 0], [x, y, nu], [0, -nu/x, 1]],   x*y = 1/(mu - 1/mu)

  has one even unknown y and one odd unknown nu.  The corner equation for y
  and the odd-entry equation for nu are solved simultaneously: nu by an exact
  linear solve against a formal odd generator, y by Newton steps driven by a
  nilpotent dual number.  Both terminate exactly because souls are nilpotent.

The quartic for y is ``c*y^4 + (a-d)*s*y^2 - b*s^2 = 0`` with s = 1/(mu-1/mu)
and (a,b,c,d) the body of the second matrix after diagonalizing the first.
(Clearing y^{-2} from the corner entry produces s^2, not s, on the constant
term; the residual checks below pin this down.)
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    CentralError,
    ExactnessError,
    NumericalError,
    PreconditionError,
    SingularRootError,
    ZeroBodyError,
)
from .grassmann import EXACT, FLOAT, QQi, GrassmannElement, coeff_is_zero
from .osp import OSpElement
from .superlinalg import SuperMatrix, j_inverse, j_matrix, smul, supertranspose

RESIDUAL_TOL = 1e-9


# ---------------------------------------------------------------------------
# polynomials over the Grassmann algebra


class LambdaPolynomial:
    """A polynomial in one even unknown with Grassmann coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = list(coeffs)
        if not cs:
            raise ValueError("a polynomial needs at least one coefficient")
        while len(cs) > 1 and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def n(self):
        return self.coeffs[0].n

    @property
    def mode(self):
        return self.coeffs[0].mode

    def __call__(self, y: GrassmannElement) -> GrassmannElement:
        out = GrassmannElement.zero(y.n, y.mode)
        for c in reversed(self.coeffs):
            out = out * y + c.embed(y.n)
        return out

    def derivative(self) -> "LambdaPolynomial":
        if self.degree == 0:
            return LambdaPolynomial([GrassmannElement.zero(self.n, self.mode)])
        return LambdaPolynomial(
            [self.coeffs[k] * k for k in range(1, len(self.coeffs))]
        )

    def body_coeffs(self):
        return [c.body() for c in self.coeffs]

    def __repr__(self):
        return "LambdaPolynomial(" + ", ".join(repr(c) for c in self.coeffs) + ")"


def hensel_lift_root(p: LambdaPolynomial, y0) -> GrassmannElement:
    """Newton-lift a simple body root into an exact root over the soul.

    ``y0`` is a scalar (or scalar Grassmann element) annihilating the body of
    ``p``; the body of ``p'`` must not vanish there.  The iteration
    ``y <- y - p(y)/p'(y)`` terminates by nilpotency and returns an exact
    root in exact mode.
    """
    n, mode = p.n, p.mode
    if isinstance(y0, GrassmannElement):
        y = y0
    else:
        y = GrassmannElement.scalar(y0, n, mode)
    exact = mode == EXACT
    dp = p.derivative()

    def is_scalar_zero(c):
        return coeff_is_zero(c) if exact else abs(c) <= 1e-12

    body_val = sum(
        (c.body() * (y.body() ** k) for k, c in enumerate(p.coeffs)),
        start=QQi() if exact else 0j,
    )
    if not is_scalar_zero(body_val):
        raise SingularRootError(f"{y0!r} is not a body root (residual {body_val!r})")
    dbody = sum(
        (c.body() * (y.body() ** k) for k, c in enumerate(dp.coeffs)),
        start=QQi() if exact else 0j,
    )
    if is_scalar_zero(dbody):
        raise SingularRootError("body root is not simple")

    for _ in range(n + 2):
        r = p(y)
        if exact and r.is_zero():
            return y
        if not exact and r.max_abs_coeff() < 1e-13:
            return y
        y = y - r * dp(y).inv()
    r = p(y)
    if exact and not r.is_zero():
        raise NumericalError("Newton lifting failed to reach an exact root")
    if not exact and r.max_abs_coeff() > RESIDUAL_TOL:
        raise NumericalError("Newton lifting stalled above tolerance")
    return y


# ---------------------------------------------------------------------------
# complex 2x2 helpers for the body-level algorithm


def _m2mul(a, b):
    return [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]


def _m2det(a):
    return a[0][0] * a[1][1] - a[0][1] * a[1][0]


def _m2inv(a):
    d = _m2det(a)
    if d == 0:
        raise ZeroDivisionError("singular 2x2 matrix")
    return [[a[1][1] / d, -a[0][1] / d], [-a[1][0] / d, a[0][0] / d]]


def _m2conj(g, a):
    return _m2mul(_m2mul(g, a), _m2inv(g))


def _root_key(y: complex):
    return (abs(y), y.real, y.imag)


def _quartic_body_roots_float(q4, q2, q0):
    """Roots of q4*y^4 + q2*y^2 + q0 with the degenerate fallbacks.

    Returns (candidates, degenerate_corner).  The fallback y = 1 flags pairs
    whose corner cannot be cleared (already-triangular or commuting bodies).
    """
    scale = max(abs(q4), abs(q2), abs(q0), 1.0)
    tiny = 1e-13 * scale
    if abs(q4) > tiny:
        sd = cmath.sqrt(q2 * q2 - 4 * q4 * q0)
        ys = []
        for yy in ((-q2 + sd) / (2 * q4), (-q2 - sd) / (2 * q4)):
            r = cmath.sqrt(yy)
            ys.extend([r, -r])
        ys = [y for y in ys if abs(y) > 1e-10]
        if not ys:
            return [1.0 + 0j], True
        return ys, False
    if abs(q2) > tiny:
        yy = -q0 / q2
        if abs(yy) < 1e-20:
            return [1.0 + 0j], True
        r = cmath.sqrt(yy)
        return [r, -r], False
    if abs(q0) > tiny:
        raise NumericalError("pair admits no triangular normal form (shared flag)")
    return [1.0 + 0j], True


def _quartic_body_roots_exact(q4: QQi, q2: QQi, q0: QQi):
    zero = QQi()
    if q4 != zero:
        disc = q2 * q2 - 4 * q4 * q0
        sd = disc.sqrt()
        if sd is None:
            raise ExactnessError(
                "biquadratic discriminant has no Gaussian-rational square root"
            )
        ys = []
        for yy in ((sd - q2) / (2 * q4), (-sd - q2) / (2 * q4)):
            r = yy.sqrt()
            if r is not None and r != zero:
                ys.extend([r, -r])
        if not ys:
            raise ExactnessError("no Gaussian-rational root of the body quartic")
        return ys, False
    if q2 != zero and q0 != zero:
        r = (-(q0 / q2)).sqrt()
        if r is None:
            raise ExactnessError("no Gaussian-rational root of the body quartic")
        return [r, -r], False
    if q2 == zero and q0 != zero:
        raise NumericalError("pair admits no triangular normal form (shared flag)")
    return [QQi(1)], True


def _select_root_exact(cands):
    return max(cands, key=lambda y: (y.norm_sq(), y.re, y.im))


# ---------------------------------------------------------------------------
# normal form record


@dataclass
class NormalFormRecord:
    """Conjugator, normal forms and extracted coordinates of a pair."""

    conjugator: object
    normal_a: object
    normal_b: object
    lam: object
    mu: object
    kappa: object
    psi: object
    xi: object
    branch: str
    details: dict = field(default_factory=dict)

    def to_json(self):
        def enc(v):
            if isinstance(v, SuperMatrix):
                return v.to_json()
            if isinstance(v, GrassmannElement):
                return v.to_json()
            if isinstance(v, list):
                return [[{"re": e.real, "im": e.imag} for e in row] for row in v]
            if isinstance(v, complex):
                return {"re": v.real, "im": v.imag}
            return v

        return {
            "branch": self.branch,
            "conjugator": enc(self.conjugator),
            "normal_a": enc(self.normal_a),
            "normal_b": enc(self.normal_b),
            "coords": {
                "lambda": enc(self.lam),
                "mu": enc(self.mu),
                "kappa": enc(self.kappa),
                "psi": enc(self.psi),
                "xi": enc(self.xi),
            },
        }


# ---------------------------------------------------------------------------
# SL(2, C) body-level triangulation (float mode)


def sl2_triangulate(a_mat, b_mat, tol: float = RESIDUAL_TOL) -> NormalFormRecord:
    """Conjugate an SL(2,C) pair to (lower-unit, upper) triangular form."""
    a = [[complex(v) for v in row] for row in a_mat]
    b = [[complex(v) for v in row] for row in b_mat]
    for m in (a, b):
        if abs(_m2det(m) - 1) > 1e-9:
            raise PreconditionError("input matrices must have determinant 1")
    tr = a[0][0] + a[1][1]
    off = max(abs(a[0][1]), abs(a[1][0]), abs(a[0][0] - a[1][1]))
    if abs(abs(tr) - 2) < 1e-12 and off < 1e-12:
        raise CentralError("A is +-identity; no triangular form of this shape")
    disc = tr * tr - 4
    if abs(disc) < 1e-12:
        return _sl2_unipotent_branch(a, b, tol)
    return _sl2_diagonalizable_branch(a, b, disc, tol)


def _sl2_diagonalizable_branch(a, b, disc, tol):
    tr = a[0][0] + a[1][1]
    sd = cmath.sqrt(disc)
    mu = max((tr + sd) / 2, (tr - sd) / 2, key=_root_key)
    mu_inv = 1 / mu

    def eigvec(m, lam):
        v1 = [m[0][1], lam - m[0][0]]
        v2 = [lam - m[1][1], m[1][0]]
        return v1 if max(abs(v1[0]), abs(v1[1])) >= max(abs(v2[0]), abs(v2[1])) else v2

    v = eigvec(a, mu)
    w = eigvec(a, mu_inv)
    kd = v[0] * w[1] - v[1] * w[0]
    if abs(kd) < 1e-12:
        raise NumericalError("eigenvectors are numerically parallel")
    p_inv = [[v[0] / kd, w[0]], [v[1] / kd, w[1]]]
    p = _m2inv(p_inv)
    bp = _m2conj(p, b)

    s = 1 / (mu - mu_inv)
    q4 = bp[1][0]
    q2 = (bp[0][0] - bp[1][1]) * s
    q0 = -bp[0][1] * s * s
    cands, degenerate = _quartic_body_roots_float(q4, q2, q0)
    y = max(cands, key=_root_key)
    x = s / y
    c_mat = [[0j, -1 / x], [x, y]]
    g = _m2mul(c_mat, p)
    normal_a = _m2conj(g, a)
    normal_b = _m2conj(g, b)

    checks = [abs(normal_a[0][1]), abs(normal_a[1][0] - 1)]
    if not degenerate:
        checks.append(abs(normal_b[1][0]))
    if max(checks) > tol:
        raise NumericalError(f"triangulation residual {max(checks):.3e} above tolerance")
    return NormalFormRecord(
        conjugator=g,
        normal_a=normal_a,
        normal_b=normal_b,
        lam=normal_b[0][0],
        mu=normal_a[1][1],
        kappa=normal_b[0][1],
        psi=None,
        xi=None,
        branch="diagonalizable",
        details={"x": x, "y": y, "degenerate_corner": degenerate},
    )


def _sl2_unipotent_branch(a, b, tol):
    tr = a[0][0] + a[1][1]
    sigma = 1.0 if tr.real > 0 else -1.0
    u = [[sigma * v for v in row] for row in a]
    u_minus = [[u[0][0] - 1, u[0][1]], [u[1][0], u[1][1] - 1]]
    w = [1.0, 0.0] if max(abs(u_minus[0][0]), abs(u_minus[1][0])) >= max(
        abs(u_minus[0][1]), abs(u_minus[1][1])
    ) else [0.0, 1.0]
    v = [
        u_minus[0][0] * w[0] + u_minus[0][1] * w[1],
        u_minus[1][0] * w[0] + u_minus[1][1] * w[1],
    ]
    t = v[0] * w[1] - v[1] * w[0]
    if abs(t) < 1e-12:
        raise NumericalError("failed to build a Jordan basis")
    alpha = 1 / cmath.sqrt(t)
    h = _m2inv([[alpha * v[0], alpha * w[0]], [alpha * v[1], alpha * w[1]]])
    bp = _m2conj(h, b)

    x = 1j
    ca, cb_, cc, cd = bp[0][0], bp[0][1], bp[1][0], bp[1][1]
    # clear the (1,2) entry of T bp T^{-1}: -c y^2 + x(d-a) y + x^2 b = 0
    if abs(cc) > 1e-13:
        sd = cmath.sqrt((x * (cd - ca)) ** 2 + 4 * cc * x * x * cb_)
        cands = [(x * (cd - ca) + sd) / (2 * cc), (x * (cd - ca) - sd) / (2 * cc)]
        y = max(cands, key=_root_key)
    elif abs(cd - ca) > 1e-13:
        y = -x * cb_ / (cd - ca)
    elif abs(cb_) < 1e-13:
        y = 0j
    else:
        raise NumericalError("pair admits no triangular normal form (shared flag)")
    t_mat = [[x, y], [0j, 1 / x]]
    rot = [[0j, -1 - 0j], [1 + 0j, 0j]]
    g = _m2mul(rot, _m2mul(t_mat, h))
    if sigma < 0:
        g = _m2mul([[1j, 0j], [0j, -1j]], g)
    normal_a = _m2conj(g, a)
    normal_b = _m2conj(g, b)
    checks = [
        abs(normal_a[0][1]),
        abs(normal_a[1][0] - 1),
        abs(normal_b[1][0]),
    ]
    if max(checks) > tol:
        raise NumericalError(f"triangulation residual {max(checks):.3e} above tolerance")
    return NormalFormRecord(
        conjugator=g,
        normal_a=normal_a,
        normal_b=normal_b,
        lam=normal_b[0][0],
        mu=normal_a[1][1],
        kappa=normal_b[0][1],
        psi=None,
        xi=None,
        branch="unipotent",
        details={"x": x, "y": y},
    )


# ---------------------------------------------------------------------------
# OSp(1|2) triangulation


def _build_conjugator(x, y, nu) -> SuperMatrix:
    n, mode = y.n, y.mode
    zero = GrassmannElement.zero(n, mode)
    one = GrassmannElement.one(n, mode)
    xinv = x.inv()
    return SuperMatrix(
        [
            [zero, -xinv, zero],
            [x, y, nu],
            [zero, -(xinv * nu), one],
        ],
        parity="even",
    )


def _conjugator_inverse(x, y, nu) -> SuperMatrix:
    n, mode = y.n, y.mode
    zero = GrassmannElement.zero(n, mode)
    one = GrassmannElement.one(n, mode)
    xinv = x.inv()
    return SuperMatrix(
        [
            [y, xinv, -(xinv * nu)],
            [-x, zero, zero],
            [-nu, zero, one],
        ],
        parity="even",
    )


def _conjugate_by(x, y, nu, m: SuperMatrix) -> SuperMatrix:
    return smul(smul(_build_conjugator(x, y, nu), m), _conjugator_inverse(x, y, nu))


def _split_bit(e: GrassmannElement, bit_index: int):
    """Write e = const + coeff * theta_bit; the bit is the highest in use."""
    bit = 1 << (bit_index - 1)
    const, coeff = {}, {}
    for m, c in e.terms.items():
        if m & bit:
            coeff[m ^ bit] = c
        else:
            const[m] = c
    return (
        GrassmannElement(e.n, e.mode, const),
        GrassmannElement(e.n, e.mode, coeff),
    )


def osp_triangulate(a0: OSpElement, b0: OSpElement) -> NormalFormRecord:
    """Simultaneously triangulate a diagonal-body OSp pair.

    ``a0`` must be the diagonal element diag(mu, mu^{-1}, 1) with no odd
    entries and body(mu) different from 0 and +-1.  The even unknown y is
    lifted from a body root of the quartic; the odd unknown nu is solved
    exactly from the linearity of the remaining odd entry.
    """
    n, mode = a0.n, a0.mode
    exact = mode == EXACT
    am = a0.matrix
    mu = am[0, 0]
    one = GrassmannElement.one(n, mode)
    off_diag = [am[i, j] for i in range(3) for j in range(3) if i != j]
    if any(not e.is_zero() for e in off_diag):
        raise PreconditionError("A0 must be the diagonal embedding diag(mu, 1/mu, 1)")
    if am[2, 2] != one or am[1, 1] * mu != one:
        raise PreconditionError("A0 diagonal must be (mu, 1/mu, 1)")
    mb = mu.body()
    if exact:
        if mb == QQi() or mb == QQi(1) or mb == QQi(-1):
            raise PreconditionError("body of mu must differ from 0 and +-1")
    else:
        if abs(mb) < 1e-12 or abs(mb - 1) < 1e-12 or abs(mb + 1) < 1e-12:
            raise PreconditionError("body of mu must differ from 0 and +-1")

    s = (mu - mu.inv()).inv()
    bm = b0.matrix
    s0 = s.body()
    q4 = bm[1, 0].body()
    q2 = (bm[0, 0].body() - bm[1, 1].body()) * s0
    q0 = -(bm[0, 1].body() * s0 * s0)
    if exact:
        cands, degenerate = _quartic_body_roots_exact(q4, q2, q0)
        y_body = _select_root_exact(cands)
    else:
        cands, degenerate = _quartic_body_roots_float(q4, q2, q0)
        y_body = max(cands, key=_root_key)

    # extended algebra: one formal odd generator for nu, one even nilpotent
    # dual (two generators) for d/dy
    n_ext = n + 3
    if n_ext > 16:
        raise PreconditionError("need three spare generators; reduce n to at most 13")
    nu_bit, e1_bit, e2_bit = n + 1, n + 2, n + 3
    b_ext = SuperMatrix(
        [[e.embed(n_ext) for e in row] for row in bm.entries], parity="even"
    )
    s_ext = s.embed(n_ext)
    y = GrassmannElement.scalar(y_body, n_ext, mode)
    nu = GrassmannElement.zero(n_ext, mode)
    theta_nu = GrassmannElement.theta(nu_bit, n_ext, mode)
    eps = GrassmannElement.theta(e1_bit, n_ext, mode) * GrassmannElement.theta(
        e2_bit, n_ext, mode
    )

    def residuals(yv, nuv):
        m = _conjugate_by(s_ext * yv.inv(), yv, nuv, b_ext)
        return m.entries[1][0], m.entries[1][2], m

    def is_small(e):
        return e.is_zero() if exact else e.max_abs_coeff() < 1e-12

    conj_b = None
    for _ in range(2 * n + 8):
        # exact linear solve for nu from the (2,3) entry
        x_formal = s_ext * y.inv()
        eta = _conjugate_by(x_formal, y, theta_nu, b_ext).entries[1][2]
        k0, k1 = _split_bit(eta, nu_bit)
        if coeff_is_zero(k1.body()) if exact else abs(k1.body()) < 1e-12:
            raise SingularRootError("odd-entry equation is singular at this root")
        nu = -(k1.inv() * k0)
        # Newton step for y on the (2,1) entry, via a nilpotent dual
        corner_dual = _conjugate_by(
            s_ext * (y + eps).inv(), y + eps, nu, b_ext
        ).entries[1][0]
        corner, slope = _split_eps(corner_dual, e1_bit, e2_bit)
        r21, r23, conj_b = residuals(y, nu)
        if degenerate:
            if is_small(r23):
                break
        elif is_small(r21) and is_small(r23):
            break
        if not degenerate:
            if coeff_is_zero(slope.body()) if exact else abs(slope.body()) < 1e-12:
                raise SingularRootError("corner equation root is not simple")
            y = y - corner * slope.inv()
    else:
        raise NumericalError("triangulation iteration did not converge")

    x = s_ext * y.inv()
    a_ext = SuperMatrix(
        [[e.embed(n_ext) for e in row] for row in am.entries], parity="even"
    )
    conj_a = _conjugate_by(x, y, nu, a_ext)

    def back(e):
        return e.restrict(n)

    normal_a = SuperMatrix([[back(e) for e in row] for row in conj_a.entries],
                           parity="even")
    normal_b = SuperMatrix([[back(e) for e in row] for row in conj_b.entries],
                           parity="even")
    g = SuperMatrix(
        [[back(e) for e in row]
         for row in _build_conjugator(x, y, nu).entries],
        parity="even",
    )

    lam = normal_b[0, 0]
    kappa = normal_b[0, 1]
    xi = -normal_b[2, 1]
    psi = normal_a[2, 0]
    record = NormalFormRecord(
        conjugator=g,
        normal_a=normal_a,
        normal_b=normal_b,
        lam=lam,
        mu=mu,
        kappa=kappa,
        psi=psi,
        xi=xi,
        branch="diagonalizable",
        details={
            "x": back(x),
            "y": back(y),
            "nu": back(nu),
            "s": s,
            "degenerate_corner": degenerate,
        },
    )
    _verify_normal_form(a0, b0, record)
    return record


def _split_eps(e: GrassmannElement, e1_bit: int, e2_bit: int):
    """Write e = const + slope * (theta_e1 theta_e2), dropping single bits."""
    b1, b2 = 1 << (e1_bit - 1), 1 << (e2_bit - 1)
    both = b1 | b2
    const, slope = {}, {}
    for m, c in e.terms.items():
        if m & both == both:
            slope[m ^ both] = c
        elif not m & both:
            const[m] = c
        # terms with exactly one eps bit cannot occur for even perturbations
    return (
        GrassmannElement(e.n, e.mode, const),
        GrassmannElement(e.n, e.mode, slope),
    )


def _verify_normal_form(a0, b0, rec: NormalFormRecord):
    """Conjugation identity and shape zeros; exact in exact mode."""
    exact = a0.mode == EXACT

    def check_zero(e, what):
        bad = not e.is_zero() if exact else e.max_abs_coeff() > RESIDUAL_TOL
        if bad:
            raise NumericalError(f"normal form violates {what}: {e!r}")

    g = rec.conjugator
    ginv = smul(smul(j_inverse(g.n, g.mode), supertranspose(g)), j_matrix(g.n, g.mode))
    for m0, nf, name in ((a0.matrix, rec.normal_a, "A"), (b0.matrix, rec.normal_b, "B")):
        diff = smul(smul(g, m0), ginv) - nf
        for row in diff.entries:
            for e in row:
                check_zero(e, f"conjugation identity for {name}")
    for (i, j) in ((0, 1), (0, 2), (2, 1)):
        check_zero(rec.normal_a[i, j], f"normalA zero at ({i + 1},{j + 1})")
    check_zero(rec.normal_a[1, 0] - GrassmannElement.one(g.n, g.mode), "unit subdiagonal")
    if not rec.details.get("degenerate_corner"):
        for (i, j) in ((1, 0), (1, 2), (2, 0)):
            check_zero(rec.normal_b[i, j], f"normalB zero at ({i + 1},{j + 1})")
        check_zero(rec.normal_b[0, 2] - rec.lam * rec.xi, "normalB (1,3) = lambda*xi")


# ---------------------------------------------------------------------------
# Fricke coordinate maps


@dataclass
class FrickeCoords:
    x: object
    y: object
    z: object
    delta_x: object
    delta_y: object


def _as_even_invertible(v, n, mode):
    if not isinstance(v, GrassmannElement):
        v = GrassmannElement.scalar(v, n, mode)
    if coeff_is_zero(v.body()):
        raise ZeroBodyError("coordinate must be body-invertible")
    return v


def fricke_coords(lam, mu, kappa, n=1, mode=EXACT) -> FrickeCoords:
    """Trace coordinates of the triangular pair, with the branch deltas.

    X = lam + 1/lam, Y = mu + 1/mu, Z = lam*mu + 1/(lam*mu) + kappa, and
    Delta_X = lam - 1/lam satisfies Delta_X^2 = X^2 - 4 exactly.
    """
    if isinstance(lam, GrassmannElement):
        n, mode = lam.n, lam.mode
    lam = _as_even_invertible(lam, n, mode)
    mu = _as_even_invertible(mu, n, mode)
    if not isinstance(kappa, GrassmannElement):
        kappa = GrassmannElement.scalar(kappa, n, mode)
    li, mi = lam.inv(), mu.inv()
    x = lam + li
    y = mu + mi
    z = lam * mu + li * mi + kappa
    dx = lam - li
    dy = mu - mi
    four = GrassmannElement.scalar(4, n, mode)
    for delta, tr in ((dx, x), (dy, y)):
        resid = delta * delta - (tr * tr - four)
        if mode == EXACT:
            assert resid.is_zero()
        elif resid.max_abs_coeff() > RESIDUAL_TOL:
            raise NumericalError("Delta^2 = X^2 - 4 violated beyond tolerance")
    return FrickeCoords(x=x, y=y, z=z, delta_x=dx, delta_y=dy)
