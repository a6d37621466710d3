"""Property suites behind the ``verify`` subcommand.

Each suite returns a list of (check name, passed, detail) triples.  Exact
mode asserts identities with zero residual; float mode re-runs the same
samples through complex coefficients and checks residuals against the
1e-9 coefficient tolerance.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .charvar import RepresentationPair, evaluate_word, parse_word
from .grassmann import (
    EXACT,
    FLOAT,
    GrassmannElement,
    QQi,
    analytic_apply,
    gadd,
    ginv,
    gmul,
)
from .invariants import (
    PermutationInvariant,
    end_to_tensor,
    gram_jacobian_rank_at,
    gram_matrix,
    matching_invariant,
    mu_sigma,
    parity_audit,
    polarize,
    restitute,
    SuperPolyRing,
    tensor_to_end,
    trace_word,
)
from .normalform import fricke_coords, hensel_lift_root, LambdaPolynomial, osp_triangulate, sl2_triangulate
from .osp import (
    check_membership,
    compose_general,
    exp_odd,
    from_sl2,
    inverse,
    reduce_body,
    z2_flip,
)
from .sampling import (
    rand_even_soul,
    rand_odd_soul,
    rand_osp,
    rand_qqi,
    rand_sl2_complex,
    rand_sl2_params,
    rand_unipotent_pair_complex,
    rand_vector_free,
    rand_vector_graded,
)
from .superlinalg import (
    SuperMatrix,
    SuperVector,
    berezinian,
    calibrate_supertranspose,
    j_matrix,
    lambda_rank,
    leibniz_det,
    pairing,
    smul,
    ST_SIGNS,
    supertranspose,
    supertrace,
)

TOL = 1e-9


def _to_float_element(e: GrassmannElement) -> GrassmannElement:
    return e.to_float()


def _to_float_matrix(m: SuperMatrix) -> SuperMatrix:
    return m.to_float()


def _is_zero(e: GrassmannElement, mode) -> bool:
    if mode == EXACT:
        return e.is_zero()
    return e.max_abs_coeff() <= TOL


def _matrices_equal(a: SuperMatrix, b: SuperMatrix, mode) -> bool:
    diff = a - b
    return all(_is_zero(e, mode) for row in diff.entries for e in row)


def _convert(mode, *elements):
    if mode == EXACT:
        return elements
    return tuple(_to_float_element(e) for e in elements)


def _rand_homogeneous(rng, n, parity, mode):
    if parity == 0:
        e = GrassmannElement.scalar(rand_qqi(rng, 5), n) + rand_even_soul(rng, n)
    else:
        e = rand_odd_soul(rng, n, terms=2)
    return e if mode == EXACT else _to_float_element(e)


def suite_grassmann(rng, samples, mode):
    checks = []
    n = 6

    ok = True
    for _ in range(samples):
        p, q = rng.randint(0, 1), rng.randint(0, 1)
        x = _rand_homogeneous(rng, n, p, mode)
        y = _rand_homogeneous(rng, n, q, mode)
        sign = -1 if p and q else 1
        if not _is_zero(gmul(x, y) - gmul(y, x) * sign, mode):
            ok = False
    checks.append(("supercommutativity on homogeneous elements", ok, f"{samples} pairs"))

    ok = True
    for _ in range(samples):
        xs = [
            _rand_homogeneous(rng, n, rng.randint(0, 1), mode) for _ in range(3)
        ]
        lhs = gmul(gmul(xs[0], xs[1]), xs[2])
        rhs = gmul(xs[0], gmul(xs[1], xs[2]))
        if not _is_zero(lhs - rhs, mode):
            ok = False
        lhs = gmul(xs[0], gadd(xs[1], xs[2]))
        rhs = gadd(gmul(xs[0], xs[1]), gmul(xs[0], xs[2]))
        if not _is_zero(lhs - rhs, mode):
            ok = False
    checks.append(("associativity and distributivity", ok, f"{samples} triples"))

    ok = True
    one = GrassmannElement.one(n, mode)
    for _ in range(samples):
        x = GrassmannElement.scalar(rand_qqi(rng, 5, nonzero=True), n)
        x = x + rand_even_soul(rng, n) + rand_odd_soul(rng, n, terms=1)
        if mode == FLOAT:
            x = _to_float_element(x)
        if not _is_zero(gmul(x, ginv(x)) - one, mode):
            ok = False
    checks.append(("x * ginv(x) = 1 for body-invertible x", ok, f"{samples} samples"))

    ok = True
    for _ in range(samples):
        x = _rand_homogeneous(rng, n, rng.randint(0, 1), mode)
        s = x.soul()
        p = GrassmannElement.one(n, mode)
        for _ in range(n + 1):
            p = gmul(p, s)
        if not _is_zero(p, mode):
            ok = False
    checks.append(("soul nilpotency soul^(n+1) = 0", ok, f"{samples} samples"))

    t1 = GrassmannElement.theta(1, n, EXACT)
    exp_t1 = analytic_apply("exp", t1 if mode == EXACT else _to_float_element(t1))
    want = gadd(GrassmannElement.one(n, mode), t1 if mode == EXACT else _to_float_element(t1))
    checks.append(("exp(theta) = 1 + theta", _is_zero(exp_t1 - want, mode), "one generator"))

    ok = True
    for _ in range(samples):
        base = GrassmannElement.scalar(QQi(rng.randint(1, 5) ** 2), n) + rand_even_soul(rng, n)
        if mode == FLOAT:
            base = _to_float_element(base)
        r = analytic_apply("sqrt", base)
        if not _is_zero(gmul(r, r) - base, mode):
            ok = False
    checks.append(("sqrt(x)^2 = x on even invertibles", ok, f"{samples} samples"))
    return checks


def suite_superlinalg(rng, samples, mode):
    checks = []
    n = 6

    def rand_even_matrix():
        g = rand_osp(rng, n=n).matrix
        h = rand_osp(rng, n=n).matrix
        m = smul(g, h)
        return m if mode == EXACT else _to_float_matrix(m)

    checks.append(
        (
            "supertranspose calibration matches frozen signs",
            calibrate_supertranspose() == ST_SIGNS,
            f"signs {ST_SIGNS}",
        )
    )

    ok = True
    for _ in range(samples):
        m, p = rand_even_matrix(), rand_even_matrix()
        if not _matrices_equal(supertranspose(smul(m, p)),
                               smul(supertranspose(p), supertranspose(m)), mode):
            ok = False
    checks.append(("(MP)^st = P^st M^st on even matrices", ok, f"{samples} pairs"))

    ok = True
    for _ in range(samples):
        m = rand_even_matrix()
        twice = supertranspose(supertranspose(m))
        e = m.entries
        flipped = SuperMatrix(
            [
                [e[0][0], e[0][1], -e[0][2]],
                [e[1][0], e[1][1], -e[1][2]],
                [-e[2][0], -e[2][1], e[2][2]],
            ],
            parity="even",
        )
        if not _matrices_equal(twice, flipped, mode):
            ok = False
    checks.append(("st involution up to the odd-block sign flip", ok, f"{samples} samples"))

    ok = True
    for _ in range(samples):
        m, p = rand_even_matrix(), rand_even_matrix()
        if not _is_zero(supertrace(smul(m, p)) - supertrace(smul(p, m)), mode):
            ok = False
    checks.append(("supertrace cyclicity", ok, f"{samples} pairs"))

    ok = True
    for _ in range(samples):
        g = rand_osp(rng, n=n)
        m = rand_even_matrix()
        gm = g.matrix if mode == EXACT else _to_float_matrix(g.matrix)
        gi = inverse(g).matrix if mode == EXACT else _to_float_matrix(inverse(g).matrix)
        if not _is_zero(supertrace(smul(smul(gm, m), gi)) - supertrace(m), mode):
            ok = False
    checks.append(("supertrace conjugation invariance", ok, f"{samples} samples"))

    ok = True
    for _ in range(samples):
        m, p = rand_even_matrix(), rand_even_matrix()
        if not _is_zero(
            berezinian(smul(m, p)) - gmul(berezinian(m), berezinian(p)), mode
        ):
            ok = False
    checks.append(("Ber(MP) = Ber(M) Ber(P)", ok, f"{samples} pairs"))

    ok = True
    for _ in range(samples):
        vs = [rand_vector_graded(rng, n) for _ in range(4)]
        if mode == FLOAT:
            vs = [SuperVector([_to_float_element(c) for c in v.components]) for v in vs]
        if not _is_zero(leibniz_det(gram_matrix(vs)), mode):
            ok = False
    checks.append(("4-vector Gram determinant vanishes", ok, f"{samples} tuples"))

    ok = True
    for _ in range(samples):
        g = rand_osp(rng, n=n)
        v = rand_vector_graded(rng, n, flipped=True)
        w = rand_vector_graded(rng, n, flipped=True)
        gm = g.matrix
        if mode == FLOAT:
            gm = _to_float_matrix(gm)
            v = SuperVector([_to_float_element(c) for c in v.components])
            w = SuperVector([_to_float_element(c) for c in w.components])
        if not _is_zero(pairing(gm.matvec(v), gm.matvec(w)) - pairing(v, w), mode):
            ok = False
    checks.append(("B(gv, gw) = B(v, w) on module points", ok, f"{samples} samples"))

    ok = True
    for _ in range(samples):
        vs = [rand_vector_free(rng, n) for _ in range(3)]
        g = gram_matrix(vs)
        bodies = [[c.body() for c in v.components] for v in vs]
        det_b = (
            bodies[0][0] * (bodies[1][1] * bodies[2][2] - bodies[1][2] * bodies[2][1])
            - bodies[0][1] * (bodies[1][0] * bodies[2][2] - bodies[1][2] * bodies[2][0])
            + bodies[0][2] * (bodies[1][0] * bodies[2][1] - bodies[1][1] * bodies[2][0])
        )
        independent = bool(det_b)
        rank, _resid = lambda_rank(g)
        if (rank == 3) != independent:
            ok = False
    checks.append(("Gram rank reflects body independence (3 vectors)", ok, f"{samples} samples"))
    return checks


def suite_osp(rng, samples, mode):
    checks = []
    n = 8

    def rand_e():
        g = rand_osp(rng, n=n)
        if mode == FLOAT:
            from .osp import OSpElement

            return OSpElement(_to_float_matrix(g.matrix), validate=False)
        return g

    ok = True
    for _ in range(samples):
        g = rand_e()
        good, bad = check_membership(g.matrix)
        if not good:
            ok = False
    checks.append(("membership equations on random elements", ok, f"{samples} samples"))

    ok = True
    for _ in range(samples):
        g, h = rand_e(), rand_e()
        good, _ = check_membership(smul(g.matrix, h.matrix))
        if not good:
            ok = False
    checks.append(("closure under multiplication", ok, f"{samples} pairs"))

    ok = True
    ident = SuperMatrix.identity(n, mode)
    for _ in range(samples):
        g = rand_e()
        if not _matrices_equal(smul(g.matrix, inverse(g).matrix), ident, mode):
            ok = False
        if not _matrices_equal(inverse(inverse(g)).matrix, g.matrix, mode):
            ok = False
    checks.append(("g g^{-1} = I and double inverse", ok, f"{samples} samples"))

    ok = True
    for _ in range(samples):
        g = rand_e()
        e = g.matrix.entries
        disp = SuperMatrix(
            [
                [e[1][1], -e[0][1], e[2][1]],
                [-e[1][0], e[0][0], -e[2][0]],
                [-e[1][2], e[0][2], e[2][2]],
            ],
            parity="even",
        )
        if not _matrices_equal(inverse(g).matrix, disp, mode):
            ok = False
    checks.append(("inverse formula reshuffles the entries", ok, f"{samples} samples"))

    ok = True
    for _ in range(samples):
        g, h = rand_osp(rng, n=n), rand_osp(rng, n=n)
        prod = reduce_body(g @ h)
        ga, hb = reduce_body(g), reduce_body(h)
        want = [
            [
                ga[0][0] * hb[0][0] + ga[0][1] * hb[1][0],
                ga[0][0] * hb[0][1] + ga[0][1] * hb[1][1],
            ],
            [
                ga[1][0] * hb[0][0] + ga[1][1] * hb[1][0],
                ga[1][0] * hb[0][1] + ga[1][1] * hb[1][1],
            ],
        ]
        if prod != want:
            ok = False
    checks.append(("body reduction is a homomorphism", ok, f"{samples} pairs (exact)"))

    ok = True
    for _ in range(samples):
        g = rand_e()
        flip = z2_flip(g)
        if not _matrices_equal(z2_flip(flip).matrix, g.matrix, mode):
            ok = False
        if not _is_zero(supertrace(flip.matrix) - supertrace(g.matrix), mode):
            ok = False
        good, _ = check_membership(flip.matrix)
        if not good:
            ok = False
    checks.append(("Z2 flip: involution, trace-blind, stays in group", ok, f"{samples} samples"))
    return checks


def suite_normalform(rng, samples, mode):
    checks = []

    ok = True
    unipotent_seen = 0
    for k in range(samples):
        if k % 5 == 4:
            a, b = rand_unipotent_pair_complex(rng)
        else:
            a, b = rand_sl2_complex(rng), rand_sl2_complex(rng)
        try:
            rec = sl2_triangulate(a, b)
        except Exception as exc:  # pragma: no cover - sampler avoids these
            ok = False
            continue
        if rec.branch == "unipotent":
            unipotent_seen += 1
    checks.append(
        (
            "sl2 triangulation on random pairs",
            ok and unipotent_seen > 0,
            f"{samples} pairs, {unipotent_seen} unipotent",
        )
    )

    n = 6
    one = GrassmannElement.one(n)
    t12 = gmul(GrassmannElement.theta(1, n), GrassmannElement.theta(2, n))
    p = LambdaPolynomial([-(one + t12), GrassmannElement.zero(n), one])
    root = hensel_lift_root(p, 1)
    checks.append(
        ("Hensel root of y^2 = 1 + soul", gmul(root, root) == one + t12, "exact")
    )

    ok = True
    count = max(3, samples // 3)
    for _ in range(count):
        a0, b0 = _random_osp_triangulable_pair(rng, n)
        rec = osp_triangulate(a0, b0)
        nu = rec.details["nu"]
        mu = a0.matrix[0, 0]
        if rec.psi != gmul(nu, ginv(mu) - one):
            ok = False
    checks.append(("osp triangulation with psi = nu (1/mu - 1)", ok, f"{count} exact pairs"))

    ok = True
    for _ in range(samples):
        lam = rand_qqi(rng, 5, nonzero=True)
        fc = fricke_coords(lam, QQi(3), QQi(1))
        resid = fc.delta_x * fc.delta_x - (fc.x * fc.x - 4)
        if not resid.is_zero():
            ok = False
    checks.append(("Delta_X^2 = X^2 - 4", ok, f"{samples} samples"))
    return checks


def _random_osp_triangulable_pair(rng, n):
    """Exact pair (diagonal A0, conjugated triangular B0) with rational roots."""
    from .normalform import _build_conjugator, _conjugator_inverse
    from .osp import OSpElement

    while True:
        mu_body = rand_qqi(rng, 4, nonzero=True)
        if mu_body in (QQi(1), QQi(-1)):
            continue
        mu = GrassmannElement.scalar(mu_body, n)
        a0 = from_sl2(mu, 0, 0, ginv(mu), n=n)
        s = ginv(mu - ginv(mu))
        y0 = GrassmannElement.scalar(rand_qqi(rng, 4, nonzero=True), n)
        x0 = gmul(s, ginv(y0))
        nu0 = rand_odd_soul(rng, n, max_gen=4, terms=1)
        lam_body = rand_qqi(rng, 4, nonzero=True)
        if not lam_body:
            continue
        lam = GrassmannElement.scalar(lam_body, n) + rand_even_soul(rng, n, max_gen=4)
        kap = GrassmannElement.scalar(rand_qqi(rng, 4), n)
        xi = rand_odd_soul(rng, n, max_gen=4, terms=1)
        zero = GrassmannElement.zero(n)
        one = GrassmannElement.one(n)
        bt = SuperMatrix(
            [
                [lam, kap, gmul(lam, xi)],
                [zero, ginv(lam), zero],
                [zero, -xi, one],
            ],
            parity="even",
        )
        g0 = _build_conjugator(x0, y0, nu0)
        g0i = _conjugator_inverse(x0, y0, nu0)
        b0m = smul(smul(g0i, bt), g0)
        good, _ = check_membership(b0m)
        if not good:
            continue
        b0 = OSpElement(b0m, validate=False)
        try:
            osp_triangulate(a0, b0)
        except Exception:
            continue
        return a0, b0


def suite_invariants(rng, samples, mode):
    checks = []
    n = 6

    def outer(v, phi):
        return SuperMatrix([[gmul(v[i], phi[j]) for j in range(3)] for i in range(3)])

    ok = True
    for _ in range(samples):
        flip = rng.random() < 0.5
        v = rand_vector_graded(rng, n, flipped=flip)
        phi = rand_vector_graded(rng, n, flipped=flip)
        lhs = supertrace(outer(v, phi))
        rhs = gmul(v[0], phi[0]) + gmul(v[1], phi[1]) - gmul(v[2], phi[2])
        if lhs != rhs:
            ok = False
    checks.append(("str(v x phi) sign rule", ok, f"{samples} homogeneous pairs"))

    ok = True
    from itertools import permutations as _perms

    jm = j_matrix(n, EXACT)
    j2 = smul(jm, jm)
    for k in (2, 3):
        for p in _perms(range(1, k + 1)):
            sigma = PermutationInvariant(p)
            mats = [rand_osp(rng, n=n).matrix for _ in range(k)]
            route1 = mu_sigma(mats, sigma)
            route2 = GrassmannElement.one(n)
            for cyc in sigma.cycles():
                acc = j2
                for idx in cyc:
                    acc = smul(acc, smul(end_to_tensor(mats[idx - 1]), jm))
                tr = GrassmannElement.zero(n)
                for i in range(3):
                    tr = tr + acc.entries[i][i]
                route2 = gmul(route2, -tr)
            if route1 != route2:
                ok = False
    checks.append(("trace products match tensor contractions", ok, "Sym2 and Sym3"))

    ok = True
    for _ in range(samples):
        g = rand_osp(rng, n=n)
        vs = [rand_vector_graded(rng, n, flipped=True) for _ in range(4)]
        moved = [SuperVector([
            sum((gmul(g.matrix.entries[i][k], v[k]) for k in range(3)),
                start=GrassmannElement.zero(n))
            for i in range(3)
        ]) for v in vs]
        m = [(1, 2), (3, 4)]
        if matching_invariant(vs, m) != matching_invariant(moved, m):
            ok = False
    checks.append(("matching invariants are conjugation invariant", ok, f"{samples} samples"))

    ring = SuperPolyRing(["u", "w", "t1", "t2"], [0, 0, 1, 1])
    ok = True
    for d in (1, 2, 3):
        f = (ring.var("u") + ring.var("w")) ** d
        if restitute(polarize(f)) != f * QQi(_factorial(d)):
            ok = False
    f = ring.var("t1") * ring.var("t2") * ring.var("u")
    if restitute(polarize(f)) != f * QQi(_factorial(3)):
        ok = False
    checks.append(("restitute(polarize(f)) = d! f", ok, "degrees 1..3"))

    ok = True
    for _ in range(samples):
        a, b = rand_osp(rng, n=n), rand_osp(rng, n=n)
        rep = RepresentationPair(a, b, validate=False)
        vals = [trace_word(w, rep) for w in ("A", "B", "AB", "AABB")]
        if not parity_audit(vals):
            ok = False
    checks.append(("trace words have no odd part", ok, f"{samples} representations"))

    rank, resid = gram_jacobian_rank_at(rng)
    checks.append(("Gram Jacobian rank is 9", rank == 9 and not resid, f"rank {rank}"))
    return checks


def _factorial(d):
    out = 1
    for k in range(2, d + 1):
        out *= k
    return out


def suite_charvar(rng, samples, mode):
    checks = []
    n = 6

    ok = True
    for _ in range(samples):
        a, b = rand_osp(rng, n=n), rand_osp(rng, n=n)
        rep = RepresentationPair(a, b, validate=False)
        w1 = "".join(rng.choice("AaBb") for _ in range(rng.randint(0, 3)))
        w2 = "".join(rng.choice("AaBb") for _ in range(rng.randint(1, 3)))
        lhs = evaluate_word(w1 + w2, rep)
        rhs = smul(evaluate_word(w1, rep), evaluate_word(w2, rep))
        if not _matrices_equal(lhs, rhs, EXACT):
            ok = False
        word = parse_word(w1 + w2)
        if not _matrices_equal(
            evaluate_word(word, rep), evaluate_word(word.reduced(), rep), EXACT
        ):
            ok = False
    checks.append(("word evaluation is a homomorphism; reduction-stable", ok, f"{samples} words"))
    return checks


SUITES = {
    "grassmann": suite_grassmann,
    "superlinalg": suite_superlinalg,
    "osp": suite_osp,
    "normalform": suite_normalform,
    "invariants": suite_invariants,
    "charvar": suite_charvar,
}


def run_suites(names, seed=0xF2C3, samples=10, mode=EXACT):
    """Run the requested suites; returns (all_passed, rows)."""
    rows = []
    for name in names:
        rng = random.Random(seed ^ hash(name) & 0xFFFF)
        for check, okay, detail in SUITES[name](rng, samples, mode):
            rows.append((name, check, okay, detail))
    return all(r[2] for r in rows), rows
