"""Command-line interface: verify / normal-form / invariants / census / eval.

All payloads are JSON.  A matrix pair file looks like

    {"mode": "exact", "n": 8,
     "A": {"sl2": ["2", "0", "0", "1/2"]},
     "B": {"sl2": ["1", "1", "1", "2"],
           "odd": [<GrassmannElement>, <GrassmannElement>]}}

where an element can also be given as {"matrix": <SuperMatrix>} (validated
through the membership equations).  Exact scalars are fraction strings, with
an optional {"re": ..., "im": ...} form for Gaussian rationals.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .charvar import RepresentationPair, evaluate_word, parse_word
from .errors import OspCharError
from .grassmann import EXACT, FLOAT, GrassmannElement, QQi
from .invariants import generator_census, trace_word
from .normalform import osp_triangulate, sl2_triangulate
from .osp import OSpElement, compose_general, from_sl2
from .superlinalg import SuperMatrix
from .verification import SUITES, run_suites


def _parse_seed(text):
    return int(text, 0)


def _scalar_from_json(v, mode):
    if isinstance(v, dict):
        re, im = v.get("re", 0), v.get("im", 0)
    else:
        re, im = v, 0
    if mode == EXACT:
        return QQi(Fraction(str(re)), Fraction(str(im)))
    return complex(float(re), float(im))


def _element_from_json(obj, n, mode):
    if "matrix" in obj:
        m = SuperMatrix.from_json(obj["matrix"], mode)
        return OSpElement(m, validate=True)
    if "sl2" in obj:
        a, b, c, d = (_scalar_from_json(v, mode) for v in obj["sl2"])
        if "odd" in obj:
            gamma = GrassmannElement.from_json(obj["odd"][0], mode)
            delta = GrassmannElement.from_json(obj["odd"][1], mode)
            return compose_general(a, b, c, d, gamma, delta, n=n, mode=mode)
        return from_sl2(a, b, c, d, n=n, mode=mode)
    raise ValueError("element needs either a 'matrix' or an 'sl2' key")


def _load_pair(path):
    with open(path) as fh:
        data = json.load(fh)
    mode = data.get("mode", EXACT)
    n = data.get("n", 8)
    a = _element_from_json(data["A"], n, mode)
    b = _element_from_json(data["B"], n, mode)
    return RepresentationPair(a, b, validate=False), mode


def _emit(payload):
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=1))
    sys.stdout.write("\n")


def _cmd_verify(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    passed, rows = run_suites(
        names, seed=args.seed, samples=args.samples, mode=args.mode
    )
    width = max(len(r[1]) for r in rows) + 2
    for suite, check, okay, detail in rows:
        flag = "PASS" if okay else "FAIL"
        print(f"[{flag}] {suite:12s} {check:{width}s} {detail}")
    print(f"{'all suites passed' if passed else 'FAILURES PRESENT'}")
    return 0 if passed else 1


def _pair_is_bosonic(rep):
    for g in (rep.image_a, rep.image_b):
        for row in g.matrix.entries:
            for e in row:
                if not e.odd_part().is_zero():
                    return False
    return True


def _matrix_is_diagonal_embedding(g):
    m = g.matrix
    one = GrassmannElement.one(m.n, m.mode)
    off = [m.entries[i][j] for i in range(3) for j in range(3) if i != j]
    return all(e.is_zero() for e in off) and m.entries[2][2] == one


def _cmd_normal_form(args):
    rep, mode = _load_pair(args.input)
    use_float = args.mode == "float" or mode == FLOAT
    if _pair_is_bosonic(rep) and (use_float or not _matrix_is_diagonal_embedding(rep.image_a)):
        bodies = []
        for g in (rep.image_a, rep.image_b):
            body = [[complex(0)] * 2 for _ in range(2)]
            for i in range(2):
                for j in range(2):
                    b = g.matrix.entries[i][j].body()
                    body[i][j] = b.to_complex() if isinstance(b, QQi) else complex(b)
            bodies.append(body)
        rec = sl2_triangulate(bodies[0], bodies[1])
    else:
        a, b = rep.image_a, rep.image_b
        if use_float and mode == EXACT:
            a = OSpElement(a.matrix.to_float(), validate=False)
            b = OSpElement(b.matrix.to_float(), validate=False)
        rec = osp_triangulate(a, b)
    _emit(rec.to_json())
    return 0


def _cmd_invariants(args):
    rep, _mode = _load_pair(args.input)
    words = [w.strip() for w in args.words.split(",") if w.strip() or w == ""]
    if args.words == "":
        words = [""]
    out = {}
    for w in words:
        out[w] = trace_word(parse_word(w), rep).to_json()
    _emit(out)
    return 0


def _cmd_eval(args):
    rep, _mode = _load_pair(args.input)
    matrix = evaluate_word(parse_word(args.word), rep)
    _emit(matrix.to_json())
    return 0


def _cmd_census(args):
    report = generator_census(
        seed=args.seed,
        n=args.n,
        census_degree=args.degree,
        census_samples=args.samples,
    )
    _emit(report)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ospchar",
        description="Exact OSp(1|2) character-variety toolkit",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the property suites")
    p.add_argument("--suite", default="all", choices=["all", *SUITES])
    p.add_argument("--seed", type=_parse_seed, default=0xF2C3)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--mode", default=EXACT, choices=[EXACT, FLOAT])
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("normal-form", help="triangulate a matrix pair")
    p.add_argument("--input", required=True)
    p.add_argument("--mode", default=None, choices=[FLOAT])
    p.set_defaults(func=_cmd_normal_form)

    p = sub.add_parser("invariants", help="evaluate trace words")
    p.add_argument("--input", required=True)
    p.add_argument("--words", required=True)
    p.set_defaults(func=_cmd_invariants)

    p = sub.add_parser("census", help="relation and generator census report")
    p.add_argument("--degree", type=int, default=4)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=_parse_seed, default=0xF2C3)
    p.add_argument("--n", type=int, default=8)
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("eval", help="evaluate a free-group word")
    p.add_argument("--input", required=True)
    p.add_argument("--word", required=True, default="")
    p.set_defaults(func=_cmd_eval)
    return parser


def cli_main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except OspCharError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():  # console entry point
    raise SystemExit(cli_main())


if __name__ == "__main__":
    main()
