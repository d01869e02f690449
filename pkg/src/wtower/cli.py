"""Batch command-line front end: apply, matrix, verify, graph, hierarchy, moments.

Exit codes: 0 on success, 1 when a verification check fails, 2 on usage errors.
Every structured output starts with a metadata block so that files produced
from the same arguments are byte-identical.
"""

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction

from . import __version__
from . import beta_ensemble, class_algebra, hilb, jack
from .operators import (WindowError, apply, build_cut, build_D, build_E, build_E1, build_join,
                        build_Ln_beta, build_W0_beta, build_W2, hierarchy, operator_to_json,
                        verify_hierarchy)
from .spectrum import characteristic_polynomial, eigenvalues
from .symfun import format_fraction, format_symfun, parse_symfun, symfun_to_json

log = logging.getLogger("wtower")

OPERATORS = ("W2", "C", "J", "D", "E", "E1", "W0beta", "Ln", "Wn")
SUITES = ("cutjoin", "ladder", "jm", "virasoro", "w0constraint", "jack", "heisenberg", "hurwitz", "hierarchy")
MATRIX_CAP = {"p": 10, "v": 10, "jack": 8, "fixed_point": 6}
HIERARCHY_CAP = {"level": 6, "window": 10}
RATIONAL_OPTIONS = ("--beta", "--alpha", "--eps1", "--eps2")


class UsageError(Exception):
    pass


def rational(text):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")


# --- output helpers --------------------------------------------------------------

def metadata(args, caps=None):
    params = {k: (format_fraction(v) if isinstance(v, Fraction) else v)
              for k, v in sorted(vars(args).items())
              if k not in ("func", "output", "format", "verbose") and v is not None}
    return {"tool": "wtower", "version": __version__, "params": params, "caps": caps or {}}


def emit(text, args):
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def dump_json(meta, result):
    return json.dumps({"meta": meta, "result": result}, indent=2, sort_keys=True) + "\n"


def comment_header(meta, prefix):
    return "".join(f"{prefix} {line}\n" for line in json.dumps(meta, sort_keys=True).splitlines())


def label(lam):
    return "(" + ",".join(map(str, lam)) + ")"


# --- operator lookup -------------------------------------------------------------

def build_operator(args, input_degree=None):
    name = args.op
    if name == "W2":
        return build_W2()
    if name == "C":
        return build_cut()
    if name == "J":
        return build_join()
    if name == "D":
        return build_D()
    if name == "E":
        return build_E()
    if name == "E1":
        return build_E1()
    if name == "W0beta":
        return build_W0_beta(_need(args, "beta"), _need(args, "N"))
    if name == "Ln":
        index = _need(args, "index")
        return build_Ln_beta(index, _need(args, "beta"), _need(args, "N"), shifted=args.shifted)
    if name == "Wn":
        level = _need(args, "level")
        window = args.window if args.window is not None else input_degree
        if window is None:
            raise UsageError("Wn needs --window")
        _cap("level", level, HIERARCHY_CAP["level"])
        _cap("window", window, HIERARCHY_CAP["window"])
        return hierarchy(level, window)
    raise UsageError(f"unknown operator {name!r}")


def _need(args, attr):
    value = getattr(args, attr, None)
    if value is None:
        raise UsageError(f"--{attr} is required for --op {args.op}")
    return value


def _cap(name, value, cap):
    if value > cap:
        raise UsageError(f"{name} = {value} exceeds cap {cap}")


# --- subcommands -----------------------------------------------------------------

def cmd_apply(args):
    try:
        f = parse_symfun(args.input)
    except ValueError as exc:
        raise UsageError(str(exc))
    degrees = f.degrees()
    op = build_operator(args, max(degrees) if degrees else 0)
    image = apply(op, f)
    if args.format == "json":
        emit(dump_json(metadata(args), {"p": format_symfun(image, "p"), "v": format_symfun(image, "v"),
                                        "terms": symfun_to_json(image)}), args)
    else:
        emit(format_symfun(image, args.basis) + "\n", args)
    return 0


def cmd_matrix(args):
    basis = "fixed_point" if args.basis == "fp" else args.basis
    _cap("n", args.n, MATRIX_CAP[basis])
    params = None
    if basis == "jack" and args.alpha is None:
        raise UsageError("--basis jack needs --alpha")
    if basis == "fixed_point":
        params = hilb.EquivParams(_need(args, "eps1"), _need(args, "eps2"))
    op = build_operator(args, args.n)
    if op.degree() is None:
        raise UsageError(f"operator {args.op} is not homogeneous")
    rows, cols, mat = hilb.matrix_in_basis(op, args.n, basis, alpha=args.alpha, params=params)
    meta = metadata(args, {"n": MATRIX_CAP[basis]})
    result = {"convention": "rows are source partitions, columns are targets",
              "rows": [list(r) for r in rows], "cols": [list(c) for c in cols],
              "matrix": [[format_fraction(x) for x in row] for row in mat]}
    if args.spectrum:
        if len(rows) != len(cols):
            raise UsageError("--spectrum needs a degree-preserving operator")
        result["charpoly"] = [format_fraction(c) for c in characteristic_polynomial(mat)]
        try:
            result["eigenvalues"] = [format_fraction(e) for e in eigenvalues(mat)]
        except ValueError:
            result["eigenvalues"] = None
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["source\\target"] + [label(c) for c in cols])
        for r, row in zip(rows, mat):
            writer.writerow([label(r)] + [format_fraction(x) for x in row])
        emit(comment_header(meta, "#") + buf.getvalue(), args)
    else:
        emit(dump_json(meta, result), args)
    return 0


def run_suite(args):
    suite = args.suite
    if suite == "cutjoin":
        return class_algebra.verify_cutjoin_intertwining(_need(args, "n"), normalized=not args.unnormalized)
    if suite == "ladder":
        return class_algebra.verify_ladder(_need(args, "n"))
    if suite == "jm":
        return class_algebra.verify_jm_lifting(_need(args, "n"))
    if suite == "hurwitz":
        return class_algebra.verify_hurwitz(_need(args, "n"), _need(args, "r"))
    if suite == "virasoro":
        return beta_ensemble.verify_virasoro(_need(args, "N"), _need(args, "beta"), _need(args, "d"),
                                             shifted=not args.unshifted)
    if suite == "w0constraint":
        return beta_ensemble.verify_W0_constraint(_need(args, "N"), _need(args, "beta"), _need(args, "d"))
    if suite == "jack":
        return jack.verify_jack_diagonality(_need(args, "n"), _need(args, "beta"), args.alpha)
    if suite == "heisenberg":
        params = hilb.EquivParams(_need(args, "eps1"), _need(args, "eps2"))
        return hilb.verify_heisenberg(params, args.n if args.n is not None else 4)
    if suite == "hierarchy":
        return verify_hierarchy(args.d if args.d is not None else 10)
    raise UsageError(f"unknown suite {suite!r}")


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return format_fraction(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def cmd_verify(args):
    for attr in ("beta", "N"):
        value = getattr(args, attr, None)
        if isinstance(value, Fraction) and args.suite in ("virasoro", "w0constraint"):
            if value.denominator != 1:
                raise UsageError(f"--{attr} must be an integer for suite {args.suite}")
            setattr(args, attr, int(value))
    report = run_suite(args)
    emit(dump_json(metadata(args), _jsonable(report)), args)
    if not report["passed"]:
        log.error("suite %s failed", args.suite)
    return 0 if report["passed"] else 1


def cmd_graph(args):
    graph = hilb.rimhook_graph(args.n)
    meta = metadata(args, {"n": 10})
    if args.format == "dot":
        emit(comment_header(meta, "//") + hilb.graph_to_dot(graph), args)
    else:
        emit(dump_json(meta, graph), args)
    return 0


def cmd_hierarchy(args):
    _cap("level", args.level, HIERARCHY_CAP["level"])
    _cap("window", args.window, HIERARCHY_CAP["window"])
    op = hierarchy(args.level, args.window)
    result = {"level": args.level, "valid_up_to": args.window, "degree_shift": op.degree(),
              "degree_check": op.degree() == args.level, "terms": operator_to_json(op)}
    emit(dump_json(metadata(args, HIERARCHY_CAP), result), args)
    return 0 if result["degree_check"] else 1


def cmd_moments(args):
    table = beta_ensemble.build_moment_table(args.N, int(args.beta), args.max_weight)
    meta = metadata(args, {"N": beta_ensemble.MAX_N, "beta": beta_ensemble.MAX_BETA,
                           "total_degree": beta_ensemble.MAX_TOTAL_DEGREE})
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["partition", "moment"])
        for row in table.to_json()["moments"]:
            writer.writerow([label(row["partition"]), row["value"]])
        emit(comment_header(meta, "#") + buf.getvalue(), args)
    else:
        emit(dump_json(meta, table.to_json()), args)
    return 0


# --- argument parsing ------------------------------------------------------------

def _add_params(p):
    p.add_argument("--beta", type=rational)
    p.add_argument("--N", type=int)
    p.add_argument("--alpha", type=rational)
    p.add_argument("--eps1", type=rational)
    p.add_argument("--eps2", type=rational)


def make_parser():
    parser = argparse.ArgumentParser(prog="wtower", description="Exact W-operator tower computations.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats, default):
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--output", "-o")

    p = sub.add_parser("apply", help="apply an operator to a symmetric function")
    p.add_argument("--op", required=True, choices=OPERATORS)
    p.add_argument("--input", required=True)
    p.add_argument("--basis", choices=("p", "v"), default="p")
    p.add_argument("--index", type=int, help="n for Ln")
    p.add_argument("--shifted", action="store_true")
    p.add_argument("--level", type=int, help="n for Wn")
    p.add_argument("--window", type=int)
    _add_params(p)
    common(p, ("text", "json"), "text")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser("matrix", help="matrix of an operator on degree n")
    p.add_argument("--op", required=True, choices=OPERATORS)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--basis", choices=("p", "v", "jack", "fixed_point", "fp"), default="v")
    p.add_argument("--index", type=int)
    p.add_argument("--shifted", action="store_true")
    p.add_argument("--level", type=int)
    p.add_argument("--window", type=int)
    p.add_argument("--spectrum", action="store_true", help="add characteristic polynomial and eigenvalues")
    _add_params(p)
    common(p, ("json", "csv"), "json")
    p.set_defaults(func=cmd_matrix)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--unshifted", action="store_true")
    p.add_argument("--unnormalized", action="store_true")
    _add_params(p)
    common(p, ("json",), "json")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("graph", help="rim-hook cut/join graph of W_[2]")
    p.add_argument("--n", type=int, required=True)
    common(p, ("dot", "json"), "json")
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("hierarchy", help="emit W^(n) as a term list")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--window", type=int, default=6)
    common(p, ("json",), "json")
    p.set_defaults(func=cmd_hierarchy)

    p = sub.add_parser("moments", help="Gaussian beta-ensemble moment table")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--beta", type=rational, required=True)
    p.add_argument("--max-weight", type=int, default=8)
    common(p, ("json", "csv"), "json")
    p.set_defaults(func=cmd_moments)
    return parser


def _glue_negative_values(argv):
    """Let ``--eps2 -13/5`` through: argparse only recognises plain negative numbers."""
    out = []
    it = iter(argv)
    for token in it:
        if token in RATIONAL_OPTIONS:
            value = next(it, None)
            out.append(token if value is None else f"{token}={value}")
        else:
            out.append(token)
    return out


def main(argv=None):
    parser = make_parser()
    argv = _glue_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, WindowError, ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
