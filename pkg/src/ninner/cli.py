"""``ninner`` command-line front end.

Exit codes: 0 success, 1 unexpected result or disagreement, 2 parse or
usage error, 3 dimension mismatch, 4 collinear predictors.

Conditioner order matters for the iterated product: ``--cond a,b,c`` is read
right to left as ``(x, y | x_n, ..., x_2)``, so ``a`` is ``x_n`` and is peeled
first, and ``c`` is ``x_2``.
"""

import argparse
import sys

from ninner import applications as apps
from ninner import dodgson, io, suites
from ninner.core import InnerSpace, determinant
from ninner.errors import (
    DimensionMismatchError,
    InternalConsistencyError,
    NInnerError,
    ParseError,
    PreconditionError,
    SingularSystemError,
)
from ninner.products import (
    ConditionedPair,
    e_factor,
    iterated_2_inner,
    iterated_scale,
    standard_n_inner,
)
from ninner.scalar import DEFAULT_TOL, EXACT, FLOAT, default_mode, format_scalar, isclose, zero
from ninner.serialize import dumps

OK, FAILED, USAGE, DIMENSION, COLLINEAR = 0, 1, 2, 3, 4


def _fmt(v):
    if isinstance(v, (list, tuple)):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    return format_scalar(v) if v is not None else "-"


def _u64(text):
    value = int(text, 0)
    if not 0 <= value < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def _indices(text):
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad index list {text!r}") from None


def _emit(args, payload, lines):
    if args.json:
        print(dumps(payload))
    else:
        print("\n".join(lines))


# --- product --------------------------------------------------------------


def cmd_product(args):
    vectors = io.read_vectors(args.file, args.mode)
    space = InnerSpace(len(vectors[0].coords), None, args.mode, args.tol)

    def pick(i, what):
        if not 0 <= i < len(vectors):
            raise PreconditionError(f"{what} index {i} out of range 0..{len(vectors) - 1}")
        return vectors[i]

    xi, yi, conds = args.x, args.y, list(args.cond)
    if not conds:
        raise PreconditionError("at least one conditioner is required (--cond)")
    if args.swap_roles:
        # Exchange x with the innermost conditioner x_2; y follows when it shares x's index.
        last = conds[-1]
        if yi == xi:
            yi = last
        conds[-1], xi = xi, last
    p = ConditionedPair(pick(xi, "--x"), pick(yi, "--y"), [pick(c, "--cond") for c in conds])

    iterated = iterated_2_inner(space, p)
    standard = standard_n_inner(space, p)
    e = e_factor(space, p.conditioners)
    residual = iterated - e * standard
    if args.mode == EXACT:
        consistent = residual == 0
    else:
        consistent = isclose(iterated, e * standard, args.tol, iterated_scale(space, p.x, p.y, p.conditioners))
    value = iterated if args.kind == "iterated" else standard
    payload = {
        "kind": args.kind,
        "mode": args.mode,
        "n": p.n,
        "x": xi,
        "y": yi,
        "conditioners": conds,
        "value": value,
        "iterated": iterated,
        "standard": standard,
        "e_factor": e,
        "residual": residual,
        "consistent": consistent,
    }
    lines = [
        f"{args.kind} product (x={xi}, y={yi} | {', '.join(map(str, conds))}), n={p.n}: {_fmt(value)}",
        f"  iterated  {_fmt(iterated)}",
        f"  standard  {_fmt(standard)}",
        f"  E_n       {_fmt(e)}",
        f"  residual  {_fmt(residual)}",
    ]
    _emit(args, payload, lines)
    return OK if consistent else FAILED


# --- verify ---------------------------------------------------------------


def cmd_verify(args):
    try:
        cfg = suites.SuiteConfig(
            suite=args.suite, dim=args.dim, n=args.n, trials=args.trials,
            seed=args.seed, mode=args.mode, tol=args.tol,
        )
    except ValueError as exc:
        raise PreconditionError(str(exc)) from None
    run = suites.run(cfg)
    payload = {
        "config": cfg,
        "ok": run.ok,
        "checks": [
            {
                "suite": c.suite,
                "name": c.name,
                "trials": c.trials,
                "passed": c.passed,
                "expect_fail": c.expect_fail,
                "ok": c.ok,
                "witness": c.witness,
            }
            for c in run.checks
        ],
    }
    lines = [f"verify suite={cfg.suite} n={cfg.n} dim={cfg.dim} trials={cfg.trials} mode={cfg.mode} seed={cfg.seed}"]
    for c in run.checks:
        if c.expect_fail:
            tag = "XFAIL" if c.ok else "XPASS"
        else:
            tag = "PASS" if c.ok else "FAIL"
        lines.append(f"{tag:5} {c.suite}/{c.name}: {c.passed}/{c.trials}")
        if c.witness is not None and (c.expect_fail or not c.ok):
            lines.append(f"      witness: {dumps(c.witness).replace(chr(10), ' ')}")
    lines.append("OK" if run.ok else "FAILED")
    _emit(args, payload, lines)
    return OK if run.ok else FAILED


# --- regress --------------------------------------------------------------


def cmd_regress(args):
    preds = args.predictors.split(",")
    if len(preds) != 2:
        raise PreconditionError("--predictors takes exactly two column names")
    ds = io.read_dataset(args.file, preds[0], preds[1], args.response, args.mode)
    fits = apps.fit_all(ds, args.tol)
    methods = sorted(fits)
    discrepancy = zero(args.mode)
    for i, m in enumerate(methods):
        for other in methods[i + 1:]:
            for p, q in zip(fits[m].coefficients, fits[other].coefficients):
                discrepancy = max(discrepancy, abs(p - q))
    ref = fits[apps.NORMAL_EQUATIONS]
    agree = all(apps.fits_agree(f, ref, args.mode, args.tol) for f in fits.values())
    payload = {
        "mode": args.mode,
        "predictors": preds,
        "response": args.response,
        "samples": len(ds),
        "fits": fits,
        "max_discrepancy": discrepancy,
        "agree": agree,
    }
    lines = [f"regress {args.response} ~ a*{preds[0]} + b*{preds[1]} + c  ({len(ds)} samples, {args.mode})"]
    for m in methods:
        f = fits[m]
        lines.append(f"  {m:18} a={_fmt(f.a)}  b={_fmt(f.b)}  c={_fmt(f.c)}  rss={_fmt(f.residual_sum_squares)}")
    lines.append(f"  max pairwise discrepancy {_fmt(discrepancy)}")
    _emit(args, payload, lines)
    return OK if agree else FAILED


# --- dodgson --------------------------------------------------------------


def cmd_dodgson(args):
    m = io.read_matrix(args.file, args.mode)
    r40 = dodgson.dodgson_residual_e40(m)
    r41 = dodgson.dodgson_residual_e41(m)
    det = determinant(m)
    cond = dodgson.condensation_report(m)
    if args.mode == EXACT:
        ok = r40 == 0 and r41 == 0 and cond.value == det
    else:
        h = suites._hadamard(m)
        ok = (
            isclose(r40, 0.0, args.tol, 4 * h * h)
            and isclose(r41, 0.0, args.tol, 4 * h * h)
            and isclose(cond.value, det, args.tol, h)
        )
    payload = {
        "mode": args.mode,
        "order": m.order,
        "determinant": det,
        "condensation": cond,
        "residual_leading_block": r40,
        "residual_interior": r41,
        "ok": ok,
    }
    lines = [
        f"matrix order {m.order} ({args.mode})",
        f"  determinant              {_fmt(det)}",
        f"  condensation             {_fmt(cond.value)}  rotations={cond.rotations} fell_back={cond.fell_back}",
        f"  leading-block residual   {_fmt(r40)}",
        f"  interior residual        {_fmt(r41)}",
    ]
    _emit(args, payload, lines)
    return OK if ok else FAILED


# --- argument parsing -----------------------------------------------------


def _common(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--mode", choices=(EXACT, FLOAT), default=default(None),
                        help="scalar mode (default exact, or $NINNER_DEFAULT_MODE)")
    parser.add_argument("--tol", type=float, default=default(DEFAULT_TOL), help="float tolerance (default 1e-9)")
    parser.add_argument("--json", action="store_true", default=default(False), help="emit JSON")
    parser.add_argument("--seed", type=_u64, default=default(0), help="64-bit RNG seed")


def build_parser():
    parser = argparse.ArgumentParser(prog="ninner", description=__doc__.split("\n")[0])
    _common(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _common(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("product", parents=[common], help="evaluate a product on vectors from a file",
                       description="Conditioners are listed as x_n,...,x_2; the first one is peeled first.")
    p.add_argument("kind", choices=("iterated", "standard"))
    p.add_argument("--file", required=True, help="vector file, one vector per line")
    p.add_argument("--x", type=int, required=True, help="0-based line index of x")
    p.add_argument("--y", type=int, required=True, help="0-based line index of y")
    p.add_argument("--cond", type=_indices, default=[], help="conditioner indices x_n,...,x_2")
    p.add_argument("--swap-roles", action="store_true", help="exchange x (and y if equal) with x_2")
    p.set_defaults(func=cmd_product)

    v = sub.add_parser("verify", parents=[common], help="run randomized identity suites")
    v.add_argument("--suite", choices=suites.SUITES + (suites.ALL,), default=suites.ALL)
    v.add_argument("--n", type=int, default=3)
    v.add_argument("--dim", type=int, default=None, help="ambient dimension (default n+1)")
    v.add_argument("--trials", type=int, default=50)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("regress", parents=[common], help="fit z = a*x + b*y + c three ways")
    r.add_argument("--file", required=True, help="CSV with a header row")
    r.add_argument("--predictors", default=None, help="two column names, comma separated")
    r.add_argument("--response", default=None, help="response column name")
    r.set_defaults(func=cmd_regress)

    d = sub.add_parser("dodgson", parents=[common], help="Dodgson residuals for a matrix file")
    d.add_argument("--file", required=True, help="square matrix, one row per line")
    d.set_defaults(func=cmd_dodgson)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.mode is None:
        args.mode = default_mode()
    try:
        if args.command == "regress":
            return _regress_defaults(args)
        return args.func(args)
    except DimensionMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DIMENSION
    except SingularSystemError as exc:
        print(f"error: {exc} (vanishing value {_fmt(exc.witness)})", file=sys.stderr)
        return COLLINEAR
    except (ParseError, PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (InternalConsistencyError, NInnerError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED


def _regress_defaults(args):
    # Without explicit names the first three CSV columns are x, y, z.
    if args.predictors is None or args.response is None:
        header = io.dataset_header(args.file)
        if args.predictors is None:
            if len(header) < 2:
                raise ParseError("CSV needs at least two predictor columns", 1)
            args.predictors = ",".join(header[:2])
        if args.response is None:
            if len(header) < 3:
                raise ParseError("CSV needs a response column", 1)
            args.response = header[2]
    return cmd_regress(args)


if __name__ == "__main__":
    sys.exit(main())
