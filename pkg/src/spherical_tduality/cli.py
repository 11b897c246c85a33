"""Command-line interface.

Exit codes: 0 success, 1 usage, 2 parse error, 3 validation error,
4 scenario assertion failure.  Reports go to stdout as canonical JSON or
a plain table; repeated runs produce identical output.
"""

import argparse
import inspect
import sys
from fractions import Fraction

from .bundles import ValidationError
from .catalog import SCENARIOS, ScenarioFailure, run_example
from .complexes import induced_map_on_cohomology
from .engine import dualize, fourier_mukai_chain_map, verify_pair
from .modelio import ParseError, emit_model, emit_report, matrix_doc, parse_model
from .twisted import build_twisted

USAGE_EXIT, PARSE_EXIT, VALIDATION_EXIT, ASSERTION_EXIT = 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}")


def build_parser():
    parser = _Parser(
        prog="tdual",
        description="Exact models of odd sphere bundles and their T-duals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_model=True):
        if needs_model:
            p.add_argument("model", help="path to a model file")
        p.add_argument("--format", choices=["json", "table"], default="json")
        p.add_argument("--out", help="also write the report (or model) to this path")

    p = sub.add_parser("cohomology", help="de Rham cohomology of the model")
    add_common(p)

    p = sub.add_parser("twisted", help="twisted cohomology dims per residue class")
    add_common(p)

    p = sub.add_parser("dualize", help="construct and verify the T-dual")
    add_common(p)
    p.add_argument("--lambda", dest="lam", type=_rational, default=None,
                   help="Euler scaling as p/q (default: the model's, else 1)")

    p = sub.add_parser("verify", help="full pair verification incl. the transform")
    add_common(p)
    p.add_argument("--lambda", dest="lam", type=_rational, default=None)

    p = sub.add_parser("example", help="run a built-in scenario end to end")
    p.add_argument("name", choices=sorted(SCENARIOS))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--base", default=None)
    p.add_argument("--format", choices=["json", "table"], default="json")
    p.add_argument("--out", help="also write the report to this path")
    return parser


def _load(args, need_bundle=False, need_twist=False):
    model = parse_model(args.model)
    if need_bundle and model.bundle is None:
        raise ValidationError("model has no bundle section")
    if need_twist and model.twist is None:
        raise ValidationError("model has no twist section")
    return model


def _dims_doc(table):
    return {str(d): n for d, n in sorted(table.items())}


def cmd_cohomology(args):
    model = _load(args)
    report = {"command": "cohomology"}
    from .complexes import complex_of

    report["base"] = _dims_doc(complex_of(model.base).cohomology_dims())
    if model.bundle is not None:
        report["bundle_model"] = _dims_doc(model.bundle.complex().cohomology_dims())
    return report


def cmd_twisted(args):
    model = _load(args, need_bundle=True, need_twist=True)
    T = build_twisted(model.bundle.total, model.twist.element())
    return {
        "command": "twisted",
        "modulus": T.modulus,
        "twisted_dims": list(T.dims()),
    }


def _make_pair(args):
    model = _load(args, need_bundle=True, need_twist=True)
    lam = args.lam if args.lam is not None else (model.lam if model.lam else Fraction(1))
    return dualize(model.bundle, model.twist, lam), lam


def cmd_dualize(args):
    pair, lam = _make_pair(args)
    report = verify_pair(pair)
    dual_doc = emit_model(bundle=pair.right, twist=pair.right_twist, lam=lam)
    out = {
        "command": "dualize",
        "lambda": str(lam),
        "pairing": str(report.pairing),
        "unimodular": report.unimodular,
        "valid": report.ok,
        "checks": [
            {"check": name, "ok": ok, "detail": detail}
            for name, ok, detail in report.checks
        ],
        "dual_model": dual_doc,
    }
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dual_doc)
        out["dual_model_path"] = args.out
        del out["dual_model"]
    return out


def cmd_verify(args):
    pair, lam = _make_pair(args)
    report = verify_pair(pair)
    T_left, T_right = pair.twisted_complexes()
    f = fourier_mukai_chain_map(pair)
    induced = induced_map_on_cohomology(f)
    return {
        "command": "verify",
        "lambda": str(lam),
        "pairing": str(report.pairing),
        "unimodular": report.unimodular,
        "pair_valid": report.ok,
        "checks": [
            {"check": name, "ok": ok, "detail": detail}
            for name, ok, detail in report.checks
        ],
        "twisted_dims": {"left": list(T_left.dims()), "right": list(T_right.dims())},
        "degree_shift": f"{pair.shift} mod {pair.modulus}",
        "transform_isomorphism": induced.all_isomorphisms(),
        "induced_matrices": {
            str(r): matrix_doc(induced.matrices[r]) for r in sorted(induced.matrices)
        },
    }


def cmd_example(args):
    fn = SCENARIOS[args.name]
    accepted = set(inspect.signature(fn).parameters)
    kwargs = {}
    for key in ("n", "k", "base"):
        value = getattr(args, key)
        if value is not None:
            if key not in accepted:
                raise ValidationError(
                    f"example {args.name!r} does not take --{key}"
                )
            kwargs[key] = value
    return run_example(args.name, **kwargs)


COMMANDS = {
    "cohomology": cmd_cohomology,
    "twisted": cmd_twisted,
    "dualize": cmd_dualize,
    "verify": cmd_verify,
    "example": cmd_example,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code else 0
    try:
        report = COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return PARSE_EXIT
    except ScenarioFailure as exc:
        print(f"assertion failure: {exc}", file=sys.stderr)
        return ASSERTION_EXIT
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return VALIDATION_EXIT
    except OSError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return PARSE_EXIT
    text = emit_report(report, args.format)
    sys.stdout.write(text)
    if getattr(args, "out", None) and args.command != "dualize":
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
