"""Command-line front end.

Exit codes: 0 success, 2 domain validation failure, 3 input/parse failure.
"""

from __future__ import annotations

import argparse
import sys

from . import commands as C
from .errors import InputError, ValidationError
from .report import dumps, error_section, new_report

EXIT_OK, EXIT_INVALID, EXIT_INPUT = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; that code is reserved here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _source(args, required=True):
    src = args.source or args.algebra
    if src is None and required:
        raise InputError("no algebra given (positional SOURCE or --algebra FILE|catalog:NAME)")
    return src


def _common(p, source=True):
    if source:
        p.add_argument("source", nargs="?", help="algebra file or catalog:NAME")
        p.add_argument("--algebra", help="algebra file or catalog:NAME")
    p.add_argument("--out", help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="weightedlie", description="Weighted Lie algebras, contractions and operator systems.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="structural report of an algebra")
    _common(p)
    p.add_argument("--basis", help="comma-separated linear expressions, e.g. X1,X2,Y+T1")
    p.add_argument("--weights", help="1,1,3 or X1:1,X2:1")
    p.add_argument("--grading", help="1,1,2,3,3 or X1:1,...")

    p = sub.add_parser("check-system", help="validate a commuting self-adjoint operator system")
    _common(p)
    p.add_argument("--op", action="append", default=[], help="operator expression (repeatable)")
    p.add_argument("--grading")
    p.add_argument("--derivation", help="catalog:NAME or X1=X2;X2=-X1;...")

    p = sub.add_parser("contract", help="contraction of a weighted basis")
    _common(p)
    p.add_argument("--basis")
    p.add_argument("--weights")

    p = sub.add_parser("product", help="direct product of algebras and their weighted bases")
    p.add_argument("sources", nargs="*", help="algebra files or catalog:NAME")
    p.add_argument("--algebra", action="append", default=[], help="factor (repeatable)")
    p.add_argument("--weights", action="append", help="weights per factor (repeatable, in order)")
    p.add_argument("--basis", action="append", help="basis per factor (repeatable, in order)")
    p.add_argument("--out")

    sp = sub.add_parser("spectrum", help="abelian spectral checks")
    ssub = sp.add_subparsers(dest="sub", required=True, parser_class=_Parser)

    def spec_parser(name, help):
        q = ssub.add_parser(name, help=help)
        q.add_argument("--algebra", help="abelian algebra (default: abelian on X1..XN used by --op)")
        q.add_argument("--op", "--L", dest="op", action="append", default=[], help="operator (repeatable)")
        q.add_argument("--out")
        return q

    q = spec_parser("sample", "sample the joint spectrum and Plancherel measure")
    q.add_argument("--scheme", default="stratified", choices=["grid", "mc", "stratified"])
    q.add_argument("--samples", type=int, default=10**6)
    q.add_argument("--radius", type=float, default=4.0, help="frequency truncation |xi_j| <= R")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--edges", action="append", help="LO:HI:N per coordinate (or once for all)")
    q.add_argument("--tol", type=float, default=0.02)
    q.add_argument("--points", help="CSV point cloud output")
    q.add_argument("--cloud", help="EmpiricalSpectrum JSON output")

    q = spec_parser("plancherel", "compare both sides of the Plancherel identity")
    q.add_argument("--f", default="exp(-lambda)")
    q.add_argument("--tol", type=float, default=1e-6)

    q = spec_parser("polar", "sigma(eps_t A) / sigma(A) against t^Q")
    q.add_argument("--grading")
    q.add_argument("--box", action="append", help="LO:HI per coordinate (default 0:1)")
    q.add_argument("--t", default="2")
    q.add_argument("--tol", type=float, default=1e-4)

    q = spec_parser("pushforward", "pushforward of sigma under a polynomial change of generators")
    q.add_argument("--P", action="append", required=True, help="polynomial in lambda / lambda1.. (repeatable)")
    q.add_argument("--ref-op", action="append", help="directly sampled comparison system (repeatable)")
    q.add_argument("--samples", type=int, default=10**6)
    q.add_argument("--radius", type=float, default=4.0)
    q.add_argument("--ref-radius", type=float)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--edges", action="append", help="LO:HI:N (default 0:4:20)")
    q.add_argument("--tol", type=float, default=0.02)
    q.add_argument("--points", help="CSV of the pushed-forward cloud")

    q = spec_parser("kernel", "convolution kernel of f(L), optional convolution identity")
    q.add_argument("--f", default="exp(-lambda)")
    q.add_argument("--g", help="second multiplier: checks (fg) kernel = g kernel * f kernel")
    q.add_argument("--extent", type=float, default=20.0)
    q.add_argument("--step", type=float, default=0.05)
    q.add_argument("--heat", help="compare g kernel * f kernel with the heat kernel at this time")
    q.add_argument("--tol", type=float, default=1e-5)

    q = spec_parser("growth", "log-log growth of sigma on balls")
    q.add_argument("--radii", default="1,2,4,8,16")
    q.add_argument("--margin", type=float, default=0.25)

    p = sub.add_parser("catalog", help="list catalog entries or show one")
    p.add_argument("name", nargs="?")
    p.add_argument("--out")
    return ap


def _run(args) -> tuple[dict, int]:
    cmd = args.command
    if cmd == "analyze":
        return C.cmd_analyze(_source(args), args.basis, args.weights, args.grading), EXIT_OK
    if cmd == "check-system":
        rep, ok = C.cmd_check_system(_source(args), args.op, args.grading, args.derivation)
        return rep, EXIT_OK if ok else EXIT_INVALID
    if cmd == "contract":
        return C.cmd_contract(_source(args), args.basis, args.weights), EXIT_OK
    if cmd == "product":
        return C.cmd_product(list(args.sources) + list(args.algebra), args.weights, args.basis), EXIT_OK
    if cmd == "catalog":
        return C.cmd_catalog(args.name), EXIT_OK
    sub = args.sub
    if sub == "sample":
        rep = C.cmd_spectrum_sample(
            args.op, args.algebra, args.scheme, args.samples, args.radius, args.seed, args.edges, args.tol, args.points, args.cloud
        )
    elif sub == "plancherel":
        rep = C.cmd_spectrum_plancherel(args.op, args.f, args.algebra, args.tol)
    elif sub == "polar":
        rep = C.cmd_spectrum_polar(args.op, args.algebra, args.grading, args.box or "0:1", args.t, args.tol)
    elif sub == "pushforward":
        rep = C.cmd_spectrum_pushforward(
            args.op, args.P, args.ref_op, args.algebra, args.samples, args.radius, args.ref_radius, args.seed,
            args.edges or "0:4:20", args.tol, args.points,
        )
    elif sub == "kernel":
        rep = C.cmd_spectrum_kernel(args.op, args.f, args.g, args.algebra, args.extent, args.step, args.heat, args.tol)
    else:
        rep = C.cmd_spectrum_growth(args.op, args.algebra, args.radii, args.margin)
    return rep, EXIT_OK


def _emit(rep: dict, out: str | None):
    text = dumps(rep)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# options whose values may start with '-' (expressions, intervals)
_EXPR_OPTIONS = {
    "--op", "--L", "--ref-op", "--P", "--f", "--g", "--basis", "--weights", "--grading", "--derivation",
    "--box", "--edges", "--t", "--radii",
}


def _glue_expressions(argv: list[str]) -> list[str]:
    """``--op -(X1^2)`` -> ``--op=-(X1^2)`` so argparse does not read a flag."""
    out, k = [], 0
    while k < len(argv):
        a = argv[k]
        if a in _EXPR_OPTIONS and k + 1 < len(argv):
            out.append(f"{a}={argv[k + 1]}")
            k += 2
        else:
            out.append(a)
            k += 1
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = build_parser().parse_args(_glue_expressions(argv))
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    name = args.command if args.command != "spectrum" else f"spectrum {args.sub}"
    try:
        rep, code = _run(args)
        if code == EXIT_INVALID:
            err = rep.get("error", {})
            print(f"validation failure: {err.get('type')}: {err.get('message')}", file=sys.stderr)
    except ValidationError as exc:
        rep, code = new_report(name, str(getattr(args, "source", None) or getattr(args, "algebra", None))), EXIT_INVALID
        rep["status"], rep["error"] = "invalid", error_section(exc)
        print(f"validation failure: {type(exc).__name__}: {exc}", file=sys.stderr)
    except InputError as exc:
        rep, code = new_report(name, str(getattr(args, "source", None) or getattr(args, "algebra", None))), EXIT_INPUT
        rep["status"], rep["error"] = "input_error", error_section(exc)
        print(f"input error: {type(exc).__name__}: {exc}", file=sys.stderr)
    _emit(rep, getattr(args, "out", None))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
