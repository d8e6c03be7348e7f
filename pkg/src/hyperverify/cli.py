"""Command-line front end: ``hyperverify <command> ...``."""

from __future__ import annotations

import argparse
import sys

import mpmath

from . import apery, catalog
from .exactnum import PrecisionError, const_real

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors already; keep that, but make sure
    # the message goes to stderr together with the usage line
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hyperverify", description="Exact and high-precision checks of hypergeometric and q-series identities.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("list", help="catalog ids, titles and anchors")

    v = sub.add_parser("verify", help="run one catalog entry")
    v.add_argument("--id", required=True)
    g = v.add_mutually_exclusive_group()
    g.add_argument("--order", type=_positive_int)
    g.add_argument("--prec", type=_positive_int)
    g.add_argument("--tol", type=_positive_float)
    v.add_argument("--allow-partial", action="store_true")

    va = sub.add_parser("verify-all", help="run every entry matching a glob")
    va.add_argument("--filter", default=None)
    va.add_argument("--jobs", type=_positive_int, default=1)
    va.add_argument("--report", default=None, help="write the JSON report here")
    va.add_argument("--allow-partial", action="store_true")

    a = sub.add_parser("apery", help="u_n, v_n and the residual u_n zeta(3) - v_n")
    a.add_argument("--n", type=_positive_int, required=True)
    a.add_argument("--prec", type=_positive_int, default=128)

    c = sub.add_parser("const", help="print a constant")
    c.add_argument("--name", choices=("mu0", "zeta3", "rate-limit"), required=True)
    c.add_argument("--prec", type=_positive_int, default=128)
    return p


def _digits(prec: int) -> int:
    return max(6, int(prec * 0.30103))


def _print_report(r: catalog.VerificationReport, out) -> None:
    extra = []
    if r.checked_order is not None:
        extra.append(f"order={r.checked_order}")
    if r.tolerance is not None:
        extra.append(f"tol={r.tolerance:.3g}")
    if r.first_mismatch:
        m = r.first_mismatch
        extra.append(f"first mismatch at {m['order']}: {m['lhs']} != {m['rhs']}")
    print(f"{r.status:<8}{r.id:<22}{' '.join(extra)}", file=out)
    if r.details:
        print(f"        {r.details}", file=out)
    print(f"        elapsed_ms={r.elapsed_ms}", file=out)


def _exit_code(reports, allow_partial: bool) -> int:
    bad = {"FAIL"} if allow_partial else {"FAIL", "PARTIAL"}
    return EXIT_FAIL if any(r.status in bad for r in reports) else EXIT_OK


def _cmd_list(args, out):
    for rec in catalog.catalog_entries():
        print(f"{rec.id:<22}{rec.title}  [{rec.paper_anchor}]", file=out)
    return EXIT_OK


def _cmd_verify(args, out):
    overrides = {k: getattr(args, k) for k in ("order", "prec", "tol") if getattr(args, k) is not None}
    report = catalog.run(args.id, overrides)
    _print_report(report, out)
    return _exit_code([report], args.allow_partial)


def _cmd_verify_all(args, out):
    reports = catalog.run_all(args.filter, args.jobs)
    for r in reports:
        _print_report(r, out)
    counts = {s: sum(r.status == s for r in reports) for s in catalog.STATUSES}
    print(" ".join(f"{s}={n}" for s, n in counts.items()), file=out)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(catalog.reports_to_json(reports) + "\n")
    return _exit_code(reports, args.allow_partial)


def _cmd_apery(args, out):
    n, prec = args.n, args.prec
    pair = apery.apery_sequences(n)[n]
    rows = {r.n: r for r in apery.integrality_report(n)}
    res = apery.residual(n, prec)
    rate = res.root(n)
    d = _digits(prec)
    print(f"n = {n}", file=out)
    print(f"u_n = {pair.u}", file=out)
    print(f"v_n = {pair.v}", file=out)
    print(f"residual u_n zeta(3) - v_n = {mpmath.nstr(res.value, d)}", file=out)
    print(f"rate so far = {mpmath.nstr(rate.value, d)}", file=out)
    with mpmath.workprec(prec):
        print(f"(sqrt(2)-1)^4 = {mpmath.nstr((mpmath.sqrt(2) - 1) ** 4, d)}", file=out)
    print(f"u_n integral: {rows[n].u_integer}", file=out)
    print(f"2 d_n^3 v_n integral: {rows[n].scaled_v_integer}", file=out)
    return EXIT_OK


def _cmd_const(args, out):
    prec = args.prec
    if args.name == "mu0":
        value = const_real("mu0", prec).value
    elif args.name == "zeta3":
        value = const_real("zeta(3)", prec).value
    else:
        with mpmath.workprec(prec):
            value = (mpmath.sqrt(2) - 1) ** 4
    print(mpmath.nstr(value, _digits(prec), strip_zeros=False), file=out)
    return EXIT_OK


_COMMANDS = {
    "list": _cmd_list,
    "verify": _cmd_verify,
    "verify-all": _cmd_verify_all,
    "apery": _cmd_apery,
    "const": _cmd_const,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args, sys.stdout)
    except catalog.UnknownIdentity as exc:
        print(f"hyperverify: unknown identity {exc.args[0]!r}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except (catalog.InvalidOverride, OSError, ValueError) as exc:
        print(f"hyperverify: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"hyperverify: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
