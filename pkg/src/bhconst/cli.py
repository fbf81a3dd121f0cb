"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import classical, khinchin, subexp, verifier
from .errors import BHConstError
from .output import Format, OutputSpec, default_format, emit, render

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

D_HELP = (
    "subexponential parameter D (default 1.44: the constant comes from an external "
    "construction and is only known to be close to 1.44; the closed formula holds for any D)"
)


class UsageError(Exception):
    pass


def real(text: str) -> float:
    """Parse a real number, accepting exact rationals such as ``2/3``."""
    try:
        value = float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a real number or fraction: {text!r}")
    return value


def positive_real(text: str) -> float:
    v = real(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _subexp_params(args) -> subexp.SubexpParams:
    c2 = None if args.c2 is None else classical.LogValue.of(args.c2)
    return subexp.SubexpParams(args.D, subexp.Field(args.field), c2)


def _add_subexp_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--D", type=positive_real, default=subexp.DEFAULT_D, help=D_HELP)
    p.add_argument("--field", choices=[f.value for f in subexp.Field], default="real",
                   help="scalar field selecting the default C2 (sqrt(2) real, 2/sqrt(pi) complex)")
    p.add_argument("--c2", type=positive_real, default=None, help="override C2")


# -- commands ---------------------------------------------------------------

def cmd_constants(args, spec: OutputSpec) -> int:
    lo, hi = args.n_min, args.n_max
    if hi < lo:
        raise UsageError(f"empty range: --n-min {lo} > --n-max {hi}")
    kind = args.kind
    if kind == "historical":
        if lo < 2:
            raise UsageError("historical bounds need m >= 2")
        cols = ["m"] + [b.value for b in classical.HistoricalBound]
        rows = [
            {"m": m, **{b.value: classical.historical_bound(m, b).value for b in classical.HistoricalBound}}
            for m in range(lo, hi + 1)
        ]
        emit(render("constants", cols, rows, spec), spec)
        return EXIT_OK

    cols = ["n", "value", "ln_value", "method"]
    rows = []
    if kind in ("real-recursive", "real-closed"):
        if lo < 2:
            raise UsageError("real constants need n >= 2")
        if kind == "real-closed":
            cols = ["n", "value", "ln_value", "r_n", "method"]
        for n in range(lo, hi + 1):
            if kind == "real-recursive":
                v, r, method = classical.c_real_recursive(n), None, classical.Method.RECURSIVE
            else:
                row = classical.table_row(n)
                v, r, method = row.value, row.r_n, row.method
            rows.append({"n": n, "value": v.value, "ln_value": v.ln, "r_n": r, "method": method})
    else:
        if lo < 1:
            raise UsageError("subexponential constants need n >= 1")
        params = _subexp_params(args)
        for n in range(lo, hi + 1):
            if n <= 2:
                v = classical.LogValue(0.0) if n == 1 else params.c2
                method = "base"
            elif kind == "subexp-closed":
                v, method = subexp.c_subexp_closed(n, params), "closed"
            else:
                v, method = subexp.c_subexp_recursive(n, params), "recursive"
            rows.append({"n": n, "value": v.value, "ln_value": v.ln, "method": method})
    emit(render("constants", cols, rows, spec), spec)
    return EXIT_OK


def _paper_digits(n: int) -> Optional[int]:
    printed = classical.PAPER_RN_PRINTED.get(n)
    if printed is None:
        return None
    return len(printed.split(".")[1])


def cmd_rn_table(args, spec: OutputSpec) -> int:
    ns = args.n or sorted(classical.PAPER_RN_TABLE)
    bad = [n for n in ns if n % 2 or n <= 14]
    if bad:
        raise UsageError(f"invalid n for r_n (must be even and > 14): {', '.join(map(str, bad))}")
    cols = ["n", "r_n"]
    if args.paper_digits:
        cols.append("paper")
    rows = []
    for n in ns:
        value = classical.r_n(n)
        row = {"n": n, "r_n": value}
        digits = _paper_digits(n) if args.paper_digits else None
        if digits is not None:
            row["r_n"] = f"{value:.{digits}f}"
            row["paper"] = classical.PAPER_RN_PRINTED[n]
        rows.append(row)
    emit(render("rn-table", cols, rows, spec), spec)
    return EXIT_OK


def cmd_decompose(args, spec: OutputSpec) -> int:
    if args.n < 3:
        raise UsageError(f"decomposition requires n >= 3, got {args.n}")
    d = subexp.decompose(args.n)
    e_d, e_c = subexp.closed_exponents(args.n)
    cols = ["n", "k", "l", "branch", "e_D", "e_C"]
    row = {"n": d.n, "k": d.k, "l": d.l, "branch": d.branch, "e_D": e_d, "e_C": e_c}
    emit(render("decompose", cols, [row], spec), spec)
    return EXIT_OK


INEQUALITY_CONFIGS = ((2, 2), (2, 4), (2, 8), (3, 3), (3, 4), (4, 3))
KHINCHIN_EXPONENTS = (("1", 1.0), ("4/3", 4 / 3), ("8/5", 8 / 5), ("28/15", 28 / 15), ("2", 2.0), ("3", 3.0))


def _suite_closed_vs_recursive(args):
    params = _subexp_params(args)
    n_max = args.n_max or 65536
    rep = subexp.verify_equivalence(n_max, params, args.tol)
    rows = [{"check": f"max |dln C_n|, 3 <= n <= {n_max}", "value": rep.max_deviation,
             "threshold": rep.tol, "detail": f"argmax n={rep.argmax}", "passed": rep.ok}]
    return rows


def _suite_small_n_exact(args):
    rows = []
    for n in range(2, 15):
        got = classical.c_real_recursive_exponent(n)
        want = classical.c_real_small_closed(n)
        rows.append({"check": f"exponent of 2 in C_R,{n}", "value": got, "threshold": want,
                     "detail": "exact", "passed": got == want})
    return rows


def _suite_rn_oracle(args):
    n_max = args.n_max or 4096
    rep = classical.verify_rn_identities(n_max)
    return [
        {"check": f"max |ln(r_n s_n)|, even 16 <= n <= {n_max}", "value": rep.max_identity_dev,
         "threshold": args.tol, "detail": f"argmax n={rep.argmax_identity}",
         "passed": rep.max_identity_dev <= args.tol},
        {"check": f"max |ln C_closed - ln C_recursive|, even 16 <= n <= {n_max}",
         "value": rep.max_recursive_dev, "threshold": args.tol,
         "detail": f"argmax n={rep.argmax_recursive}", "passed": rep.max_recursive_dev <= args.tol},
    ]


def _suite_khinchin(args):
    rng = np.random.Generator(np.random.PCG64(args.seed))
    vectors = [rng.uniform(-1.0, 1.0, size=int(rng.integers(1, args.max_dim + 1))) for _ in range(args.trials)]
    rows = []
    for label, p in KHINCHIN_EXPONENTS:
        ratios = [khinchin.verify_khinchin_lower(a, p) for a in vectors]
        worst = min(r.ratio for r in ratios)
        fails = sum(not r.ok for r in ratios)
        rows.append({"check": f"min ratio, p={label}", "value": worst, "threshold": 1.0 - 1e-10,
                     "detail": f"{fails} violations / {len(ratios)}", "passed": fails == 0})
    t = khinchin.p0()
    gap = abs(khinchin.lower_branch_ln(t) - khinchin.upper_branch_ln(t))
    rows.append({"check": "branch gap at p0", "value": gap, "threshold": 1e-10,
                 "detail": f"p0={t!r}", "passed": gap <= 1e-10})
    return rows


def _suite_inequality(args):
    configs = [(m, N) for m, N in INEQUALITY_CONFIGS
               if (args.m is None or m == args.m) and (args.N is None or N == args.N)]
    if not configs:
        if args.m is None or args.N is None:
            raise UsageError("no built-in configuration matches --m/--N")
        configs = [(args.m, args.N)]
    rows = []
    w = verifier.check_inequality(verifier.littlewood_witness(), math.sqrt(2))
    rows.append({"check": "Littlewood witness ratio", "value": w.ratio, "threshold": math.sqrt(2),
                 "detail": "", "passed": abs(w.ratio - math.sqrt(2)) <= 1e-12})
    dists = list(verifier.Distribution)
    for m, N in configs:
        const = classical.c_real_recursive(m).value if m >= 2 else 1.0
        worst, fails = 0.0, 0
        for t in range(args.trials):
            form = verifier.random_form(m, N, seed=args.seed * 1_000_003 + t, distribution=dists[t % 2])
            rep = verifier.check_inequality(form, const)
            worst = max(worst, rep.ratio)
            fails += not rep.satisfied
        rows.append({"check": f"max ratio, m={m}, N={N}", "value": worst, "threshold": const,
                     "detail": f"{fails} violations / {args.trials}", "passed": fails == 0})
    return rows


SUITES = {
    "closed-vs-recursive": _suite_closed_vs_recursive,
    "small-n-exact": _suite_small_n_exact,
    "rn-oracle": _suite_rn_oracle,
    "khinchin": _suite_khinchin,
    "inequality": _suite_inequality,
}


def cmd_verify(args, spec: OutputSpec) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be >= 1")
    rows = SUITES[args.suite](args)
    ok = all(r["passed"] for r in rows)
    cols = ["check", "value", "threshold", "detail", "passed"]
    summary = {"suite": args.suite, "checks": len(rows), "passed": sum(r["passed"] for r in rows), "ok": ok}
    emit(render("verify", cols, rows, spec, summary), spec)
    return EXIT_OK if ok else EXIT_FAIL


def _load_form(path: str) -> verifier.MultilinearForm:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")
    try:
        return verifier.MultilinearForm.from_mapping(obj)
    except BHConstError as exc:
        raise UsageError(f"{path}: {exc}")


def cmd_check_form(args, spec: OutputSpec) -> int:
    if (args.path is None) == (args.witness is None):
        raise UsageError("give exactly one of PATH or --witness")
    form = verifier.littlewood_witness() if args.witness else _load_form(args.path)
    if form.vertex_log2 > verifier.MAX_VERTEX_LOG2:
        raise UsageError(f"form needs 2**{form.vertex_log2} sign vertices; cap is 2**{verifier.MAX_VERTEX_LOG2}")
    if args.constant is not None:
        constant, source = args.constant, "explicit"
    elif form.m >= 2:
        constant, source = classical.c_real_recursive(form.m).value, f"C_R,{form.m} (recursive)"
    else:
        constant, source = 1.0, "C_R,1 = 1"
    rep = verifier.check_inequality(form, constant)
    cols = ["m", "N", "lhs", "sup", "ratio", "constant", "constant_source", "satisfied", "certified"]
    row = {"m": form.m, "N": form.N, **rep.to_mapping(), "constant_source": source}
    emit(render("check-form", cols, [row], spec), spec)
    return EXIT_OK if rep.satisfied else EXIT_FAIL


# -- parser -----------------------------------------------------------------

def _common_flags(defaults: bool) -> argparse.ArgumentParser:
    # the same flags are accepted before or after the subcommand
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=[f.value for f in Format], default=d(None),
                   help="output format (default: $BHCONST_FORMAT or table)")
    p.add_argument("--precision", type=int, default=d(6), help="significant digits, 1..17 (default 6)")
    p.add_argument("--out", type=Path, default=d(None), help="write output to this file")
    p.add_argument("--seed", type=int, default=d(0), help="seed for randomized checks (default 0)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags(defaults=False)
    parser = argparse.ArgumentParser(
        prog="bhconst",
        description="Constants of the multilinear Bohnenblust-Hille inequality.",
        parents=[_common_flags(defaults=True)],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("constants", parents=[common], help="tabulate constants over a range of n")
    p.add_argument("--kind", required=True,
                   choices=["real-recursive", "real-closed", "subexp-closed", "subexp-recursive", "historical"])
    p.add_argument("--n-min", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    _add_subexp_flags(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("rn-table", parents=[common], help="r_n for even n > 14")
    p.add_argument("--n", type=int, nargs="+", help="values of n (default: the published table)")
    p.add_argument("--paper-digits", action="store_true",
                   help="print tabulated n with the same number of decimals as the published table")
    p.set_defaults(func=cmd_rn_table)

    p = sub.add_parser("decompose", parents=[common], help="n = 2**k - l and closed-formula exponents")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=list(SUITES))
    p.add_argument("--n-max", type=int, default=None)
    p.add_argument("--tol", type=positive_real, default=1e-9)
    p.add_argument("--trials", type=int, default=500)
    p.add_argument("--max-dim", type=int, default=12, help="largest Khinchin vector length")
    p.add_argument("--m", type=int, default=None, help="restrict the inequality sweep to this arity")
    p.add_argument("--N", type=int, default=None, help="restrict the inequality sweep to this dimension")
    _add_subexp_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check-form", parents=[common], help="check one multilinear form")
    p.add_argument("path", nargs="?", help='JSON file {"m": int, "N": int, "coefficients": [...]}')
    p.add_argument("--witness", choices=["littlewood"], default=None)
    p.add_argument("--constant", type=positive_real, default=None,
                   help="explicit constant (default: the real recursive constant C_R,m)")
    p.set_defaults(func=cmd_check_form)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        fmt = Format(args.format) if args.format else default_format()
        spec = OutputSpec(fmt, args.precision, args.out)
    except ValueError as exc:
        print(f"bhconst: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args, spec)
    except (UsageError, BHConstError) as exc:
        print(f"bhconst: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"bhconst: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
