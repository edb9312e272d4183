"""Command-line front end.

``cjsr bounds|stability|lyapunov|enumerate|question1 FILE [options]``

Exit codes are the machine contract:

========  ===========================================================
command   codes
========  ===========================================================
bounds    0 done, 2 budget exhausted (partial results written), 1 input
stability 0 CertifiedStable, 3 CertifiedUnstable, 4 Undetermined, 1 input
others    0 done, 1 input error
========  ===========================================================

JSON outputs carry ``"schema": "cjsr/1"`` and are written with sorted keys
so that identical inputs give byte-identical files whatever ``--threads``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path

from . import constraint as cons
from .bounds import BoundsConfig, BoundsReport, jsr_bounds
from .constraint import Cycle
from .errors import EmptyConstraint, InadmissibleSignal
from .lyapunov import exponent_along, question1_experiment, random_admissible_signal
from .matcore import NormKind
from .stability import SLACK, Status, certify
from .systemfile import SCHEMA, Problem, SystemFile, SystemFileError

__all__ = ["main", "build_parser"]

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2
EXIT_UNSTABLE = 3
EXIT_UNDETERMINED = 4


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # usage errors are input errors; argparse's own code 2 means "budget" here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def fmt_float(x) -> str:
    """CSV rendering: 12 significant digits, ``-inf`` for vanishing logs."""
    if x is None:
        return ""
    if math.isinf(x):
        return "-inf" if x < 0 else "inf"
    return format(float(x), ".12g")


def _jnum(x):
    if x is None:
        return None
    x = float(x)
    if math.isinf(x):
        return "-inf" if x < 0 else "inf"
    if math.isnan(x):
        return "nan"
    return x


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def _default_threads() -> int:
    raw = os.environ.get("CJSR_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _load(path) -> Problem:
    try:
        return SystemFile.load(path).build()
    except SystemFileError as exc:
        raise InputError(str(exc)) from None


def _emit(args, name: str, text: str, out) -> None:
    if args.out is None:
        out.write(text)
        return
    d = Path(args.out)
    d.mkdir(parents=True, exist_ok=True)
    with open(d / name, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _config(args) -> BoundsConfig:
    if args.depth < 1 or args.cycles < 1:
        raise InputError("--depth and --cycles must be >= 1")
    if args.tol < 0:
        raise InputError("--tol must be >= 0")
    return BoundsConfig(
        max_depth=args.depth,
        max_cycle_len=args.cycles,
        tol=args.tol,
        kind=args.norm,
        threads=args.threads,
        max_words=args.max_words,
        refine_iterations=args.refine,
    )


def _rows_json(p: Problem, report: BoundsReport) -> list:
    return [
        {
            "n": r.n,
            "rho_hat_n": _jnum(r.rho_hat),
            "rho_n": _jnum(r.rho),
            "visited": r.visited,
            "pruned": r.pruned,
            "exact": r.exact,
            "zero_product": r.zero_product,
            "witness": p.format_word(r.witness),
        }
        for r in report.rows
    ]


def _depth_csv(p: Problem, report: BoundsReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "rho_hat_n", "rho_n", "visited", "pruned", "exact", "zero_product", "witness"])
    for r in report.rows:
        w.writerow(
            [
                r.n,
                fmt_float(r.rho_hat),
                fmt_float(r.rho),
                r.visited,
                r.pruned,
                int(r.exact),
                int(r.zero_product),
                p.format_word(r.witness) or "",
            ]
        )
    return buf.getvalue()


def _bounds_summary(p: Problem, report: BoundsReport, config: BoundsConfig) -> dict:
    return {
        "schema": SCHEMA,
        "command": "bounds",
        "lb": _jnum(report.lb),
        "ub": _jnum(report.ub),
        "width": _jnum(report.width),
        "ub_depth": report.ub_depth,
        "lb_witness": p.format_cycle(report.lb_witness),
        "ub_witness": p.format_word(report.ub_witness),
        "converged": report.converged,
        "budget_exceeded": report.budget_exceeded,
        "refined": report.refined,
        "zero_product_depths": [r.n for r in report.rows if r.zero_product],
        "parameters": {
            "depth": config.max_depth,
            "cycles": config.max_cycle_len,
            "tol": config.tol,
            "norm": config.kind.value,
            "max_words": config.max_words,
        },
        "rows": _rows_json(p, report),
    }


def cmd_bounds(args, out) -> int:
    p = _load(args.file)
    config = _config(args)
    report = jsr_bounds(p.system, p.constraint, config)
    summary = _dump_json(_bounds_summary(p, report, config))
    if args.out is not None:
        _emit(args, "depth_table.csv", _depth_csv(p, report), out)
    _emit(args, "summary.json", summary, out)
    return EXIT_BUDGET if report.budget_exceeded else EXIT_OK


def cmd_stability(args, out) -> int:
    p = _load(args.file)
    config = _config(args)
    v = certify(p.system, p.constraint, config, slack=args.slack)
    if isinstance(v.witness, Cycle):
        witness, wkind = p.format_cycle(v.witness), "cycle"
    else:
        witness, wkind = p.format_word(v.witness), ("word" if v.witness is not None else None)
    doc = {
        "schema": SCHEMA,
        "command": "stability",
        "status": v.status.value,
        "reason": v.reason.value,
        "marginal": v.marginal,
        "witness": witness,
        "witness_kind": wkind,
        "N": v.N,
        "lambda": _jnum(v.lam),
        "lb": _jnum(v.lb),
        "ub": _jnum(v.ub),
        "ub_depth": v.report.ub_depth,
        "budget_exceeded": v.report.budget_exceeded,
        "parameters": {
            "depth": config.max_depth,
            "cycles": config.max_cycle_len,
            "tol": config.tol,
            "norm": config.kind.value,
            "slack": args.slack,
        },
    }
    _emit(args, "verdict.json", _dump_json(doc), out)
    return {
        Status.CERTIFIED_STABLE: EXIT_OK,
        Status.CERTIFIED_UNSTABLE: EXIT_UNSTABLE,
        Status.UNDETERMINED: EXIT_UNDETERMINED,
    }[v.status]


def _parse_random(text: str) -> tuple:
    try:
        seed, length = (int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"--random expects SEED,LEN, got {text!r}") from None
    if length < 1:
        raise InputError("--random length must be >= 1")
    return seed, length


def cmd_lyapunov(args, out) -> int:
    p = _load(args.file)
    if (args.cycle is None) == (args.random is None):
        raise InputError("give exactly one of --cycle or --random")
    if args.cycle is not None:
        try:
            signal = p.parse_cycle(args.cycle)
        except (KeyError, ValueError) as exc:
            raise InputError(f"--cycle: {exc}") from None
        horizon = args.horizon or 64 * len(signal)
    else:
        seed, length = _parse_random(args.random)
        signal = random_admissible_signal(p.constraint, length, seed)
        horizon = args.horizon or length
    if horizon < 1:
        raise InputError("--horizon must be >= 1")
    est = exponent_along(p.system, signal, horizon, c=p.constraint)
    if isinstance(signal, Cycle):
        desc, kind = p.format_cycle(signal), "cycle"
    else:
        desc, kind = p.format_word(signal), "word"
    x0 = None if est.x0 is None else [[float(z.real), float(z.imag)] for z in est.x0]
    doc = {
        "schema": SCHEMA,
        "command": "lyapunov",
        "signal": desc,
        "signal_kind": kind,
        "horizon": est.horizon,
        "exact": est.exact,
        "chi": _jnum(est.chi_hat),
        "chi_finite": _jnum(est.chi_finite),
        "chi_x0": _jnum(est.chi_x0),
        "x0": x0,
    }
    _emit(args, "exponent.json", _dump_json(doc), out)
    return EXIT_OK


def cmd_enumerate(args, out) -> int:
    p = _load(args.file)
    if args.length < 1:
        raise InputError("--length must be >= 1")
    gen = cons.periodic_words if args.periodic else cons.admissible_words
    words = gen(p.constraint, args.length)
    if p.recoding is not None:
        words = sorted({p.to_letters(w) for w in words})
    for w in words:
        out.write(p.alphabet.format_word(w) + "\n")
    return EXIT_OK


def cmd_question1(args, out) -> int:
    p = _load(args.file)
    if args.max_len < 1:
        raise InputError("--max-len must be >= 1")
    rows = question1_experiment(p.system, p.constraint, args.max_len, args.norm)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "count", "max_periodic_rho_root", "max_periodic_norm_root", "empty"])
    for r in rows:
        w.writerow([r.n, r.count, fmt_float(r.rho_root), fmt_float(r.norm_root), int(r.empty)])
    _emit(args, "question1.csv", buf.getvalue(), out)
    return EXIT_OK


def _norm_arg(text: str) -> NormKind:
    try:
        return NormKind.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"unknown norm {text!r}; choose from {[k.value for k in NormKind]}"
        ) from None


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="cjsr",
        description="Bounds, stability certificates and Lyapunov exponents for "
        "constrained switched linear systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("file", help="system file (JSON)")
        sp.add_argument("--out", default=None, help="output directory (default: stdout)")

    def sweep(sp):
        sp.add_argument("--depth", type=int, default=12, help="maximal product length (default 12)")
        sp.add_argument("--cycles", type=int, default=8, help="maximal cycle length for the lower bound (default 8)")
        sp.add_argument("--tol", type=float, default=1e-6, help="stop once ub - lb <= tol (default 1e-6)")
        sp.add_argument("--norm", type=_norm_arg, default=NormKind.SPECTRAL2, help="spectral2, frobenius, maxrowsum or maxcolsum")
        sp.add_argument("--threads", type=int, default=_default_threads(), help="worker threads (default $CJSR_THREADS or 1)")
        sp.add_argument("--max-words", type=int, default=4_000_000, help="product budget for the sweep")
        sp.add_argument("--refine", type=int, default=0, help="diagonal norm refinement iterations (default 0)")

    sp = sub.add_parser("bounds", help="certified interval for the constrained spectral radius")
    common(sp)
    sweep(sp)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("stability", help="stability or instability certificate")
    common(sp)
    sweep(sp)
    sp.add_argument("--slack", type=float, default=SLACK, help="absolute slack for comparisons with 1")
    sp.set_defaults(func=cmd_stability)

    sp = sub.add_parser("lyapunov", help="Lyapunov exponent along one signal")
    common(sp)
    sp.add_argument("--cycle", help="periodic signal, e.g. 01 or a,b")
    sp.add_argument("--random", help="random admissible signal SEED,LEN")
    sp.add_argument("--horizon", type=int, default=None, help="steps to simulate (default 64|w| or LEN)")
    sp.set_defaults(func=cmd_lyapunov)

    sp = sub.add_parser("enumerate", help="list admissible words of one length")
    sp.add_argument("file", help="system file (JSON)")
    sp.add_argument("--length", type=int, required=True)
    sp.add_argument("--periodic", action="store_true", help="only words whose repetition is admissible")
    sp.set_defaults(func=cmd_enumerate, out=None)

    sp = sub.add_parser("question1", help="periodic spectral radius and norm roots per length (CSV)")
    common(sp)
    sp.add_argument("--max-len", type=int, default=8)
    sp.add_argument("--norm", type=_norm_arg, default=NormKind.SPECTRAL2)
    sp.set_defaults(func=cmd_question1)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    if getattr(args, "threads", 1) < 1:
        print("cjsr: error: --threads must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"cjsr: error: {exc}", file=sys.stderr)
    except EmptyConstraint as exc:
        print(f"cjsr: error: EmptyConstraint: {exc}", file=sys.stderr)
    except InadmissibleSignal as exc:
        print(f"cjsr: error: InadmissibleSignal: {exc}", file=sys.stderr)
    except ValueError as exc:
        print(f"cjsr: error: {exc}", file=sys.stderr)
    return EXIT_INPUT


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
