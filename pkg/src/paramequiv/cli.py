"""Command-line front end.

Exit codes: 0 equivalent (or probably equivalent), 1 not equivalent,
2 usage, parse or validation error, 3 resource ceiling hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import __version__
from .bounds import bound_report
from .checker import AUTO_PROBABILITY, NotEquivalent, ProbablyEquivalent, check, recommend_mode
from .circuit import arity_in, arity_out
from .cycmat import format_matrix
from .errors import ParamEquivError, ResourceLimitError
from .exactnum import format_scalar
from .fileformat import CircuitFile, load
from .semantics import eval_exact
from .transform import integralize

EXIT_EQUIVALENT = 0
EXIT_NOT_EQUIVALENT = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _probability(text: str) -> Fraction:
    p = _rational(text)
    if not 0 < p <= 1:
        raise argparse.ArgumentTypeError(f"probability must lie in (0, 1], got {text!r}")
    return p


def _point(text: str) -> list[Fraction]:
    if not text.strip():
        return []
    return [_rational(part) for part in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paramequiv", description="Exact equivalence checking of parameterized quantum circuits."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    chk = sub.add_parser("check", help="decide whether two circuit files are equivalent")
    chk.add_argument("left")
    chk.add_argument("right")
    chk.add_argument("--mode", choices=("auto", "exact", "prob", "symbolic"), default="auto")
    chk.add_argument("--p", type=_probability, default=None, help="false-positive bound for prob mode (default 1/1000)")
    chk.add_argument("--phase", action="store_true", help="check modulo an affine global phase")
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument("--trials", type=int, default=1)
    chk.add_argument("--max-evals", type=int, default=None, help="ceiling on exact grid evaluations")
    chk.add_argument("--jobs", type=int, default=None, help="worker processes for exact mode (default: all cores)")
    chk.add_argument("--json", action="store_true")

    info = sub.add_parser("info", help="report degree bounds and grid sizes for a pair")
    info.add_argument("left")
    info.add_argument("right")
    info.add_argument("--json", action="store_true")

    ev = sub.add_parser("eval", help="evaluate a circuit exactly at a point (multiples of pi)")
    ev.add_argument("circuit")
    ev.add_argument("--at", type=_point, default=[], help="comma-separated rationals q_j with theta_j = q_j*pi")
    ev.add_argument("--json", action="store_true")
    return parser


def _load_pair(left: str, right: str) -> tuple[CircuitFile, CircuitFile]:
    a, b = load(left), load(right)
    if a.params != b.params:
        raise UsageError(f"parameter lists differ: {list(a.params)} vs {list(b.params)}")
    return a, b


def _fraction_text(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _witness_json(params: Sequence[str], witness) -> list[dict]:
    return [
        {"param": name, "pi_multiple": _fraction_text(q), "radians": float(q) * np.pi}
        for name, q in zip(params, witness)
    ]


def _complex_json(z) -> list[float]:
    c = z.to_complex()
    return [c.real, c.imag]


def verdict_json(verdict, params: Sequence[str], wall_time: float, auto: bool) -> dict:
    out = {
        "verdict": verdict.kind,
        "mode": verdict.mode,
        "auto_selected": auto,
        "modulo_phase": verdict.modulo_phase,
        "evaluations": verdict.evaluations,
        "wall_time_s": wall_time,
        "params": list(params),
        "scaling": list(verdict.scaling),
        "bounds": verdict.bounds.to_json() if verdict.bounds else None,
        "warnings": list(verdict.warnings),
        "phase": None,
        "witness": None,
    }
    if verdict.phase is not None:
        pr = verdict.phase
        out["phase"] = {
            "scalar": format_scalar(pr.scalar),
            "scalar_complex": _complex_json(pr.scalar),
            "coefficients": {name: _fraction_text(a) for name, a in zip(params, pr.form.coeffs)},
        }
    if isinstance(verdict, NotEquivalent):
        out["witness"] = {
            "point": _witness_json(params, verdict.witness),
            "entry": list(verdict.entry),
            "lhs": format_scalar(verdict.lhs),
            "rhs": format_scalar(verdict.rhs),
            "lhs_complex": _complex_json(verdict.lhs),
            "rhs_complex": _complex_json(verdict.rhs),
        }
    if isinstance(verdict, ProbablyEquivalent):
        out["failure_bound"] = _fraction_text(verdict.failure_bound)
        out["failure_bound_float"] = float(verdict.failure_bound)
        out["samples"] = verdict.samples
        out["trials"] = verdict.trials
    return out


def _describe(verdict, params: Sequence[str], wall_time: float, auto: bool) -> str:
    lines = []
    if auto:
        lines.append(f"mode: {verdict.mode} (selected automatically)")
    else:
        lines.append(f"mode: {verdict.mode}")
    if any(s != 1 for s in verdict.scaling):
        lines.append("integralized by rescaling: " + ", ".join(f"{n}*{s}" for n, s in zip(params, verdict.scaling)))
    if verdict.phase is not None:
        pr = verdict.phase
        form = " + ".join(f"{_fraction_text(a)}*{n}" for n, a in zip(params, pr.form.coeffs) if a) or "0"
        lines.append(f"inferred phase: scalar {format_scalar(pr.scalar)}, R_I({form})")
    for w in verdict.warnings:
        lines.append(f"warning: {w}")
    suffix = " modulo global phase" if verdict.modulo_phase else ""
    if isinstance(verdict, NotEquivalent):
        lines.append(f"NOT EQUIVALENT{suffix}")
        at = ", ".join(f"{n} = {_fraction_text(q)}*pi" for n, q in zip(params, verdict.witness)) or "(no parameters)"
        lines.append(f"witness: {at}")
        lines.append(
            f"entry {verdict.entry}: {format_scalar(verdict.lhs)} vs {format_scalar(verdict.rhs)}"
        )
    elif isinstance(verdict, ProbablyEquivalent):
        lines.append(f"PROBABLY EQUIVALENT{suffix}")
        lines.append(
            f"false-positive probability <= {_fraction_text(verdict.failure_bound)}"
            f" ({verdict.trials} trial(s), sample set of {verdict.samples} angles)"
        )
    else:
        lines.append(f"EQUIVALENT{suffix}")
    lines.append(f"{verdict.evaluations} evaluations in {wall_time:.3f} s")
    return "\n".join(lines)


def cmd_check(args) -> int:
    a, b = _load_pair(args.left, args.right)
    start = time.perf_counter()
    verdict = check(
        a.body,
        b.body,
        mode=args.mode,
        p=args.p,
        seed=args.seed,
        trials=args.trials,
        budget=args.max_evals,
        jobs=args.jobs,
        phase=args.phase,
        k=a.k,
    )
    elapsed = time.perf_counter() - start
    auto = args.mode == "auto"
    if args.json:
        print(json.dumps(verdict_json(verdict, a.params, elapsed, auto), indent=2))
    else:
        if auto and verdict.mode == "prob" and args.p is None:
            print(f"cutoff grid too large for exhaustive checking; using probabilistic mode with p = {AUTO_PROBABILITY}")
        print(_describe(verdict, a.params, elapsed, auto))
    return EXIT_NOT_EQUIVALENT if isinstance(verdict, NotEquivalent) else EXIT_EQUIVALENT


def info_json(a: CircuitFile, b: CircuitFile) -> dict:
    i1, i2, v = integralize(a.body, b.body, a.k)
    report = bound_report(i1, i2, a.k)
    return {
        "params": list(a.params),
        "arity": {
            "left": [arity_in(a.body), arity_out(a.body)],
            "right": [arity_in(b.body), arity_out(b.body)],
        },
        "scaling": list(v),
        "bounds": report.to_json(),
        "recommended_mode": recommend_mode(report),
    }


def cmd_info(args) -> int:
    a, b = _load_pair(args.left, args.right)
    data = info_json(a, b)
    if args.json:
        print(json.dumps(data, indent=2))
        return EXIT_EQUIVALENT
    bnd = data["bounds"]
    print(f"parameters: {', '.join(a.params) or '(none)'}")
    if any(s != 1 for s in data["scaling"]):
        print(f"integralizing scale: {data['scaling']}")
    print(f"lambda: {bnd['lambda']}")
    print(f"kappa sums: {bnd['kappa_sums']} (max {bnd['kappa_sum_max']})")
    print(f"total degree d: {bnd['total_degree_d']}")
    print(f"grid sizes: {bnd['grid_sizes']} (product {bnd['grid_product']})")
    print(f"recommended mode: {data['recommended_mode']}")
    return EXIT_EQUIVALENT


def cmd_eval(args) -> int:
    cf = load(args.circuit)
    if len(args.at) != cf.k:
        raise UsageError(f"--at needs {cf.k} value(s) for params {list(cf.params)}, got {len(args.at)}")
    m = eval_exact(cf.body, args.at)
    numeric = m.to_complex()
    if args.json:
        data = {
            "params": list(cf.params),
            "point": [_fraction_text(q) for q in args.at],
            "matrix": [[format_scalar(e) for e in m.row(i)] for i in range(m.rows)],
            "numeric": [[[z.real, z.imag] for z in row] for row in numeric.tolist()],
        }
        print(json.dumps(data, indent=2))
    else:
        print(format_matrix(m))
        with np.printoptions(precision=6, suppress=True):
            print(numeric)
    return EXIT_EQUIVALENT


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    handlers = {"check": cmd_check, "info": cmd_info, "eval": cmd_eval}
    try:
        return handlers[args.command](args)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ParamEquivError, UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
