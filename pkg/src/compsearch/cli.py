"""Command-line front end.

Commands
--------
verify          run the comparison circuit and check its output against
                the diagonal target state, for one oracle or all of them
trace           print every checkpoint state next to its closed form
sweep           write a per-oracle verdict report (JSON or CSV)
grover-compare  marked-element probability: comparison circuit vs Grover

Oracle specification: ``--marked k1,k2,...`` or ``--truth-table 0x<hex>``
(bitmask, least significant bit is f(0)).

Exit codes: 0 success; 1 verification failure; 2 invalid arguments;
3 I/O error.  Report files are deterministic: stable key order, no
timestamps, so identical invocations produce byte-identical bytes.
The exact backend is capped at n <= 4 (override with the
COMPSEARCH_EXACT_CAP environment variable); float runs are capped at
n <= 12 to bound memory.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import __version__, analytic
from .circuit import (
    CHECKPOINT_LABELS,
    PSI3,
    build_comparison_search,
    run_with_trace,
)
from .dyadic import DyadicReal
from .state import EXACT, FLOAT, FLOAT_ATOL, BooleanOracle, StateVector
from .refutation import (
    EXHAUSTIVE_SWEEP_MAX_N,
    check_oracle,
    compare_grover,
    sweep_all_f,
)

DEFAULT_EXACT_CAP = 4
FLOAT_N_CAP = 12
DEFAULT_SAMPLES = 100000


class CLIError(Exception):
    def __init__(self, code: int, message: str) -> None:
        super().__init__(message)
        self.code = code


def exact_cap() -> int:
    raw = os.environ.get("COMPSEARCH_EXACT_CAP")
    if raw is None:
        return DEFAULT_EXACT_CAP
    try:
        return int(raw)
    except ValueError as exc:
        raise CLIError(2, f"COMPSEARCH_EXACT_CAP={raw!r} is not an integer") from exc


def _resolve_backend(args) -> str:
    if args.backend is not None:
        return args.backend
    return EXACT if args.n <= 3 else FLOAT


def _check_caps(n: int, backend: str) -> None:
    if n < 1:
        raise CLIError(2, f"--n must be >= 1, got {n}")
    if backend == EXACT and n > exact_cap():
        raise CLIError(2, f"exact backend capped at n <= {exact_cap()} (got n={n})")
    if backend == FLOAT and n > FLOAT_N_CAP:
        raise CLIError(2, f"float backend capped at n <= {FLOAT_N_CAP} (got n={n})")


def _parse_oracle(args, n: int) -> BooleanOracle | None:
    marked = getattr(args, "marked", None)
    table = getattr(args, "truth_table", None)
    if marked is not None and table is not None:
        raise CLIError(2, "give either --marked or --truth-table, not both")
    if marked is not None:
        try:
            elems = [int(tok, 0) for tok in marked.split(",") if tok.strip() != ""]
        except ValueError as exc:
            raise CLIError(2, f"--marked {marked!r} is not a comma-separated int list") from exc
        try:
            return BooleanOracle.from_marked(n, elems)
        except ValueError as exc:
            raise CLIError(2, str(exc)) from exc
    if table is not None:
        if not table.lower().startswith("0x"):
            raise CLIError(2, "--truth-table must be hex like 0x1a")
        try:
            value = int(table, 16)
        except ValueError as exc:
            raise CLIError(2, f"--truth-table {table!r} is not valid hex") from exc
        try:
            return BooleanOracle(n, value)
        except ValueError as exc:
            raise CLIError(2, str(exc)) from exc
    return None


def _oracle_params(f: BooleanOracle | None) -> dict | None:
    if f is None:
        return None
    return {"truth_table": format(f.table, "#x"), "marked": list(f.marked())}


def _amplitude_json(amp) -> list:
    if isinstance(amp, DyadicReal):
        return [amp.a, amp.b, amp.h]
    return [amp.real, amp.imag]


def _document(command: str, parameters: dict, results: dict) -> dict:
    return {
        "command": command,
        "parameters": parameters,
        "results": results,
        "version": __version__,
    }


def _dump_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2) + "\n"

def _sweep_csv(report) -> str:
    lines = ["oracle_id,exact_match,max_dev,tv_to_first"]
    for v in report.verdicts:
        lines.append(
            f"{v.oracle_id},{'true' if v.exact_match else 'false'},"
            f"{v.max_deviation!r},{v.tv_to_first!r}"
        )
    return "\n".join(lines) + "\n"


def _write_atomic(path: str, text: str) -> None:
    tmp = f"{path}.tmp"
    try:
        with open(tmp, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        raise CLIError(3, f"cannot write {path}: {exc}") from exc


def _maybe_write(args, doc: dict) -> None:
    out = getattr(args, "out", None)
    if out:
        _write_atomic(out, _dump_json(doc))


def cmd_verify(args) -> tuple[int, dict]:
    backend = _resolve_backend(args)
    _check_caps(args.n, backend)
    f = _parse_oracle(args, args.n)
    if args.all_f and f is not None:
        raise CLIError(2, "--all-f excludes an explicit oracle")
    if not args.all_f and f is None:
        raise CLIError(2, "need --all-f, --marked or --truth-table")
    if args.all_f and args.n > EXHAUSTIVE_SWEEP_MAX_N:
        raise CLIError(2, f"--all-f capped at n <= {EXHAUSTIVE_SWEEP_MAX_N} (2^(2^n) oracles)")

    checked = 0
    all_match = True
    max_dev = 0.0
    if args.all_f:
        for table in range(1 << (1 << args.n)):
            ok, dev = check_oracle(args.n, BooleanOracle(args.n, table), backend)
            checked += 1
            all_match = all_match and ok
            max_dev = max(max_dev, dev)
    else:
        ok, dev = check_oracle(args.n, f, backend)
        checked, all_match, max_dev = 1, ok, dev

    doc = _document(
        "verify",
        {
            "n": args.n,
            "backend": backend,
            "all_f": bool(args.all_f),
            "oracle": _oracle_params(f),
            "tolerance": 0.0 if backend == EXACT else FLOAT_ATOL,
        },
        {
            "oracles_checked": checked,
            "all_match": all_match,
            "max_deviation": max_dev,
        },
    )
    status = "ok" if all_match else "FAILED"
    print(
        f"verify n={args.n} backend={backend}: {checked} oracle(s), "
        f"max deviation {max_dev:.3g} -> {status}"
    )
    return (0 if all_match else 1), doc


def cmd_trace(args) -> tuple[int, dict]:
    backend = _resolve_backend(args)
    _check_caps(args.n, backend)
    if args.n > 4:
        raise CLIError(2, f"trace prints full states; capped at n <= 4 (got n={args.n})")
    f = _parse_oracle(args, args.n)
    if f is None:
        raise CLIError(2, "trace needs --marked or --truth-table")

    trace = run_with_trace(
        build_comparison_search(args.n, f), StateVector(2 * args.n, backend)
    )
    reference = {
        "psi0": analytic.psi0(args.n, backend),
        "psi1": analytic.psi1(args.n, backend),
        "psi2": analytic.psi2(args.n, f, backend),
        "psi2a": analytic.psi2a(args.n, f, backend),
        "psi3": analytic.psi3(args.n, f, backend),
    }
    target = analytic.target_output(args.n, f, backend)

    def matches(a: StateVector, b: StateVector) -> bool:
        return a == b if backend == EXACT else a.max_abs_diff(b) <= FLOAT_ATOL

    checkpoints = []
    all_match = True
    for label in CHECKPOINT_LABELS:
        state = trace[label]
        ok = matches(state, reference[label])
        all_match = all_match and ok
        checkpoints.append(
            {
                "label": label,
                "amplitudes": [_amplitude_json(a) for a in state.amplitudes()],
                "analytic_amplitudes": [
                    _amplitude_json(a) for a in reference[label].amplitudes()
                ],
                "analytic_match": ok,
            }
        )
        print(f"{label:>5}: {state.terms()}   analytic match: {'yes' if ok else 'NO'}")
    target_ok = matches(trace[PSI3], target)
    all_match = all_match and target_ok
    print(f"final state equals diagonal target: {'yes' if target_ok else 'NO'}")

    doc = _document(
        "trace",
        {"n": args.n, "backend": backend, "oracle": _oracle_params(f)},
        {"checkpoints": checkpoints, "target_match": target_ok, "all_match": all_match},
    )
    return (0 if all_match else 1), doc


def cmd_sweep(args) -> tuple[int, dict]:
    backend = _resolve_backend(args)
    _check_caps(args.n, backend)
    if not args.out:
        raise CLIError(2, "sweep needs --out")
    report = sweep_all_f(args.n, backend, seed=args.seed)
    doc = _document(
        "sweep",
        {
            "n": args.n,
            "backend": backend,
            "seed": args.seed,
            "format": args.format,
        },
        report.to_dict(),
    )
    text = _dump_json(doc) if args.format == "json" else _sweep_csv(report)
    _write_atomic(args.out, text)
    status = "ok" if report.all_match else "FAILED"
    print(
        f"sweep n={args.n} backend={backend}: {report.oracle_count} oracles, "
        f"max pairwise TV {report.max_pairwise_tv:.3g} -> {status} ({args.out})"
    )
    return (0 if report.all_match else 1), doc


def cmd_grover_compare(args) -> tuple[int, dict]:
    if args.n < 2 or args.n > FLOAT_N_CAP:
        raise CLIError(2, f"grover-compare needs 2 <= n <= {FLOAT_N_CAP}")
    if args.marked is None:
        raise CLIError(2, "grover-compare needs --marked <element>")
    try:
        marked = int(args.marked, 0)
    except ValueError as exc:
        raise CLIError(2, f"--marked {args.marked!r} is not an integer") from exc
    if not 0 <= marked < (1 << args.n):
        raise CLIError(2, f"marked element {marked} out of range for n={args.n}")
    if args.samples < 1:
        raise CLIError(2, "--samples must be >= 1")

    rec = compare_grover(args.n, marked, samples=args.samples, seed=args.seed)
    doc = _document(
        "grover-compare",
        {"n": args.n, "marked": marked, "samples": args.samples, "seed": args.seed},
        rec.to_dict(),
    )
    print(
        f"n={args.n}, marked element {marked}:\n"
        f"  comparison circuit: p = {rec.comparison_probability:.6g}"
        f" (= 2^-{args.n} exactly: {'yes' if rec.comparison_probability_is_exact else 'NO'}),"
        f" empirical {rec.comparison_empirical_frequency:.6g}\n"
        f"  grover ({rec.grover_iterations} iterations): p = {rec.grover_probability:.6g},"
        f" empirical {rec.grover_empirical_frequency:.6g}"
    )
    return 0, doc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="compsearch",
        description="simulate the comparison-search circuit and verify that "
        "its output carries no information about the marked elements",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, samples=False, out=True):
        p.add_argument("--n", type=int, required=True, help="register size in qubits")
        p.add_argument("--backend", choices=[EXACT, FLOAT], default=None,
                       help="amplitude backend (default: exact for n<=3, else float)")
        p.add_argument("--marked", type=str, default=None,
                       help="comma-separated marked elements")
        p.add_argument("--truth-table", type=str, default=None,
                       help="oracle truth table as 0x<hex>, LSB = f(0)")
        p.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
        if samples:
            p.add_argument("--samples", type=int, default=DEFAULT_SAMPLES,
                           help=f"measurement draws (default {DEFAULT_SAMPLES})")
        if out:
            p.add_argument("--out", type=str, default=None, help="report file path")

    p_verify = sub.add_parser("verify", help="check circuit output against the diagonal target")
    common(p_verify)
    p_verify.add_argument("--all-f", action="store_true",
                          help="check every oracle on n bits")
    p_verify.set_defaults(func=cmd_verify)

    p_trace = sub.add_parser("trace", help="print checkpoint states and their closed forms")
    common(p_trace)
    p_trace.set_defaults(func=cmd_trace)

    p_sweep = sub.add_parser("sweep", help="write per-oracle verdicts to a report file")
    common(p_sweep)
    p_sweep.add_argument("--format", choices=["json", "csv"], default="json")
    p_sweep.set_defaults(func=cmd_sweep)

    p_gc = sub.add_parser("grover-compare",
                          help="marked-element probability, comparison circuit vs Grover")
    common(p_gc, samples=True)
    p_gc.set_defaults(func=cmd_grover_compare)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    started = time.perf_counter()
    try:
        code, doc = args.func(args)
        if args.command != "sweep":
            _maybe_write(args, doc)
        # Timing goes to stderr only; report files stay byte-deterministic.
        print(f"elapsed: {time.perf_counter() - started:.3f}s", file=sys.stderr)
        return code
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
