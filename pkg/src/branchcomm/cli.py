"""Command-line front end.

Subcommands: run (simulate a transfer and emit the JSON checkpoint
document), verify (run named verification suites), swap-synth (print the
friend-swap operator for two snapshots), export (emit the protocol circuit
as QASM or JSON).

Exit codes: 0 success or all claims verified, 1 usage or I/O error,
2 transfer verdict or verification failure. Data goes to stdout or the
requested output file; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from .branches import branches_to_json, decompose_by_register, verify_transfer
from .protocol import (
    Message,
    ProtocolConfig,
    ProtocolRun,
    build_protocol_circuit,
    run_protocol,
)
from .qasm import to_qasm
from .statevec import SQRT_HALF, Circuit, GateKind, StateVector
from .suites import SUITE_NAMES, run_suite
from .swapsynth import FriendSnapshot, synthesize_swap

# Inputs farther than this from a normalized amplitude pair are rejected;
# anything closer is renormalized (with a warning when the drift is real).
NORMALIZE_LIMIT = 1e-6
WARN_LIMIT = 1e-12


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on bad usage by default; this CLI reserves 2 for
    # verdict failures, so usage problems exit 1 instead.
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class CliConfig:
    """Validated run/export parameters shared by those subcommands."""

    subcommand: str
    message: str
    n: int
    amp0: float
    amp1: float
    uncompute: bool
    swap: bool
    output_path: str | None
    format: str = "json"
    measure: bool = False


def _normalized_amplitudes(amp0: float, amp1: float) -> tuple[float, float]:
    if amp0 < 0 or amp1 < 0 or not (math.isfinite(amp0) and math.isfinite(amp1)):
        raise _UsageError("amplitudes must be finite and non-negative")
    total = amp0 * amp0 + amp1 * amp1
    if total == 0.0:
        raise _UsageError("amplitudes cannot both be zero")
    if abs(total - 1.0) >= NORMALIZE_LIMIT:
        raise _UsageError(
            f"amplitudes are not normalized: amp0^2 + amp1^2 = {total!r}"
        )
    if abs(total - 1.0) > WARN_LIMIT:
        print(
            f"warning: renormalizing amplitudes (amp0^2 + amp1^2 = {total!r})",
            file=sys.stderr,
        )
    scale = math.sqrt(total)
    return amp0 / scale, amp1 / scale


def _cli_config(args: argparse.Namespace) -> CliConfig:
    message = args.message
    if not message or any(c not in "01" for c in message):
        raise _UsageError(
            f"--message must be a nonempty string over {{0,1}}, got {message!r}"
        )
    n = args.n if args.n is not None else len(message)
    if n != len(message):
        raise _UsageError(f"--n {n} does not match message width {len(message)}")
    amp0, amp1 = _normalized_amplitudes(args.amp0, args.amp1)
    return CliConfig(
        subcommand=args.command,
        message=message,
        n=n,
        amp0=amp0,
        amp1=amp1,
        uncompute=args.uncompute,
        swap=args.swap,
        output_path=args.output,
        format=getattr(args, "format", "json"),
        measure=getattr(args, "measure", False),
    )


def _amplitude_pairs(state: StateVector) -> list[list[float]]:
    return [[a.real, a.imag] for a in state.amplitudes]


def run_document(run: ProtocolRun, message: Message) -> dict:
    """JSON checkpoint document: config, message, per-label amplitudes,
    final amplitudes, all in ascending global-index order."""
    return {
        "config": {
            "n": run.config.n,
            "amp0": run.config.amp0,
            "amp1": run.config.amp1,
            "uncompute_memory": run.config.uncompute_memory,
            "apply_branch_swap": run.config.apply_branch_swap,
        },
        "message": message.bits,
        "checkpoints": {
            label: _amplitude_pairs(state) for label, state in run.checkpoints.items()
        },
        "final": _amplitude_pairs(run.final),
    }


def _emit(text: str, output_path: str | None) -> None:
    if output_path is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return
    try:
        with open(output_path, "w", encoding="utf-8") as handle:
            handle.write(text)
    except OSError as exc:
        raise _UsageError(f"cannot write {output_path!r}: {exc}") from exc


def _circuit_summary(circuit: Circuit) -> str:
    return f"circuit: {circuit.gate_count} ops, layer depth {circuit.layer_depth}"


def cmd_run(config: CliConfig) -> int:
    message = Message(config.message)
    pconfig = ProtocolConfig(
        n=config.n,
        amp0=config.amp0,
        amp1=config.amp1,
        uncompute_memory=config.uncompute,
        apply_branch_swap=config.swap,
    )
    run = run_protocol(pconfig, message)
    _emit(json.dumps(run_document(run, message), indent=2), config.output_path)

    err = sys.stderr
    print(_circuit_summary(build_protocol_circuit(pconfig, message)), file=err)
    print("final-state branches by room record R:", file=err)
    for branch in decompose_by_register(run.final, "R"):
        if branch.local_state is not None:
            values = " ".join(
                f"{name}={bits}" for name, bits in branch.local_state.items()
            )
        else:
            values = "(superposed component)"
        print(
            f"  R={branch.label}  |amplitude| = {abs(branch.amplitude):.6f}  {values}",
            file=err,
        )
    if not config.swap:
        print("verdict: skipped (branch swap disabled)", file=err)
        return 0
    verdict = verify_transfer(run, message)
    if verdict.success:
        suffix = f" [{verdict.note}]" if verdict.note else ""
        print(
            f"verdict: success, receiver paper reads '{verdict.receiver_paper}'{suffix}",
            file=err,
        )
        return 0
    print(f"verdict: FAILED, {verdict.failure_reason}", file=err)
    return 2


def cmd_verify(suite: str) -> int:
    if suite != "all" and suite not in SUITE_NAMES:
        print(f"error: unknown suite {suite!r}", file=sys.stderr)
        return 1
    reports = run_suite(suite)
    failures = 0
    for report in reports:
        status = "PASS" if report.passed else "FAIL"
        if not report.passed:
            failures += 1
        numbers = {
            key: value
            for key, value in report.measurements.items()
            if isinstance(value, (int, float))
        }
        detail = ", ".join(
            f"{key}={value:.3e}" if isinstance(value, float) else f"{key}={value}"
            for key, value in numbers.items()
        )
        print(f"[{status}] {report.claim} ({detail})")
    print(f"suite {suite!r}: {len(reports) - failures}/{len(reports)} claims verified")
    return 0 if failures == 0 else 2


def cmd_swap_synth(friend0: str, friend1: str) -> int:
    try:
        plan = synthesize_swap(FriendSnapshot(friend0), FriendSnapshot(friend1))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"{plan.operator_string()} (cost {plan.hamming_cost})")
    return 0


def circuit_document(circuit: Circuit, message: Message) -> dict:
    return {
        "layout": [[name, width] for name, width in circuit.layout.registers],
        "message": message.bits,
        "gate_count": circuit.gate_count,
        "layer_depth": circuit.layer_depth,
        "ops": [
            {
                "kind": op.kind.value,
                "targets": list(op.targets),
                "controls": list(op.controls),
                "payload": op.payload,
                "angle": op.angle,
            }
            for op in circuit.ops
        ],
    }


def cmd_export(config: CliConfig) -> int:
    message = Message(config.message)
    pconfig = ProtocolConfig(
        n=config.n,
        amp0=config.amp0,
        amp1=config.amp1,
        uncompute_memory=config.uncompute,
        apply_branch_swap=config.swap,
    )
    circuit = build_protocol_circuit(pconfig, message)
    if config.format == "qasm":
        if any(op.kind is GateKind.RY for op in circuit.ops):
            print(
                "error: rotation preparation (unequal amplitudes) has no "
                "x/h/cx representation; export with --format json instead",
                file=sys.stderr,
            )
            return 1
        text = to_qasm(circuit, measure=config.measure)
    elif config.format == "json":
        text = json.dumps(circuit_document(circuit, message), indent=2)
    else:
        print(f"error: unsupported format {config.format!r}", file=sys.stderr)
        return 1
    _emit(text, config.output_path)
    print(_circuit_summary(circuit), file=sys.stderr)
    return 0


def _add_protocol_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--message", required=True, help="message bits, e.g. 101")
    parser.add_argument(
        "--n", type=int, default=None, help="message width (defaults to len(message))"
    )
    parser.add_argument(
        "--amp0", type=float, default=SQRT_HALF, help="preparation amplitude of |0>"
    )
    parser.add_argument(
        "--amp1", type=float, default=SQRT_HALF, help="preparation amplitude of |1>"
    )
    parser.add_argument(
        "--no-uncompute",
        dest="uncompute",
        action="store_false",
        help="skip the memory uncompute column",
    )
    parser.add_argument(
        "--no-swap",
        dest="swap",
        action="store_false",
        help="skip the final branch swap",
    )
    parser.add_argument("-o", "--output", default=None, help="write data to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="branchcomm",
        description="simulate and verify message transfer between branches",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser(
        "run", help="run the protocol, emit the JSON checkpoint document"
    )
    _add_protocol_flags(run_p)

    verify_p = sub.add_parser("verify", help="run named verification suites")
    verify_p.add_argument(
        "--suite",
        choices=SUITE_NAMES + ("all",),
        default="all",
        help=(
            "theorem1: transfer works for every message; corollary1: transfer "
            "needs the memory uncompute; lemma1: memory swaps are "
            "message-dependent; corollary2: branch weights survive the swap"
        ),
    )

    swap_p = sub.add_parser(
        "swap-synth", help="print the friend-swap operator for two snapshots"
    )
    swap_p.add_argument("friend0", help="snapshot of the friend in one branch")
    swap_p.add_argument("friend1", help="snapshot of the friend in the other branch")

    export_p = sub.add_parser("export", help="emit the protocol circuit")
    _add_protocol_flags(export_p)
    export_p.add_argument(
        "--format", choices=("qasm", "json"), default="qasm", help="output format"
    )
    export_p.add_argument(
        "--measure",
        action="store_true",
        help="append per-register measurements to qasm output",
    )

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "run":
            return cmd_run(_cli_config(args))
        if args.command == "verify":
            return cmd_verify(args.suite)
        if args.command == "swap-synth":
            return cmd_swap_synth(args.friend0, args.friend1)
        if args.command == "export":
            return cmd_export(_cli_config(args))
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    raise AssertionError(f"unhandled command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
