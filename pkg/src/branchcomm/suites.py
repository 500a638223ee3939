"""Named verification suites over the protocol, no-go, and swap modules.

Each suite returns ClaimReports with measured tolerances so callers can
render pass/fail lines or serialize the evidence. Suite names are stable
CLI identifiers.
"""

from __future__ import annotations

import numpy as np

from .branches import verify_transfer
from .nogo import (
    ClaimReport,
    construct_G,
    run_no_uncompute_variant,
    verify_amplitude_immutability,
    witness_mu_dependence,
)
from .protocol import (
    Message,
    ProtocolConfig,
    build_protocol_circuit,
    run_protocol,
)
from .statevec import (
    GateKind,
    StateVector,
    fidelity,
    gate_matrix,
    make_basis_state,
    protocol_layout,
)

SUITE_NAMES = ("theorem1", "corollary1", "lemma1", "corollary2")

_SAMPLE_SEED = 20240917


def _all_messages(n: int, nonblank: bool = False) -> list[Message]:
    start = 1 if nonblank else 0
    return [Message(format(v, f"0{n}b")) for v in range(start, 1 << n)]


def _transfer_report(
    exhaustive_max_n: int = 3,
    sampled_ns: tuple[int, ...] = (4, 5, 6, 7, 8),
    samples_per_n: int = 12,
) -> ClaimReport:
    failures: list[str] = []
    checked_exhaustive = 0
    for n in range(1, exhaustive_max_n + 1):
        for message in _all_messages(n):
            run = run_protocol(ProtocolConfig(n=n), message)
            verdict = verify_transfer(run, message)
            checked_exhaustive += 1
            if not verdict.success:
                failures.append(f"n={n} mu={message.bits}: {verdict.failure_reason}")

    rng = np.random.default_rng(_SAMPLE_SEED)
    checked_sampled = 0
    for n in sampled_ns:
        for value in rng.integers(0, 1 << n, size=samples_per_n):
            message = Message(format(int(value), f"0{n}b"))
            verdict = verify_transfer(run_protocol(ProtocolConfig(n=n), message), message)
            checked_sampled += 1
            if not verdict.success:
                failures.append(f"n={n} mu={message.bits}: {verdict.failure_reason}")

    return ClaimReport(
        claim=(
            "the transfer protocol delivers every message to the receiving "
            "branch with records and memory cleared"
        ),
        parameters={
            "exhaustive_max_n": exhaustive_max_n,
            "sampled_ns": list(sampled_ns),
            "samples_per_n": samples_per_n,
        },
        measurements={
            "checked_exhaustive": checked_exhaustive,
            "checked_sampled": checked_sampled,
            "failures": failures,
        },
        passed=not failures,
    )


def _mu_independence_report(max_n: int = 4) -> ClaimReport:
    """Every circuit op except the encoder must be bit-for-bit identical
    across all messages at a fixed width."""
    compared = 0
    mismatches: list[str] = []
    for n in range(1, max_n + 1):
        layout = protocol_layout(n)
        config = ProtocolConfig(n=n)
        base = build_protocol_circuit(config)
        base_matrices = {
            i: gate_matrix(op, layout)
            for i, op in enumerate(base.ops)
            if op.kind is not GateKind.ENCODE_MU
        }
        for message in _all_messages(n):
            circuit = build_protocol_circuit(config, message)
            if len(circuit.ops) != len(base.ops):
                mismatches.append(f"n={n} mu={message.bits}: op count changed")
                continue
            for i, op in enumerate(circuit.ops):
                if op.kind is GateKind.ENCODE_MU:
                    continue
                compared += 1
                if not np.array_equal(gate_matrix(op, layout), base_matrices[i]):
                    mismatches.append(f"n={n} mu={message.bits} op={i}")
    return ClaimReport(
        claim=(
            "the global observer's operations are message-independent: every "
            "non-encoder gate matrix is bitwise identical across messages"
        ),
        parameters={"max_n": max_n},
        measurements={"matrices_compared": compared, "mismatches": mismatches},
        passed=not mismatches,
    )


def theorem1_suite() -> list[ClaimReport]:
    return [_transfer_report(), _mu_independence_report()]


def _no_uncompute_reference(message: Message) -> StateVector:
    # Post-swap state when the memory was never uncomputed: the message
    # branch keeps M = P = mu, so the receiver inherits a written memory.
    layout = protocol_layout(message.n)
    zeros = "0" * message.n
    term0 = make_basis_state(
        layout, {"Q": "1", "R": "1", "F": "1", "M": zeros, "P": zeros}
    )
    term1 = make_basis_state(
        layout, {"Q": "0", "R": "0", "F": "0", "M": message.bits, "P": message.bits}
    )
    amps = np.sqrt(0.5) * (term0.amplitudes + term1.amplitudes)
    return StateVector(layout, amps)


def corollary1_suite(max_n: int = 3) -> list[ClaimReport]:
    checked = 0
    min_fidelity = 1.0
    failures: list[str] = []
    for n in range(1, max_n + 1):
        for message in _all_messages(n, nonblank=True):
            final, verdict = run_no_uncompute_variant(message)
            checked += 1
            fid = fidelity(final, _no_uncompute_reference(message))
            min_fidelity = min(min_fidelity, fid)
            if fid < 1.0 - 1e-12:
                failures.append(f"n={n} mu={message.bits}: state fidelity {fid}")
            if verdict.success:
                failures.append(f"n={n} mu={message.bits}: verdict unexpectedly passed")
            elif not verdict.failure_reason.startswith("cross-branch memory"):
                failures.append(
                    f"n={n} mu={message.bits}: wrong reason {verdict.failure_reason!r}"
                )
    return [
        ClaimReport(
            claim=(
                "without the memory uncompute the receiver's memory still "
                "reads the message, so the transfer predicate fails"
            ),
            parameters={"max_n": max_n},
            measurements={
                "checked": checked,
                "min_reference_fidelity": min_fidelity,
                "failures": failures,
            },
            passed=not failures,
        )
    ]


def _g_properties_report(n: int, sample: int | None = None) -> ClaimReport:
    dim = 1 << n
    messages = _all_messages(n, nonblank=True)
    if sample is not None and sample < len(messages):
        rng = np.random.default_rng(_SAMPLE_SEED + n)
        picks = rng.choice(len(messages), size=sample, replace=False)
        messages = [messages[int(i)] for i in picks]
    eye = np.eye(dim)
    max_unitarity = 0.0
    max_self_inverse = 0.0
    max_action = 0.0
    for message in messages:
        g = construct_G(message).matrix
        expected = np.eye(dim, dtype=np.complex128)
        k = int(message.bits, 2)
        expected[[0, k]] = expected[[k, 0]]
        max_unitarity = max(max_unitarity, float(np.max(np.abs(g.conj().T @ g - eye))))
        max_self_inverse = max(max_self_inverse, float(np.max(np.abs(g @ g - eye))))
        max_action = max(max_action, float(np.max(np.abs(g - expected))))
    passed = max(max_unitarity, max_self_inverse, max_action) <= 1e-12
    return ClaimReport(
        claim=(
            "each memory swap is unitary, self-inverse, and exchanges the "
            "blank memory with its message while fixing everything else"
        ),
        parameters={"n": n, "messages_checked": len(messages)},
        measurements={
            "max_unitarity_deviation": max_unitarity,
            "max_self_inverse_deviation": max_self_inverse,
            "max_action_deviation": max_action,
        },
        passed=passed,
    )


def lemma1_suite() -> list[ClaimReport]:
    reports = [witness_mu_dependence(2), witness_mu_dependence(3)]
    for n in (2, 3, 4):
        reports.append(_g_properties_report(n))
    for n in (5, 6):
        reports.append(_g_properties_report(n, sample=10))
    return reports


def corollary2_suite(random_draws: int = 20) -> list[ClaimReport]:
    reports = [
        verify_amplitude_immutability(np.sqrt(1 / 3), np.sqrt(2 / 3), Message("1"))
    ]
    rng = np.random.default_rng(_SAMPLE_SEED)
    max_magnitude_delta = 0.0
    max_exchange_delta = 0.0
    failures = 0
    for _ in range(random_draws):
        phi = rng.uniform(0.05, np.pi / 2 - 0.05)
        n = int(rng.integers(1, 4))
        value = int(rng.integers(1, 1 << n))
        report = verify_amplitude_immutability(
            float(np.cos(phi)), float(np.sin(phi)), Message(format(value, f"0{n}b"))
        )
        max_magnitude_delta = max(
            max_magnitude_delta, report.measurements["magnitude_delta"]
        )
        max_exchange_delta = max(
            max_exchange_delta, report.measurements["exchange_delta"]
        )
        if not report.passed:
            failures += 1
    reports.append(
        ClaimReport(
            claim=(
                "randomized preparations: the swap exchanges branch weights "
                "and never alters the paper component's magnitude"
            ),
            parameters={"random_draws": random_draws, "seed": _SAMPLE_SEED},
            measurements={
                "max_magnitude_delta": max_magnitude_delta,
                "max_exchange_delta": max_exchange_delta,
                "failures": failures,
            },
            passed=failures == 0
            and max(max_magnitude_delta, max_exchange_delta) <= 1e-12,
        )
    )
    return reports


_SUITES = {
    "theorem1": theorem1_suite,
    "corollary1": corollary1_suite,
    "lemma1": lemma1_suite,
    "corollary2": corollary2_suite,
}


def run_suite(name: str) -> list[ClaimReport]:
    """Run one named suite, or all of them in order."""
    if name == "all":
        reports: list[ClaimReport] = []
        for suite_name in SUITE_NAMES:
            reports.extend(_SUITES[suite_name]())
        return reports
    if name not in _SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {SUITE_NAMES + ('all',)}")
    return _SUITES[name]()
