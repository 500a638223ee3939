"""Builder and runner for the inter-branch message-transfer circuit.

The scenario: a qubit Q is measured by a friend F inside a sealed lab, the
measurement outcome is copied into a room record R, and the friend in the
outcome-1 branch writes an n-bit message mu into a memory register M and a
paper register P. The friend's memory is then uncomputed, and an observer
with global control over the lab applies a partial branch swap that
exchanges Q, R, and F between the two branches while leaving the paper
alone. The outcome-0 friend ends up holding a paper that reads mu, in a
branch whose memory and records carry no trace of who wrote it.

Circuit columns, in order, on the canonical layout Q(1) R(1) F(1) M(n) P(n):

    1. Q preparation realizing amp0|0> + amp1|1>        -> checkpoint eq1
    2. CNOT Q -> F          (friend measures Q)         -> checkpoint eq2
    3. CNOT F -> R          (room records the outcome)  -> checkpoint eq3
    4. ENCODE_MU on M, controlled on F                  -> checkpoint eq4
    5. TRANSVERSAL_CNOT M -> P  (message to paper)      -> checkpoint eq5
    6. TRANSVERSAL_CNOT P -> M  (memory uncompute)      -> checkpoint eq6
    7. MULTI_X on {Q, R, F}     (partial branch swap)   -> checkpoint eq8

Label eq7 is reserved for the swap operation itself rather than a state, so
no checkpoint carries it. Column 6 is skipped when uncompute_memory is
false, column 7 when apply_branch_swap is false; their checkpoint labels
disappear with them and the final state is then the last recorded one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .statevec import (
    SQRT_HALF,
    Circuit,
    GateOp,
    StateVector,
    apply_circuit,
    make_basis_state,
    protocol_layout,
    zero_state,
)

AMP_TOL = 1e-12

CHECKPOINT_LABELS = ("eq1", "eq2", "eq3", "eq4", "eq5", "eq6", "eq8")
REFERENCE_LABELS = ("eq2", "eq3", "eq4", "eq5", "eq6", "eq8")


@dataclass(frozen=True)
class Message:
    """Classical n-bit message, written most significant bit first."""

    bits: str

    def __post_init__(self) -> None:
        if not isinstance(self.bits, str) or not self.bits:
            raise ValueError("message must be a nonempty bit-string")
        if any(c not in "01" for c in self.bits):
            raise ValueError(f"message must contain only 0/1, got {self.bits!r}")

    @property
    def n(self) -> int:
        return len(self.bits)

    @property
    def blank(self) -> bool:
        return set(self.bits) == {"0"}


@dataclass(frozen=True)
class ProtocolConfig:
    """Parameters of one protocol run.

    Amplitudes are restricted to real non-negative values normalized to
    |amp0|^2 + |amp1|^2 = 1 within 1e-12.
    """

    n: int = 1
    amp0: float = SQRT_HALF
    amp1: float = SQRT_HALF
    uncompute_memory: bool = True
    apply_branch_swap: bool = True

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"message width must be >= 1, got {self.n}")
        for name, amp in (("amp0", self.amp0), ("amp1", self.amp1)):
            if isinstance(amp, complex) or not math.isfinite(amp):
                raise ValueError(f"{name} must be a finite real, got {amp!r}")
            if amp < 0:
                raise ValueError(f"{name} must be non-negative, got {amp}")
        total = self.amp0 * self.amp0 + self.amp1 * self.amp1
        if abs(total - 1.0) > AMP_TOL:
            raise ValueError(
                f"amplitudes must satisfy amp0^2 + amp1^2 = 1, got {total!r}"
            )


@dataclass(frozen=True)
class ProtocolRun:
    """A completed run: configuration, checkpoint states, final state."""

    config: ProtocolConfig
    checkpoints: Mapping[str, StateVector]
    final: StateVector

    def __post_init__(self) -> None:
        object.__setattr__(self, "checkpoints", MappingProxyType(dict(self.checkpoints)))


def build_protocol_circuit(
    config: ProtocolConfig, message: Message | None = None
) -> Circuit:
    """Assemble the transfer circuit for a configuration.

    The ENCODE_MU payload is taken from `message`; with no message given the
    payload is blank, which keeps the circuit shape while writing nothing.
    """
    n = config.n
    if message is not None and message.n != n:
        raise ValueError(f"message width {message.n} != configured width {n}")
    payload = message.bits if message is not None else "0" * n

    layout = protocol_layout(n)
    q = layout.offset("Q")
    r = layout.offset("R")
    f = layout.offset("F")
    m = layout.qubits("M")
    p = layout.qubits("P")

    if abs(config.amp0 - config.amp1) <= AMP_TOL:
        prep = GateOp.h(q)
    else:
        prep = GateOp.ry(2.0 * math.atan2(config.amp1, config.amp0), q)

    ops = [
        prep,
        GateOp.cnot(q, f),
        GateOp.cnot(f, r),
        GateOp.encode(payload, m, control=f),
        GateOp.transversal_cnot(m, p),
    ]
    checkpoints = [(0, "eq1"), (1, "eq2"), (2, "eq3"), (3, "eq4"), (4, "eq5")]
    if config.uncompute_memory:
        ops.append(GateOp.transversal_cnot(p, m))
        checkpoints.append((len(ops) - 1, "eq6"))
    if config.apply_branch_swap:
        ops.append(GateOp.multi_x((q, r, f)))
        checkpoints.append((len(ops) - 1, "eq8"))
    return Circuit(layout, tuple(ops), tuple(checkpoints))


def run_protocol(config: ProtocolConfig, message: Message) -> ProtocolRun:
    """Evolve the all-zero state through the transfer circuit."""
    if message.n != config.n:
        raise ValueError(f"message width {message.n} != configured width {config.n}")
    circuit = build_protocol_circuit(config, message)
    final, snapshots = apply_circuit(zero_state(circuit.layout), circuit)
    return ProtocolRun(config, snapshots, final)


def checkpoint_reference_state(
    label: str, config: ProtocolConfig, message: Message
) -> StateVector:
    """Closed-form two-term state expected at a checkpoint.

    Built directly from basis vectors, independent of any circuit evolution,
    so simulated checkpoints can be validated against it. Defined for labels
    eq2 through eq6 and eq8.
    """
    if message.n != config.n:
        raise ValueError(f"message width {message.n} != configured width {config.n}")
    if label not in REFERENCE_LABELS:
        raise ValueError(f"no closed-form reference for label {label!r}")
    n = config.n
    mu = message.bits
    zeros = "0" * n
    base = {"Q": "0", "R": "0", "F": "0", "M": zeros, "P": zeros}
    ones = {"Q": "1", "R": "1", "F": "1"}

    if label == "eq2":
        term0 = base
        term1 = {**base, "Q": "1", "F": "1"}
    elif label == "eq3":
        term0 = base
        term1 = {**base, **ones}
    elif label == "eq4":
        term0 = base
        term1 = {**base, **ones, "M": mu}
    elif label == "eq5":
        term0 = base
        term1 = {**base, **ones, "M": mu, "P": mu}
    elif label == "eq6":
        term0 = base
        term1 = {**base, **ones, "P": mu}
    else:  # eq8: swap exchanges the Q/R/F markers between the two branches
        term0 = {**base, **ones}
        term1 = {**base, "P": mu}

    layout = protocol_layout(n)
    amps = (
        config.amp0 * make_basis_state(layout, term0).amplitudes
        + config.amp1 * make_basis_state(layout, term1).amplitudes
    )
    return StateVector(layout, amps)
