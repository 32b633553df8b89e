"""Exact statevector simulation of parameterized circuits.

Amplitudes are indexed little-endian: qubit ``j`` is bit ``j`` of the
basis-state index. All operations are unitary on 2**n complex amplitudes;
Pauli rotations use the analytic cos/sin update rather than matrix
exponentials, so a single rotation carries no approximation error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ShapeError
from .paulis import PauliString, QubitHamiltonian, pauli_action

MAX_QUBITS = 24  # 2**24 complex amplitudes = 256 MiB; hard memory guard

GATE_KINDS = ("x", "ry", "rz", "cnot", "cz", "pauli_rot")


@dataclass(frozen=True)
class Statevector:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n_qubits > MAX_QUBITS:
            raise ShapeError(f"{self.n_qubits} qubits exceeds the {MAX_QUBITS}-qubit limit")
        if self.amplitudes.shape != (1 << self.n_qubits,):
            raise ShapeError("amplitude count is not 2**n_qubits")

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def to_csv(self) -> str:
        """Debug dump: one ``index,re,im`` row per amplitude."""
        rows = ["index,re,im"]
        for i, a in enumerate(self.amplitudes):
            rows.append(f"{i},{float(a.real)!r},{float(a.imag)!r}")
        return "\n".join(rows) + "\n"


@dataclass(frozen=True)
class Gate:
    """One circuit operation.

    ``slot`` selects a variational parameter; the rotation angle is then
    ``angle * parameters[slot]`` (so ``angle`` acts as a fixed multiplier,
    default 1). With ``slot=None`` the angle is bound directly.
    """

    kind: str
    qubits: tuple
    slot: int | None = None
    angle: float = 1.0
    pauli: PauliString | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ShapeError(f"unknown gate kind {self.kind!r}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ShapeError("gate qubits must be distinct")
        if self.kind == "pauli_rot" and self.pauli is None:
            raise ShapeError("pauli_rot gate requires a PauliString")

    def resolved_angle(self, parameters) -> float:
        if self.slot is None:
            return self.angle
        return self.angle * parameters[self.slot]


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    gates: tuple
    n_parameters: int = 0

    def __post_init__(self):
        used = set()
        for gate in self.gates:
            for q in gate.qubits:
                if not 0 <= q < self.n_qubits:
                    raise ShapeError(f"gate qubit {q} outside register of {self.n_qubits}")
            if gate.pauli is not None and gate.pauli.n_qubits != self.n_qubits:
                raise ShapeError("gate Pauli string size differs from register")
            if gate.slot is not None:
                if not 0 <= gate.slot < self.n_parameters:
                    raise ShapeError(f"parameter slot {gate.slot} out of range")
                used.add(gate.slot)
        if used != set(range(self.n_parameters)):
            missing = sorted(set(range(self.n_parameters)) - used)
            raise ShapeError(f"parameter slots never referenced: {missing}")

    @property
    def depth(self) -> int:
        """Number of layers when gates on disjoint qubits are packed greedily."""
        frontier: dict[int, int] = {}
        depth = 0
        for gate in self.gates:
            qubits = gate.qubits if gate.kind != "pauli_rot" else tuple(
                q for q in range(self.n_qubits) if (gate.pauli.support_mask >> q) & 1
            )
            layer = 1 + max((frontier.get(q, 0) for q in qubits), default=0)
            for q in qubits:
                frontier[q] = layer
            depth = max(depth, layer)
        return depth

    def to_lines(self) -> str:
        """Debug form, one gate per line: kind, qubits, slot or angle, letters."""
        rows = []
        for g in self.gates:
            qubits = ",".join(str(q) for q in g.qubits)
            param = f"slot{g.slot}*{g.angle!r}" if g.slot is not None else repr(g.angle)
            extra = f" {g.pauli.to_letters()}" if g.pauli is not None else ""
            rows.append(f"{g.kind} {qubits} {param}{extra}")
        return "\n".join(rows) + "\n"


def prepare_hf(n_qubits: int, occupied) -> Statevector:
    """Computational basis state with 1s at the occupied qubit positions."""
    occupied = set(occupied)
    for q in occupied:
        if not 0 <= q < n_qubits:
            raise ShapeError(f"occupied index {q} outside register of {n_qubits}")
    index = sum(1 << q for q in occupied)
    amplitudes = np.zeros(1 << n_qubits, dtype=np.complex128)
    amplitudes[index] = 1.0
    return Statevector(n_qubits, amplitudes)


def apply_single_qubit(amplitudes: np.ndarray, qubit: int, matrix: np.ndarray) -> np.ndarray:
    """Apply a 2x2 matrix to one qubit of an amplitude vector."""
    n = amplitudes.shape[0]
    work = amplitudes.reshape(n >> (qubit + 1), 2, 1 << qubit)
    out = np.einsum("ab,ibj->iaj", matrix, work)
    return np.ascontiguousarray(out).reshape(n)


def _apply_gate(amplitudes: np.ndarray, gate: Gate, parameters) -> np.ndarray:
    if gate.kind == "x":
        (q,) = gate.qubits
        return apply_single_qubit(amplitudes, q, np.array([[0, 1], [1, 0]], dtype=np.complex128))
    if gate.kind == "ry":
        (q,) = gate.qubits
        half = 0.5 * gate.resolved_angle(parameters)
        c, s = np.cos(half), np.sin(half)
        return apply_single_qubit(amplitudes, q, np.array([[c, -s], [s, c]], dtype=np.complex128))
    if gate.kind == "rz":
        (q,) = gate.qubits
        half = 0.5 * gate.resolved_angle(parameters)
        return apply_single_qubit(
            amplitudes, q, np.array([[np.exp(-1j * half), 0], [0, np.exp(1j * half)]])
        )
    if gate.kind in ("cnot", "cz"):
        control, target = gate.qubits
        idx = np.arange(amplitudes.shape[0])
        ctrl_on = (idx >> control) & 1 == 1
        out = amplitudes.copy()
        if gate.kind == "cnot":
            src = idx[ctrl_on] ^ (1 << target)
            out[idx[ctrl_on]] = amplitudes[src]
        else:
            both = ctrl_on & ((idx >> target) & 1 == 1)
            out[both] *= -1.0
        return out
    # pauli_rot: exp(-i angle/2 P) = cos(angle/2) I - i sin(angle/2) P
    half = 0.5 * gate.resolved_angle(parameters)
    rotated = pauli_action(gate.pauli, amplitudes)
    return np.cos(half) * amplitudes - 1j * np.sin(half) * rotated


def apply_circuit(state: Statevector, circuit: Circuit, parameters=()) -> Statevector:
    """Run the circuit on a state, resolving parameter slots from ``parameters``."""
    if circuit.n_qubits != state.n_qubits:
        raise ShapeError("circuit and state qubit counts differ")
    parameters = np.asarray(parameters, dtype=float)
    if parameters.shape != (circuit.n_parameters,):
        raise ShapeError(
            f"expected {circuit.n_parameters} parameters, got {parameters.shape}"
        )
    amplitudes = state.amplitudes.astype(np.complex128, copy=True)
    for gate in circuit.gates:
        amplitudes = _apply_gate(amplitudes, gate, parameters)
    return Statevector(state.n_qubits, amplitudes)


def expectation(state: Statevector, hamiltonian: QubitHamiltonian) -> float:
    """<psi|H|psi> as sum over Pauli terms; no dense matrix is built."""
    if hamiltonian.n_qubits != state.n_qubits:
        raise ShapeError("Hamiltonian and state qubit counts differ")
    psi = state.amplitudes
    value = 0.0 + 0.0j
    for weight, pauli in hamiltonian.terms:
        value += weight * np.vdot(psi, pauli_action(pauli, psi))
    if abs(value.imag) > 1e-10:
        raise ShapeError(f"expectation has imaginary part {value.imag:.3e}")
    return float(value.real)


def sample(state: Statevector, n_shots: int, seed: int) -> dict[str, int]:
    """Seeded computational-basis sampling; returns bitstring -> count.

    Bitstrings list qubit 0 first, matching the Pauli letter convention.
    """
    if n_shots < 1:
        raise ShapeError("n_shots must be >= 1")
    probs = state.probabilities()
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(n_shots, probs)
    n = state.n_qubits
    result = {}
    for index in np.nonzero(counts)[0]:
        bits = "".join(str((int(index) >> q) & 1) for q in range(n))
        result[bits] = int(counts[index])
    return result
