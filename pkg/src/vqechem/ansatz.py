"""Trial-state circuit families: hardware-efficient layers and UCCSD.

Both act on a Hartree-Fock reference prepared separately. Spin orbitals
follow the interleaved convention of :mod:`vqechem.fermions`, so a spin
orbital index doubles as a qubit index after Jordan-Wigner mapping.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exceptions import ShapeError
from .fermions import FermionOperator, jordan_wigner_term_dict
from .paulis import PauliString
from .simulator import Circuit, Gate

JW_REAL_RESIDUE_TOLERANCE = 1e-10


@dataclass(frozen=True)
class ExcitationSet:
    """Spin-conserving singles (i, a) and doubles (i, j, a, b)."""

    singles: tuple
    doubles: tuple

    @property
    def n_excitations(self) -> int:
        return len(self.singles) + len(self.doubles)


def build_hardware_efficient(n_qubits: int, reps: int) -> Circuit:
    """RotY layer, then ``reps`` blocks of [linear CZ chain, RotY layer].

    Parameter count is (reps + 1) * n_qubits. CZ entanglers act on
    computational basis states by phase only, so the all-zero parameter
    vector fixes any reference determinant (up to global phase).
    """
    if n_qubits < 2:
        raise ShapeError("hardware-efficient ansatz needs at least 2 qubits")
    if reps < 0:
        raise ShapeError("reps must be nonnegative")
    gates = []
    slot = 0
    for q in range(n_qubits):
        gates.append(Gate("ry", (q,), slot=slot))
        slot += 1
    for _ in range(reps):
        for q in range(n_qubits - 1):
            gates.append(Gate("cz", (q, q + 1)))
        for q in range(n_qubits):
            gates.append(Gate("ry", (q,), slot=slot))
            slot += 1
    return Circuit(n_qubits, tuple(gates), n_parameters=slot)


def enumerate_excitations(n_spin_orbitals: int, occupied) -> ExcitationSet:
    """All spin-conserving excitations from occupied into virtual orbitals.

    Ordering is lexicographic, so circuits built from the result are
    deterministic. Spin of orbital p is p % 2 (interleaved convention).
    """
    occupied = sorted(set(occupied))
    if not occupied:
        raise ShapeError("occupied set must be nonempty")
    for p in occupied:
        if not 0 <= p < n_spin_orbitals:
            raise ShapeError(f"occupied orbital {p} outside 0..{n_spin_orbitals - 1}")
    virtual = [p for p in range(n_spin_orbitals) if p not in set(occupied)]

    singles = tuple(
        (i, a) for i in occupied for a in virtual if i % 2 == a % 2
    )
    doubles = []
    for ii, i in enumerate(occupied):
        for j in occupied[ii + 1:]:
            for ai, a in enumerate(virtual):
                for b in virtual[ai + 1:]:
                    if (i % 2 + j % 2) == (a % 2 + b % 2):
                        doubles.append((i, j, a, b))
    return ExcitationSet(singles, tuple(doubles))


def _excitation_generator(n_modes: int, annihilate, create) -> FermionOperator:
    """Anti-Hermitian generator tau - tau^+ for one excitation."""
    tau = tuple((m, True) for m in create) + tuple((m, False) for m in reversed(annihilate))
    tau_dag = tuple((m, True) for m in annihilate) + tuple(
        (m, False) for m in reversed(create)
    )
    return FermionOperator.from_terms(n_modes, {tau: 1.0, tau_dag: -1.0})


def excitation_rotations(n_modes: int, annihilate, create, slot: int) -> list[Gate]:
    """Pauli rotations implementing exp(theta * (tau - tau^+)) exactly.

    The Jordan-Wigner image of the generator is i * sum_m c_m P_m with real
    c_m, and the strings of one excitation mutually commute, so the product
    of rotations equals the exponential with no splitting error.
    """
    generator = _excitation_generator(n_modes, annihilate, create)
    expansion = jordan_wigner_term_dict(generator)
    gates = []
    for (x, z), coeff in sorted(expansion.items()):
        if abs(coeff) < 1e-14:
            continue
        if abs(coeff.real) > JW_REAL_RESIDUE_TOLERANCE:
            raise ShapeError(
                f"excitation generator mapped to non-imaginary coefficient {coeff}"
            )
        c = coeff.imag
        # exp(i theta c P) = PauliRotation(P, -2 c theta)
        gates.append(Gate("pauli_rot", (), slot=slot, angle=-2.0 * c, pauli=PauliString(n_modes, x, z)))
    return gates


def build_uccsd(n_spin_orbitals: int, occupied) -> Circuit:
    """Trotterized UCCSD over the spin-conserving excitation set.

    One first-order step in enumeration order; one amplitude per
    excitation. The circuit conserves particle number exactly because each
    excitation's rotation block equals the exact exponential of its
    number-conserving generator.
    """
    excitations = enumerate_excitations(n_spin_orbitals, occupied)
    gates = []
    slot = 0
    for i, a in excitations.singles:
        gates.extend(excitation_rotations(n_spin_orbitals, (i,), (a,), slot))
        slot += 1
    for i, j, a, b in excitations.doubles:
        gates.extend(excitation_rotations(n_spin_orbitals, (i, j), (a, b), slot))
        slot += 1
    return Circuit(n_spin_orbitals, tuple(gates), n_parameters=slot)
