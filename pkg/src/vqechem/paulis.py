"""Pauli strings on x/z bitmasks, and Hamiltonians as weighted Pauli sums.

Conventions, fixed repo-wide:
  * qubit ``j`` is bit ``j`` of a basis-state index (little-endian);
  * letter encoding per qubit: (x=0,z=0)=I, (1,0)=X, (1,1)=Y, (0,1)=Z;
  * in letter strings qubit 0 is the leftmost character.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import ShapeError

COEFF_PRUNE_THRESHOLD = 1e-12

_LETTER_TO_XZ = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_XZ_TO_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}


@dataclass(frozen=True, order=True)
class PauliString:
    n_qubits: int
    x_mask: int = 0
    z_mask: int = 0

    def __post_init__(self):
        limit = 1 << self.n_qubits
        if not (0 <= self.x_mask < limit and 0 <= self.z_mask < limit):
            raise ShapeError(
                f"masks do not fit in {self.n_qubits} qubits: "
                f"x={self.x_mask:#x} z={self.z_mask:#x}"
            )

    @classmethod
    def from_letters(cls, letters: str) -> PauliString:
        x = z = 0
        for q, letter in enumerate(letters):
            try:
                xq, zq = _LETTER_TO_XZ[letter]
            except KeyError:
                raise ShapeError(f"unknown Pauli letter {letter!r}") from None
            x |= xq << q
            z |= zq << q
        return cls(len(letters), x, z)

    def to_letters(self) -> str:
        return "".join(
            _XZ_TO_LETTER[(self.x_mask >> q) & 1, (self.z_mask >> q) & 1]
            for q in range(self.n_qubits)
        )

    @property
    def support_mask(self) -> int:
        return self.x_mask | self.z_mask

    @property
    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    @property
    def weight(self) -> int:
        return int(self.support_mask).bit_count()

    def __str__(self):
        return self.to_letters()


def pauli_multiply(a: PauliString, b: PauliString) -> tuple[complex, PauliString]:
    """Product a·b as (phase, string) with phase in {1, -1, 1j, -1j}.

    Writing each single-qubit Pauli as i^{xz} X^x Z^z, the product phase
    exponent per qubit is x1*z1 + x2*z2 + 2*z1*x2 - (x1^x2)*(z1^z2) mod 4.
    """
    if a.n_qubits != b.n_qubits:
        raise ShapeError(f"qubit counts differ: {a.n_qubits} != {b.n_qubits}")
    x1, z1, x2, z2 = a.x_mask, a.z_mask, b.x_mask, b.z_mask
    x, z = x1 ^ x2, z1 ^ z2
    k = (
        int(x1 & z1).bit_count()
        + int(x2 & z2).bit_count()
        + 2 * int(z1 & x2).bit_count()
        - int(x & z).bit_count()
    ) % 4
    return (1, 1j, -1, -1j)[k], PauliString(a.n_qubits, x, z)


def commutes_qubitwise(a: PauliString, b: PauliString) -> bool:
    """True iff at every qubit the letters are equal or at least one is I."""
    if a.n_qubits != b.n_qubits:
        raise ShapeError(f"qubit counts differ: {a.n_qubits} != {b.n_qubits}")
    both = a.support_mask & b.support_mask
    return (a.x_mask ^ b.x_mask) & both == 0 and (a.z_mask ^ b.z_mask) & both == 0


@dataclass(frozen=True)
class QubitHamiltonian:
    """Weighted sum of Pauli strings with real coefficients."""

    n_qubits: int
    terms: tuple[tuple[float, PauliString], ...]

    def __post_init__(self):
        seen = set()
        for w, p in self.terms:
            if p.n_qubits != self.n_qubits:
                raise ShapeError("term qubit count differs from Hamiltonian")
            if (p.x_mask, p.z_mask) in seen:
                raise ShapeError(f"duplicate Pauli string {p}")
            seen.add((p.x_mask, p.z_mask))
            if abs(w) < COEFF_PRUNE_THRESHOLD:
                raise ShapeError(f"coefficient {w} below prune threshold")

    @classmethod
    def from_term_dict(cls, n_qubits: int, coeffs: dict) -> QubitHamiltonian:
        """Build from {(x_mask, z_mask): weight}, pruning tiny weights.

        Terms are ordered by letter string so equal Hamiltonians always
        serialize identically.
        """
        merged = []
        for (x, z), w in coeffs.items():
            w = float(w)
            if abs(w) >= COEFF_PRUNE_THRESHOLD:
                merged.append((w, PauliString(n_qubits, x, z)))
        merged.sort(key=lambda t: t[1].to_letters())
        return cls(n_qubits, tuple(merged))

    @property
    def n_terms(self) -> int:
        return len(self.terms)

    def identity_weight(self) -> float:
        for w, p in self.terms:
            if p.is_identity:
                return w
        return 0.0

    def to_lines(self) -> str:
        """One term per line: ``<coefficient> <letters>``, qubit 0 leftmost."""
        return "\n".join(f"{w!r} {p.to_letters()}" for w, p in self.terms)

    @classmethod
    def from_lines(cls, text: str) -> QubitHamiltonian:
        coeffs = {}
        n_qubits = None
        for raw in text.splitlines():
            line = raw.strip()
            if not line:
                continue
            w_str, letters = line.split()
            if n_qubits is None:
                n_qubits = len(letters)
            p = PauliString.from_letters(letters)
            coeffs[(p.x_mask, p.z_mask)] = coeffs.get((p.x_mask, p.z_mask), 0.0) + float(w_str)
        if n_qubits is None:
            raise ShapeError("no terms in serialized Hamiltonian")
        return cls.from_term_dict(n_qubits, coeffs)


def _bit_parity(values: np.ndarray) -> np.ndarray:
    """Parity of the set bits of each entry (entries < 2**32)."""
    v = values.astype(np.uint32)
    v ^= v >> np.uint32(16)
    v ^= v >> np.uint32(8)
    v ^= v >> np.uint32(4)
    v ^= v >> np.uint32(2)
    v ^= v >> np.uint32(1)
    return (v & np.uint32(1)).astype(np.int8)


def pauli_action(p: PauliString, vec: np.ndarray) -> np.ndarray:
    """Apply one Pauli string to amplitudes indexed along the first axis.

    Pure index permutation plus phases; no matrix is formed:
    P|b> = i^{#Y} (-1)^{popcount(b & z)} |b ^ x>.
    """
    dim = 1 << p.n_qubits
    if vec.shape[0] != dim:
        raise ShapeError(f"vector length {vec.shape[0]} != 2**{p.n_qubits}")
    idx = np.arange(dim, dtype=np.uint32)
    phase = (1j) ** int(p.x_mask & p.z_mask).bit_count()
    signs = 1.0 - 2.0 * _bit_parity(idx & np.uint32(p.z_mask))
    out = np.empty_like(vec, dtype=np.complex128)
    out[idx ^ np.uint32(p.x_mask)] = (phase * signs).reshape(
        (dim,) + (1,) * (vec.ndim - 1)
    ) * vec
    return out
