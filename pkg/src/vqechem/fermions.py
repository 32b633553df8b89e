"""Second-quantized fermionic operators and the Jordan-Wigner transform.

Spin orbitals use the interleaved convention: spatial orbital ``i`` maps to
spin orbitals ``2i`` (alpha) and ``2i+1`` (beta). Operator terms are stored
normal ordered: all creations left of all annihilations, creation indices
strictly increasing, annihilation indices strictly decreasing.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .exceptions import NonHermitianError, ShapeError
from .integrals import MolecularIntegrals
from .paulis import COEFF_PRUNE_THRESHOLD, QubitHamiltonian

JW_IMAG_TOLERANCE = 1e-10

# A term is a tuple of (mode, is_creation) factors; the empty term is the
# identity and carries the constant.
Term = tuple[tuple[int, bool], ...]


def _normal_order_term(term: Term, coeff: float, out: dict) -> None:
    """Accumulate the normal-ordered expansion of ``coeff * term`` into out.

    Repeated swaps of adjacent factors using {a_p, a_q^+} = delta_pq,
    {a_p, a_q} = {a_p^+, a_q^+} = 0. Terminates because each swap either
    shortens the term or reduces its inversion count.
    """
    stack = [(list(term), coeff)]
    while stack:
        ops, c = stack.pop()
        swapped = True
        while swapped:
            swapped = False
            for k in range(len(ops) - 1):
                (p, dag_p), (q, dag_q) = ops[k], ops[k + 1]
                if not dag_p and dag_q:
                    # a_p a_q^+ = delta_pq - a_q^+ a_p
                    if p == q:
                        stack.append((ops[:k] + ops[k + 2 :], c))
                    ops[k], ops[k + 1] = ops[k + 1], ops[k]
                    c = -c
                    swapped = True
                elif dag_p == dag_q:
                    if p == q:
                        c = 0.0  # nilpotent
                        break
                    # sort creations ascending, annihilations descending
                    wrong = (dag_p and p > q) or (not dag_p and p < q)
                    if wrong:
                        ops[k], ops[k + 1] = ops[k + 1], ops[k]
                        c = -c
                        swapped = True
            if c == 0.0:
                break
        if c != 0.0:
            key = tuple(ops)
            out[key] = out.get(key, 0.0) + c


@dataclass(frozen=True)
class FermionOperator:
    """Real-coefficient linear combination of normal-ordered operator strings."""

    n_modes: int
    terms: dict[Term, float] = field(default_factory=dict)

    @classmethod
    def from_terms(cls, n_modes: int, raw_terms: dict[Term, float]) -> FermionOperator:
        """Normal order, combine like strings, drop zeros."""
        ordered: dict[Term, float] = {}
        for term, coeff in raw_terms.items():
            for mode, _ in term:
                if not 0 <= mode < n_modes:
                    raise ShapeError(f"mode {mode} outside 0..{n_modes - 1}")
            _normal_order_term(term, float(coeff), ordered)
        cleaned = {t: c for t, c in sorted(ordered.items()) if abs(c) > 0.0}
        return cls(n_modes, cleaned)

    @property
    def constant(self) -> float:
        return self.terms.get((), 0.0)

    def __add__(self, other: FermionOperator) -> FermionOperator:
        if self.n_modes != other.n_modes:
            raise ShapeError("mode counts differ")
        merged = dict(self.terms)
        for t, c in other.terms.items():
            merged[t] = merged.get(t, 0.0) + c
        return FermionOperator.from_terms(self.n_modes, merged)


def number_operator(n_modes: int) -> FermionOperator:
    """Total particle number, sum over modes of a_p^+ a_p."""
    return FermionOperator.from_terms(
        n_modes, {((p, True), (p, False)): 1.0 for p in range(n_modes)}
    )


def build_second_quantized(integrals: MolecularIntegrals) -> FermionOperator:
    """Assemble the electronic Hamiltonian over spin orbitals.

    H = E_const
      + sum_{pq,sigma} h[p,q] a^+_{p sigma} a_{q sigma}
      + 1/2 sum_{pqrs,sigma tau} (pr|qs) a^+_{p sigma} a^+_{q tau} a_{s tau} a_{r sigma}

    with spatial integrals in chemist notation; spin is conserved factorwise.
    """
    n = integrals.n_spatial_orbitals
    h, g = integrals.h, integrals.g
    raw: dict[Term, float] = {(): float(integrals.constant_energy)}

    def so(spatial: int, spin: int) -> int:
        return 2 * spatial + spin

    for p in range(n):
        for q in range(n):
            if abs(h[p, q]) < COEFF_PRUNE_THRESHOLD:
                continue
            for s in (0, 1):
                term = ((so(p, s), True), (so(q, s), False))
                raw[term] = raw.get(term, 0.0) + float(h[p, q])

    for p in range(n):
        for q in range(n):
            for r in range(n):
                for s in range(n):
                    coeff = 0.5 * float(g[p, r, q, s])
                    if abs(coeff) < COEFF_PRUNE_THRESHOLD:
                        continue
                    for sp in (0, 1):
                        for tau in (0, 1):
                            term = (
                                (so(p, sp), True),
                                (so(q, tau), True),
                                (so(s, tau), False),
                                (so(r, sp), False),
                            )
                            raw[term] = raw.get(term, 0.0) + coeff

    return FermionOperator.from_terms(2 * n, raw)


def _jw_mode_factors(mode: int, is_creation: bool) -> list[tuple[complex, int, int]]:
    """JW image of one ladder operator as [(coeff, x_mask, z_mask), ...].

    a_j^+ = (X_j - iY_j)/2 * Z_0..Z_{j-1},  a_j = (X_j + iY_j)/2 * Z_0..Z_{j-1}.
    """
    z_chain = (1 << mode) - 1
    bit = 1 << mode
    sign = -1j if is_creation else 1j
    return [
        (0.5, bit, z_chain),
        (0.5 * sign, bit, z_chain | bit),
    ]


def jordan_wigner_term_dict(op: FermionOperator) -> dict[tuple[int, int], complex]:
    """Expand an operator into {(x_mask, z_mask): complex coefficient}.

    Internal workhorse; callers needing a Hermitian Hamiltonian should use
    :func:`jordan_wigner`, which validates and realifies the result.
    """
    from .paulis import PauliString, pauli_multiply

    n_qubits = op.n_modes
    accum: dict[tuple[int, int], complex] = {}
    for term, coeff in op.terms.items():
        partial: dict[tuple[int, int], complex] = {(0, 0): complex(coeff)}
        for mode, dag in term:
            nxt: dict[tuple[int, int], complex] = {}
            for (x1, z1), c1 in partial.items():
                for c2, x2, z2 in _jw_mode_factors(mode, dag):
                    phase, prod = pauli_multiply(
                        PauliString(n_qubits, x1, z1), PauliString(n_qubits, x2, z2)
                    )
                    key = (prod.x_mask, prod.z_mask)
                    nxt[key] = nxt.get(key, 0.0) + c1 * c2 * phase
            partial = nxt
        for key, c in partial.items():
            accum[key] = accum.get(key, 0.0) + c
    return accum


def jordan_wigner(op: FermionOperator) -> QubitHamiltonian:
    """Map a Hermitian fermionic operator to a qubit Hamiltonian.

    Imaginary residues below 1e-10 are discarded; anything larger means the
    input was not Hermitian and raises.
    """
    accum = jordan_wigner_term_dict(op)
    real_terms: dict[tuple[int, int], float] = {}
    for key, c in accum.items():
        if abs(c.imag) > JW_IMAG_TOLERANCE:
            raise NonHermitianError(
                f"imaginary coefficient {c.imag:.3e} on term with masks {key}"
            )
        real_terms[key] = c.real
    return QubitHamiltonian.from_term_dict(op.n_modes, real_terms)
