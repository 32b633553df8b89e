import numpy as np
import pytest

from oracles import hamiltonian_matrix, pauli_matrix
from vqechem.exceptions import ShapeError
from vqechem.paulis import (
    PauliString,
    QubitHamiltonian,
    commutes_qubitwise,
    pauli_action,
    pauli_multiply,
)


def P(letters):
    return PauliString.from_letters(letters)


def test_letter_roundtrip():
    for letters in ("I", "XYZ", "IZXI", "YYYY"):
        assert P(letters).to_letters() == letters


def test_identity_string_masks():
    assert P("III") == PauliString(3, 0, 0)
    assert P("III").is_identity


def test_mask_out_of_range():
    with pytest.raises(ShapeError):
        PauliString(1, x_mask=2, z_mask=0)


def test_multiply_xx_identity():
    phase, product = pauli_multiply(P("X"), P("X"))
    assert phase == 1 and product.is_identity


def test_multiply_xy_gives_iz():
    phase, product = pauli_multiply(P("X"), P("Y"))
    assert phase == 1j and product == P("Z")


def test_multiply_size_mismatch():
    with pytest.raises(ShapeError):
        pauli_multiply(P("X"), P("XX"))


@pytest.mark.parametrize("seed", range(8))
def test_multiply_matches_dense_oracle(seed):
    rng = np.random.default_rng(seed)
    n = 6
    a = PauliString(n, int(rng.integers(0, 64)), int(rng.integers(0, 64)))
    b = PauliString(n, int(rng.integers(0, 64)), int(rng.integers(0, 64)))
    phase, product = pauli_multiply(a, b)
    dense = pauli_matrix(a.to_letters()) @ pauli_matrix(b.to_letters())
    assert np.allclose(dense, phase * pauli_matrix(product.to_letters()), atol=1e-12)


def test_multiply_associative_and_phase_group():
    rng = np.random.default_rng(7)
    phases = {1, -1, 1j, -1j}
    for _ in range(30):
        a, b, c = (
            PauliString(4, int(rng.integers(0, 16)), int(rng.integers(0, 16)))
            for _ in range(3)
        )
        ph_ab, ab = pauli_multiply(a, b)
        ph1, left = pauli_multiply(ab, c)
        ph_bc, bc = pauli_multiply(b, c)
        ph2, right = pauli_multiply(a, bc)
        assert left == right
        assert ph_ab * ph1 == ph_bc * ph2
        assert ph_ab in phases and ph1 in phases


def test_commutes_qubitwise_examples():
    assert commutes_qubitwise(P("ZI"), P("ZZ"))
    # globally commuting but not qubit-wise
    assert not commutes_qubitwise(P("XX"), P("ZZ"))
    dense_comm = pauli_matrix("XX") @ pauli_matrix("ZZ") - pauli_matrix("ZZ") @ pauli_matrix("XX")
    assert np.allclose(dense_comm, 0)


@pytest.mark.parametrize("seed", range(20))
def test_qubitwise_implies_matrix_commutation(seed):
    rng = np.random.default_rng(100 + seed)
    n = 5
    a = PauliString(n, int(rng.integers(0, 32)), int(rng.integers(0, 32)))
    b = PauliString(n, int(rng.integers(0, 32)), int(rng.integers(0, 32)))
    if commutes_qubitwise(a, b):
        ma, mb = pauli_matrix(a.to_letters()), pauli_matrix(b.to_letters())
        assert np.allclose(ma @ mb, mb @ ma, atol=1e-12)


def test_hamiltonian_merges_and_prunes():
    h = QubitHamiltonian.from_term_dict(
        2,
        {
            (P("XX").x_mask, P("XX").z_mask): 0.25,
            (0, 0): 1e-15,  # below prune threshold
        },
    )
    assert h.n_terms == 1
    assert h.terms[0][0] == 0.25


def test_hamiltonian_rejects_duplicates():
    with pytest.raises(ShapeError):
        QubitHamiltonian(1, ((0.5, P("X")), (0.25, P("X"))))


def test_serialization_roundtrip_and_stability():
    h = QubitHamiltonian.from_term_dict(
        4,
        {
            (P("IIZZ").x_mask, P("IIZZ").z_mask): 0.1702,
            (P("XYIZ").x_mask, P("XYIZ").z_mask): -0.03,
            (0, 0): -1.25,
        },
    )
    text = h.to_lines()
    assert "0.1702 IIZZ" in text
    again = QubitHamiltonian.from_lines(text)
    assert again == h
    assert again.to_lines() == text


def test_pauli_action_matches_dense():
    rng = np.random.default_rng(3)
    for _ in range(10):
        n = 5
        p = PauliString(n, int(rng.integers(0, 32)), int(rng.integers(0, 32)))
        v = rng.standard_normal(32) + 1j * rng.standard_normal(32)
        assert np.allclose(
            pauli_action(p, v), pauli_matrix(p.to_letters()) @ v, atol=1e-12
        )


def test_hamiltonian_matrix_oracle_consistency(h2_hamiltonian_074):
    # identity weight accessor against the dense trace
    dense = hamiltonian_matrix(h2_hamiltonian_074)
    dim = dense.shape[0]
    assert np.isclose(np.trace(dense).real / dim, h2_hamiltonian_074.identity_weight())
