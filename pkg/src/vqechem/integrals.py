"""Molecular integrals, restricted Hartree-Fock, and active-space reduction.

The built-in basis covers hydrogen-only systems with s-type STO-3G
functions; richer systems enter through FCIDUMP files instead. Two-electron
integrals are stored in chemist notation (pq|rs) everywhere.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .exceptions import (
    ActiveSpaceError,
    ScfConvergenceError,
    ShapeError,
    SingularGeometryError,
    UnsupportedElementError,
)

ELEMENT_Z = {
    "H": 1, "He": 2, "Li": 3, "Be": 4, "B": 5, "C": 6, "N": 7, "O": 8,
    "F": 9, "Ne": 10, "Na": 11, "Mg": 12, "Al": 13, "Si": 14, "P": 15,
    "S": 16, "Cl": 17, "Ar": 18,
}

SCF_DENSITY_TOLERANCE = 1e-8
SCF_MAX_ITERATIONS = 200
COINCIDENT_ATOM_TOLERANCE = 1e-6  # Bohr


@dataclass(frozen=True)
class Molecule:
    """Nuclear framework plus electron count.

    Parameters
    ----------
    atoms : tuple of (symbol, Z, xyz)
        Element symbol, nuclear charge, and position in Bohr.
    n_electrons : int
    """

    atoms: tuple
    n_electrons: int

    def __post_init__(self):
        if self.n_electrons < 0:
            raise ShapeError("n_electrons must be nonnegative")
        for symbol, z, xyz in self.atoms:
            if z < 1:
                raise ShapeError(f"nuclear charge {z} < 1 for {symbol}")
            if not np.all(np.isfinite(xyz)):
                raise ShapeError(f"non-finite position for {symbol}")

    @classmethod
    def from_geometry_dict(cls, doc: dict) -> Molecule:
        """Build from the geometry JSON schema.

        Schema: ``{"atoms": [{"symbol": str, "xyz_bohr": [x, y, z]}, ...],
        "charge": int}`` with positions in Bohr.
        """
        atoms = []
        for entry in doc["atoms"]:
            symbol = entry["symbol"]
            if symbol not in ELEMENT_Z:
                raise UnsupportedElementError(f"unknown element symbol {symbol!r}")
            atoms.append((symbol, ELEMENT_Z[symbol], np.asarray(entry["xyz_bohr"], dtype=float)))
        charge = int(doc.get("charge", 0))
        n_electrons = sum(z for _, z, _ in atoms) - charge
        return cls(tuple(atoms), n_electrons)


@dataclass(frozen=True)
class AOIntegrals:
    """Atomic-orbital integrals in a normalized basis (energies in Hartree)."""

    n_ao: int
    overlap: np.ndarray
    kinetic: np.ndarray
    nuclear: np.ndarray
    eri: np.ndarray  # chemist notation (pq|rs)
    e_nuc: float


@dataclass(frozen=True)
class RhfResult:
    total_energy: float
    orbital_energies: np.ndarray
    mo_coefficients: np.ndarray
    n_iterations: int
    converged: bool
    n_electrons: int
    energy_trace: tuple = ()


@dataclass(frozen=True)
class MolecularIntegrals:
    """Spatial-orbital integrals over molecular orbitals.

    ``constant_energy`` holds nuclear repulsion plus any frozen-core energy;
    ``h`` is the one-body matrix and ``g`` the chemist-notation (pq|rs)
    tensor, both over the current orbital set.
    """

    n_spatial_orbitals: int
    n_electrons: int
    constant_energy: float
    h: np.ndarray
    g: np.ndarray

    def __post_init__(self):
        n = self.n_spatial_orbitals
        if self.h.shape != (n, n) or self.g.shape != (n, n, n, n):
            raise ShapeError("integral array shapes inconsistent with orbital count")
        if not (np.all(np.isfinite(self.h)) and np.all(np.isfinite(self.g))):
            raise ShapeError("non-finite integral values")
        if not np.allclose(self.h, self.h.T, atol=1e-10):
            raise ShapeError("one-body integrals not symmetric")

    def validate_two_body_symmetry(self, atol: float = 1e-10) -> None:
        """Check the 8-fold permutation symmetry of (pq|rs)."""
        g = self.g
        for perm in (
            g.transpose(1, 0, 2, 3),
            g.transpose(0, 1, 3, 2),
            g.transpose(2, 3, 0, 1),
            g.transpose(3, 2, 1, 0),
        ):
            if not np.allclose(g, perm, atol=atol):
                raise ShapeError("two-body integrals lack 8-fold symmetry")


@dataclass(frozen=True)
class ActiveSpaceSpec:
    """Frozen (doubly occupied) and active spatial-orbital index sets."""

    frozen_spatial: tuple
    active_spatial: tuple

    def __post_init__(self):
        frozen, active = set(self.frozen_spatial), set(self.active_spatial)
        if frozen & active:
            raise ActiveSpaceError(f"orbitals {sorted(frozen & active)} both frozen and active")
        if tuple(sorted(self.frozen_spatial)) != tuple(self.frozen_spatial):
            raise ActiveSpaceError("frozen_spatial must be sorted")
        if tuple(sorted(self.active_spatial)) != tuple(self.active_spatial):
            raise ActiveSpaceError("active_spatial must be sorted")


def _load_sto3g_shell(symbol: str):
    data = json.loads(
        resources.files("vqechem.data").joinpath("sto3g_h.json").read_text()
    )
    try:
        shells = data["elements"][symbol]["shells"]
    except KeyError:
        raise UnsupportedElementError(
            f"no built-in basis for element {symbol!r}; only hydrogen is supported"
        ) from None
    return shells


def boys_f0(x: float) -> float:
    """Boys function F0 via the error-function closed form.

    The x -> 0 limit is taken explicitly below 1e-12 to avoid the 0/0
    singularity of the closed form.
    """
    if x > 1e-12:
        return 0.5 * math.sqrt(math.pi / x) * math.erf(math.sqrt(x))
    return 1.0


def _s_primitive_norm(alpha: float) -> float:
    return (2.0 * alpha / math.pi) ** 0.75


def nuclear_repulsion(molecule: Molecule) -> float:
    e = 0.0
    atoms = molecule.atoms
    for i in range(len(atoms)):
        for j in range(i + 1, len(atoms)):
            r = float(np.linalg.norm(atoms[i][2] - atoms[j][2]))
            if r < COINCIDENT_ATOM_TOLERANCE:
                raise SingularGeometryError(
                    f"atoms {i} and {j} coincide (separation {r:.2e} Bohr)"
                )
            e += atoms[i][1] * atoms[j][1] / r
    return e


def compute_ao_integrals(molecule: Molecule) -> AOIntegrals:
    """STO-3G s-orbital integrals for a hydrogen-only molecule.

    Each atom carries one contracted s function. The contracted functions
    are renormalized so the overlap diagonal is exactly 1. Closed-form
    Gaussian product formulas are used throughout, with the Boys function
    F0 handling the two-electron and nuclear-attraction kernels.
    """
    for symbol, z, _ in molecule.atoms:
        if symbol != "H" or z != 1:
            raise UnsupportedElementError(
                f"integral generation supports hydrogen only, got {symbol} (Z={z})"
            )
    if not molecule.atoms:
        raise ShapeError("molecule has no atoms")

    e_nuc = nuclear_repulsion(molecule)  # also rejects coincident atoms

    shell = _load_sto3g_shell("H")[0]
    exps = np.asarray(shell["exponents"], dtype=float)
    raw_coeffs = np.asarray(shell["coefficients"], dtype=float)

    # one (exponents, weights, center) record per AO, weights including
    # primitive norms and the contracted renormalization
    centers = [np.asarray(xyz, dtype=float) for _, _, xyz in molecule.atoms]
    weights = raw_coeffs * np.array([_s_primitive_norm(a) for a in exps])
    self_overlap = 0.0
    for ci, ai in zip(weights, exps):
        for cj, aj in zip(weights, exps):
            self_overlap += ci * cj * (math.pi / (ai + aj)) ** 1.5
    weights = weights / math.sqrt(self_overlap)

    n_ao = len(centers)
    S = np.zeros((n_ao, n_ao))
    T = np.zeros((n_ao, n_ao))
    V = np.zeros((n_ao, n_ao))
    eri = np.zeros((n_ao, n_ao, n_ao, n_ao))

    def pair_terms(a_idx, b_idx):
        """Gaussian product data for every primitive pair of two AOs."""
        ra, rb = centers[a_idx], centers[b_idx]
        rab2 = float(np.dot(ra - rb, ra - rb))
        for ca, aa in zip(weights, exps):
            for cb, ab in zip(weights, exps):
                p = aa + ab
                mu = aa * ab / p
                pref = ca * cb * math.exp(-mu * rab2)
                center = (aa * ra + ab * rb) / p
                yield pref, p, mu, rab2, center

    for a in range(n_ao):
        for b in range(a, n_ao):
            s = t = v = 0.0
            for pref, p, mu, rab2, rp in pair_terms(a, b):
                gauss = (math.pi / p) ** 1.5
                s += pref * gauss
                t += pref * mu * (3.0 - 2.0 * mu * rab2) * gauss
                for _, z, rc in molecule.atoms:
                    dist2 = float(np.dot(rp - rc, rp - rc))
                    v -= pref * z * (2.0 * math.pi / p) * boys_f0(p * dist2)
            S[a, b] = S[b, a] = s
            T[a, b] = T[b, a] = t
            V[a, b] = V[b, a] = v

    for a in range(n_ao):
        for b in range(n_ao):
            bra = list(pair_terms(a, b))
            for c in range(n_ao):
                for d in range(n_ao):
                    if (c, d) < (a, b):  # filled by symmetry below
                        continue
                    val = 0.0
                    for pref1, p, _, _, rp in bra:
                        for pref2, q, _, _, rq in pair_terms(c, d):
                            dist2 = float(np.dot(rp - rq, rp - rq))
                            val += (
                                pref1
                                * pref2
                                * 2.0
                                * math.pi ** 2.5
                                / (p * q * math.sqrt(p + q))
                                * boys_f0(p * q / (p + q) * dist2)
                            )
                    eri[a, b, c, d] = eri[c, d, a, b] = val

    return AOIntegrals(n_ao, S, T, V, eri, e_nuc)


def run_rhf(ao: AOIntegrals, n_electrons: int) -> RhfResult:
    """Restricted Hartree-Fock by plain Roothaan iteration.

    Convergence: successive density matrices differ by < 1e-8 (max-abs).
    No DIIS or damping; the target systems are small enough that the bare
    fixed-point iteration converges monotonically.
    """
    if n_electrons % 2 != 0:
        raise ShapeError(f"RHF requires an even electron count, got {n_electrons}")
    if n_electrons > 2 * ao.n_ao:
        raise ShapeError("more electrons than spin orbitals")

    h_core = ao.kinetic + ao.nuclear
    s_vals, s_vecs = np.linalg.eigh(ao.overlap)
    if s_vals.min() <= 1e-10:
        raise SingularGeometryError("overlap matrix is numerically singular")
    x = s_vecs @ np.diag(s_vals ** -0.5) @ s_vecs.T

    def solve_fock(fock):
        eps, c_prime = np.linalg.eigh(x.T @ fock @ x)
        return eps, x @ c_prime

    if n_electrons == 0:
        eps, c = solve_fock(h_core)
        return RhfResult(ao.e_nuc, eps, c, 0, True, 0, (ao.e_nuc,))

    n_occ = n_electrons // 2
    eps, c = solve_fock(h_core)  # core guess
    density = 2.0 * c[:, :n_occ] @ c[:, :n_occ].T
    trace = []
    for iteration in range(1, SCF_MAX_ITERATIONS + 1):
        coulomb = np.einsum("pqrs,rs->pq", ao.eri, density)
        exchange = np.einsum("prqs,rs->pq", ao.eri, density)
        fock = h_core + coulomb - 0.5 * exchange
        energy = 0.5 * np.einsum("pq,pq->", density, h_core + fock) + ao.e_nuc
        trace.append(float(energy))

        eps, c = solve_fock(fock)
        new_density = 2.0 * c[:, :n_occ] @ c[:, :n_occ].T
        delta = np.abs(new_density - density).max()
        density = new_density
        if delta < SCF_DENSITY_TOLERANCE:
            coulomb = np.einsum("pqrs,rs->pq", ao.eri, density)
            exchange = np.einsum("prqs,rs->pq", ao.eri, density)
            fock = h_core + coulomb - 0.5 * exchange
            energy = 0.5 * np.einsum("pq,pq->", density, h_core + fock) + ao.e_nuc
            trace.append(float(energy))
            return RhfResult(
                float(energy), eps, c, iteration, True, n_electrons, tuple(trace)
            )

    raise ScfConvergenceError(
        f"SCF not converged after {SCF_MAX_ITERATIONS} iterations",
        last_energy=trace[-1],
    )


def transform_to_mo(ao: AOIntegrals, rhf: RhfResult) -> MolecularIntegrals:
    """Four-index transform of the AO integrals into the MO basis."""
    if not rhf.converged:
        raise ShapeError("RHF result not converged")
    c = rhf.mo_coefficients
    if c.shape[0] != ao.n_ao:
        raise ShapeError("MO coefficient rows do not match AO count")
    h_mo = c.T @ (ao.kinetic + ao.nuclear) @ c
    g_mo = np.einsum("pqrs,pi,qj,rk,sl->ijkl", ao.eri, c, c, c, c, optimize=True)
    return MolecularIntegrals(
        n_spatial_orbitals=c.shape[1],
        n_electrons=rhf.n_electrons,
        constant_energy=ao.e_nuc,
        h=h_mo,
        g=g_mo,
    )


def freeze_core(integrals: MolecularIntegrals, spec: ActiveSpaceSpec) -> MolecularIntegrals:
    """Fold doubly occupied core orbitals into an effective active-space problem.

    The core energy 2*sum_i h_ii + sum_ij [2(ii|jj) - (ij|ji)] moves into
    the constant, and the active one-body matrix picks up the standard
    closed-shell contraction h'_pq = h_pq + sum_i [2(pq|ii) - (pi|iq)].
    """
    n = integrals.n_spatial_orbitals
    frozen = list(spec.frozen_spatial)
    active = list(spec.active_spatial)
    for idx in frozen + active:
        if not 0 <= idx < n:
            raise ActiveSpaceError(f"orbital index {idx} outside 0..{n - 1}")
    n_occ = integrals.n_electrons // 2
    for idx in frozen:
        if idx >= n_occ:
            raise ActiveSpaceError(
                f"frozen orbital {idx} is not doubly occupied in the reference"
            )
    if not active:
        raise ActiveSpaceError("active space is empty")

    if not frozen and active == list(range(n)):
        return integrals

    h, g = integrals.h, integrals.g
    e_core = 0.0
    for i in frozen:
        e_core += 2.0 * h[i, i]
        for j in frozen:
            e_core += 2.0 * g[i, i, j, j] - g[i, j, j, i]

    act = np.asarray(active, dtype=int)
    h_eff = h[np.ix_(act, act)].copy()
    for i in frozen:
        h_eff += 2.0 * g[np.ix_(act, act, [i], [i])][:, :, 0, 0]
        h_eff -= g[np.ix_(act, [i], [i], act)][:, 0, 0, :]

    g_act = g[np.ix_(act, act, act, act)]
    return MolecularIntegrals(
        n_spatial_orbitals=len(active),
        n_electrons=integrals.n_electrons - 2 * len(frozen),
        constant_energy=integrals.constant_energy + float(e_core),
        h=h_eff,
        g=g_act,
    )
