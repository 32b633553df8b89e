"""End-to-end workflows: scans over geometries or FCIDUMP files, curve
fitting for equilibrium and barrier analysis, curve comparison, and
convergence-trace export.

A scan is described by a JSON manifest (see :func:`load_manifest`); each
point runs the full pipeline integrals -> (optional frozen core) ->
Jordan-Wigner -> VQE plus exact diagonalization, with a per-point seed
derived from the scan seed and the point label so points are independent
and reorderable.
"""

from __future__ import annotations

import json
import zlib
from dataclasses import dataclass, replace

import numpy as np

from .ansatz import build_hardware_efficient, build_uccsd
from .exactdiag import ground_state_energy
from .exceptions import FitBracketError, BarrierError, CurveAlignmentError, ManifestError
from .fcidump import parse_fcidump
from .fermions import build_second_quantized, jordan_wigner
from .integrals import (
    ActiveSpaceSpec,
    Molecule,
    MolecularIntegrals,
    compute_ao_integrals,
    freeze_core,
    run_rhf,
    transform_to_mo,
)
from .measurement import group_commuting
from .optimize import OptimizerConfig, VqeResult, run_vqe
from .units import ANGSTROM_TO_BOHR, HARTREE_TO_KCALMOL


@dataclass(frozen=True)
class ScanPoint:
    label: str
    coordinate: float
    geometry: dict | None = None
    fcidump_path: str | None = None

    def __post_init__(self):
        if (self.geometry is None) == (self.fcidump_path is None):
            raise ManifestError(
                f"point {self.label!r} needs exactly one of geometry or fcidump"
            )


@dataclass(frozen=True)
class ScanManifest:
    label: str
    points: tuple
    coordinate_unit: str = "angstrom"
    ansatz: str = "uccsd"
    reps: int = 1
    optimizer: OptimizerConfig = OptimizerConfig()
    mode: str = "exact"
    shots: int = 1024
    seed: int = 0
    restarts: int = 5
    freeze: tuple = ()

    def __post_init__(self):
        labels = [p.label for p in self.points]
        if len(set(labels)) != len(labels):
            raise ManifestError("point labels must be unique")
        if self.coordinate_unit not in ("angstrom", "bohr"):
            raise ManifestError(f"unknown coordinate unit {self.coordinate_unit!r}")
        if self.ansatz not in ("uccsd", "hardware"):
            raise ManifestError(f"unknown ansatz {self.ansatz!r}")
        if self.mode not in ("exact", "sampled"):
            raise ManifestError(f"unknown mode {self.mode!r}")


@dataclass(frozen=True)
class PesPoint:
    geometry_label: str
    coordinate: float
    e_vqe: float
    e_fci: float
    error_mha: float
    n_pauli_terms: int
    n_groups: int


@dataclass(frozen=True)
class SinglePointResult:
    vqe: VqeResult
    e_fci: float
    n_qubits: int
    n_pauli_terms: int
    n_groups: int


def load_manifest(doc: dict, base_dir: str = ".") -> ScanManifest:
    """Build a manifest from its JSON document.

    Schema::

        {"label": str, "coordinate_unit": "angstrom"|"bohr",
         "ansatz": "uccsd"|"hardware", "reps": int,
         "optimizer": {"kind": "simplex"|"spsa", "max_iterations": int,
                       "convergence_threshold": float, ...},
         "mode": "exact"|"sampled", "shots": int, "seed": int,
         "restarts": int, "freeze": [int, ...],
         "points": [{"label": str, "coordinate": float,
                     "geometry": {"atoms": [{"symbol", "xyz_bohr"}], "charge": int}}
                    | {"label": str, "coordinate": float, "fcidump": "path"}]}

    FCIDUMP paths are resolved relative to ``base_dir``.
    """
    import os

    points = []
    for entry in doc.get("points", []):
        fcidump_path = entry.get("fcidump")
        if fcidump_path is not None:
            fcidump_path = os.path.join(base_dir, fcidump_path)
        points.append(
            ScanPoint(
                label=str(entry["label"]),
                coordinate=float(entry.get("coordinate", 0.0)),
                geometry=entry.get("geometry"),
                fcidump_path=fcidump_path,
            )
        )
    optimizer = OptimizerConfig(**doc.get("optimizer", {}))
    return ScanManifest(
        label=str(doc.get("label", "scan")),
        points=tuple(points),
        coordinate_unit=doc.get("coordinate_unit", "angstrom"),
        ansatz=doc.get("ansatz", "uccsd"),
        reps=int(doc.get("reps", 1)),
        optimizer=optimizer,
        mode=doc.get("mode", "exact"),
        shots=int(doc.get("shots", 1024)),
        seed=int(doc.get("seed", 0)),
        restarts=int(doc.get("restarts", 5)),
        freeze=tuple(doc.get("freeze", [])),
    )


def point_seed(base_seed: int, label: str) -> int:
    """Stable per-point seed; independent of point order in the manifest."""
    return (base_seed + zlib.crc32(label.encode("utf-8"))) % (2**31)


def integrals_for_point(point: ScanPoint, freeze: tuple = ()) -> MolecularIntegrals:
    """Resolve a scan point to (optionally frozen-core) MO integrals.

    Inline hydrogen geometries run the built-in STO-3G + RHF pipeline; for
    an odd electron count the orbitals come from the largest even count
    (full CI is invariant to this orbital choice, and the extra electron
    occupies the next alpha spin orbital of the reference).
    """
    if point.fcidump_path is not None:
        with open(point.fcidump_path, "r", encoding="utf-8") as fh:
            integrals = parse_fcidump(fh.read())
    else:
        molecule = Molecule.from_geometry_dict(point.geometry)
        ao = compute_ao_integrals(molecule)
        rhf = run_rhf(ao, molecule.n_electrons - molecule.n_electrons % 2)
        integrals = transform_to_mo(ao, rhf)
        if molecule.n_electrons % 2:
            integrals = replace(integrals, n_electrons=molecule.n_electrons)
    if freeze:
        n = integrals.n_spatial_orbitals
        active = tuple(i for i in range(n) if i not in set(freeze))
        integrals = freeze_core(integrals, ActiveSpaceSpec(tuple(sorted(freeze)), active))
    return integrals


def run_single_point(
    integrals: MolecularIntegrals,
    ansatz: str = "uccsd",
    reps: int = 1,
    optimizer: OptimizerConfig = OptimizerConfig(),
    mode: str = "exact",
    shots: int = 1024,
    restarts: int = 5,
) -> SinglePointResult:
    """Map integrals to qubits, minimize, and cross-check with exact FCI."""
    hamiltonian = jordan_wigner(build_second_quantized(integrals))
    n_qubits = hamiltonian.n_qubits
    occupied = set(range(integrals.n_electrons))
    if ansatz == "uccsd":
        circuit = build_uccsd(n_qubits, occupied)
    else:
        circuit = build_hardware_efficient(n_qubits, reps)
    vqe = run_vqe(
        hamiltonian, circuit, occupied, optimizer,
        mode=mode, shots=shots, n_restarts=restarts,
    )
    fci = ground_state_energy(hamiltonian)
    groups = group_commuting(hamiltonian)
    return SinglePointResult(
        vqe=vqe,
        e_fci=fci.energy,
        n_qubits=n_qubits,
        n_pauli_terms=hamiltonian.n_terms,
        n_groups=len(groups),
    )


def run_scan(manifest: ScanManifest):
    """Run every manifest point; returns (pes_points, errors).

    A failing point is recorded as (label, message) and the scan continues;
    if every point fails a ManifestError is raised.
    """
    points = []
    errors = []
    for point in manifest.points:
        try:
            integrals = integrals_for_point(point, manifest.freeze)
            optimizer = replace(manifest.optimizer, seed=point_seed(manifest.seed, point.label))
            result = run_single_point(
                integrals,
                ansatz=manifest.ansatz,
                reps=manifest.reps,
                optimizer=optimizer,
                mode=manifest.mode,
                shots=manifest.shots,
                restarts=manifest.restarts,
            )
            e_vqe, e_fci = result.vqe.final_energy, result.e_fci
            points.append(
                PesPoint(
                    geometry_label=point.label,
                    coordinate=point.coordinate,
                    e_vqe=e_vqe,
                    e_fci=e_fci,
                    error_mha=(e_vqe - e_fci) * 1000.0,
                    n_pauli_terms=result.n_pauli_terms,
                    n_groups=result.n_groups,
                )
            )
        except Exception as exc:  # per-point isolation is the contract
            errors.append((point.label, f"{type(exc).__name__}: {exc}"))
    if manifest.points and not points:
        raise ManifestError(f"all {len(manifest.points)} scan points failed: {errors}")
    return points, errors


SCAN_CSV_HEADER = "label,coordinate,e_vqe,e_fci,error_mha,n_pauli_terms,n_groups"


def scan_csv(points) -> str:
    rows = [SCAN_CSV_HEADER]
    for p in points:
        rows.append(
            f"{p.geometry_label},{float(p.coordinate)!r},{float(p.e_vqe)!r},"
            f"{float(p.e_fci)!r},{float(p.error_mha)!r},{p.n_pauli_terms},{p.n_groups}"
        )
    return "\n".join(rows) + "\n"


def parse_scan_csv(text: str):
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != SCAN_CSV_HEADER:
        raise ManifestError("not a scan CSV (header mismatch)")
    points = []
    for line in lines[1:]:
        label, coord, e_vqe, e_fci, err, n_terms, n_groups = line.split(",")
        points.append(
            PesPoint(label, float(coord), float(e_vqe), float(e_fci),
                     float(err), int(n_terms), int(n_groups))
        )
    return points


def _fit_window(coords, energies, pivot, half_width=2, max_size=6):
    """The 4-6 samples nearest the pivot, as centered-x polynomial data."""
    order = np.argsort(np.abs(coords - coords[pivot]), kind="stable")
    size = min(max(4, 2 * half_width + 1), max_size, len(coords))
    chosen = np.sort(order[:size])
    return coords[chosen], energies[chosen]


def _cubic_stationary(x, y, pivot_coord, want_minimum):
    """Stationary point of a least-squares cubic with the requested curvature."""
    center = float(np.mean(x))
    coeffs = np.polyfit(x - center, y, 3)
    deriv = np.polyder(coeffs)
    curvature = np.polyder(deriv)
    candidates = []
    for root in np.roots(deriv):
        if abs(root.imag) > 1e-10:
            continue
        r = float(root.real)
        curv = float(np.polyval(curvature, r))
        if (curv > 0) == want_minimum and (x - center).min() - 1e-9 <= r <= (x - center).max() + 1e-9:
            candidates.append((r + center, float(np.polyval(coeffs, r))))
    if not candidates:
        kind = "minimum" if want_minimum else "maximum"
        raise FitBracketError(f"cubic fit has no interior {kind}")
    # nearest stationary point to the discrete extremum
    return min(candidates, key=lambda c: abs(c[0] - pivot_coord))


def fit_equilibrium(coords, energies):
    """Equilibrium coordinate and energy from a cubic fit near the minimum.

    Requires at least 4 points and a discrete interior minimum.
    """
    coords = np.asarray(coords, dtype=float)
    energies = np.asarray(energies, dtype=float)
    if coords.shape != energies.shape or coords.ndim != 1:
        raise FitBracketError("coordinate and energy arrays must match")
    if len(coords) < 4:
        raise FitBracketError(f"need at least 4 points, got {len(coords)}")
    order = np.argsort(coords, kind="stable")
    coords, energies = coords[order], energies[order]
    k = int(np.argmin(energies))
    if k == 0 or k == len(coords) - 1:
        raise FitBracketError("discrete minimum sits on the scan boundary")
    x, y = _fit_window(coords, energies, k)
    return _cubic_stationary(x, y, coords[k], want_minimum=True)


def dissociation_energy(coords, energies) -> float:
    """(E at the largest coordinate - fitted E_min) in kcal/mol."""
    coords = np.asarray(coords, dtype=float)
    energies = np.asarray(energies, dtype=float)
    if energies.max() - energies.min() < 1e-12:
        return 0.0
    _, e_min = fit_equilibrium(coords, energies)
    e_asymptote = float(energies[np.argmax(coords)])
    return (e_asymptote - e_min) * HARTREE_TO_KCALMOL


def activation_energy(coords, energies) -> float:
    """Barrier height in kcal/mol from a reaction-coordinate scan.

    The saddle is the cubic-fitted interior maximum; the reactant energy is
    the fitted minimum on the lower-coordinate side when that minimum is
    interior, else the raw end-point energy (an asymptotic reactant).
    """
    coords = np.asarray(coords, dtype=float)
    energies = np.asarray(energies, dtype=float)
    if len(coords) < 4:
        raise BarrierError(f"need at least 4 points, got {len(coords)}")
    order = np.argsort(coords, kind="stable")
    coords, energies = coords[order], energies[order]
    k = int(np.argmax(energies))
    if k == 0 or k == len(coords) - 1:
        raise BarrierError("no interior maximum along the scan")
    x, y = _fit_window(coords, energies, k)
    try:
        _, e_saddle = _cubic_stationary(x, y, coords[k], want_minimum=False)
    except FitBracketError:
        raise BarrierError("cubic fit near the discrete maximum has no interior maximum")

    left_energies = energies[: k + 1]
    m = int(np.argmin(left_energies))
    if 0 < m < k:
        x_min, y_min = _fit_window(coords[: k + 1], left_energies, m)
        _, e_reactant = _cubic_stationary(x_min, y_min, coords[m], want_minimum=True)
    else:
        e_reactant = float(left_energies[m])
    return (e_saddle - e_reactant) * HARTREE_TO_KCALMOL


@dataclass(frozen=True)
class CurveComparison:
    rows: tuple  # (label, e_a, e_b, delta) with delta = e_a - e_b
    mean_shift: float
    min_shift: float
    max_shift: float

    def to_csv(self) -> str:
        out = ["label,e_a,e_b,delta"]
        for label, e_a, e_b, delta in self.rows:
            out.append(f"{label},{float(e_a)!r},{float(e_b)!r},{float(delta)!r}")
        return "\n".join(out) + "\n"


def compare_curves(curve_a, curve_b) -> CurveComparison:
    """Pointwise shift between two labeled curves (delta = a - b).

    Inputs are sequences of (label, energy); labels must coincide as sets.
    """
    a = dict(curve_a)
    b = dict(curve_b)
    if len(a) != len(curve_a) or len(b) != len(curve_b):
        raise CurveAlignmentError("duplicate labels within a curve")
    if set(a) != set(b):
        missing = set(a) ^ set(b)
        raise CurveAlignmentError(f"curves do not share labels: {sorted(missing)}")
    rows = tuple(
        (label, a[label], b[label], a[label] - b[label]) for label, _ in curve_a
    )
    deltas = [r[3] for r in rows]
    return CurveComparison(
        rows, float(np.mean(deltas)), float(min(deltas)), float(max(deltas))
    )


def trace_csv(result: VqeResult) -> str:
    """Convergence export: ``iteration,energy,best_energy`` per iteration."""
    rows = ["iteration,energy,best_energy"]
    best = result.best_so_far()
    for i, (energy, best_energy) in enumerate(zip(result.energy_trace, best)):
        rows.append(f"{i},{float(energy)!r},{float(best_energy)!r}")
    return "\n".join(rows) + "\n"


def hydrogen_geometry(positions_bohr, charge: int = 0) -> dict:
    """Geometry document for a set of hydrogen atoms (positions in Bohr)."""
    return {
        "atoms": [
            {"symbol": "H", "xyz_bohr": [float(c) for c in xyz]} for xyz in positions_bohr
        ],
        "charge": charge,
    }


def h2_point(label: str, r_angstrom: float) -> dict:
    r_bohr = r_angstrom * ANGSTROM_TO_BOHR
    return {
        "label": label,
        "coordinate": r_angstrom,
        "geometry": hydrogen_geometry([[0.0, 0.0, 0.0], [0.0, 0.0, r_bohr]]),
    }


def h3_exchange_point(label: str, s: float, r_eq: float = 0.74,
                      r_ts: float = 0.94, d_far: float = 2.2) -> dict:
    """Collinear H3 geometry along a symmetric exchange path.

    ``s`` runs from -1 (reactant: short A-B bond, C far away) through 0
    (symmetric configuration) to +1 (product, mirrored). Distances in
    Angstrom; the returned coordinate is ``s``.
    """
    t = abs(s)
    near = r_ts + t * (r_eq - r_ts)
    far = r_ts + t * (d_far - r_ts)
    r_ab, r_bc = (near, far) if s <= 0 else (far, near)
    z0 = 0.0
    z1 = r_ab * ANGSTROM_TO_BOHR
    z2 = z1 + r_bc * ANGSTROM_TO_BOHR
    return {
        "label": label,
        "coordinate": s,
        "geometry": hydrogen_geometry([[0.0, 0.0, z0], [0.0, 0.0, z1], [0.0, 0.0, z2]]),
    }


def manifest_to_json(manifest_doc: dict) -> str:
    return json.dumps(manifest_doc, indent=2, sort_keys=True) + "\n"
