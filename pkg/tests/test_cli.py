import json
import subprocess
import sys

import numpy as np

from vqechem.cli import main
from vqechem.fcidump import parse_fcidump
from vqechem.workflows import PesPoint, h2_point, scan_csv

H2_GEOMETRY = {
    "atoms": [
        {"symbol": "H", "xyz_bohr": [0.0, 0.0, 0.0]},
        {"symbol": "H", "xyz_bohr": [0.0, 0.0, 1.4]},
    ],
    "charge": 0,
}

FAST_VQE = ["--max-iterations", "150", "--threshold", "1e-8", "--restarts", "1"]


def write_json(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


def small_manifest(tmp_path, seed=3):
    doc = {
        "label": "cli-test",
        "coordinate_unit": "angstrom",
        "ansatz": "uccsd",
        "mode": "exact",
        "optimizer": {
            "kind": "simplex",
            "max_iterations": 200,
            "convergence_threshold": 1e-9,
            "seed": 0,
        },
        "seed": seed,
        "restarts": 1,
        "points": [h2_point("0.70", 0.70), h2_point("0.78", 0.78)],
    }
    return write_json(tmp_path / "manifest.json", doc)


def test_fcidump_gen_and_fci(tmp_path, capsys):
    geometry = write_json(tmp_path / "h2.json", H2_GEOMETRY)
    out = tmp_path / "h2.fcidump"
    assert main(["fcidump-gen", "--geometry", geometry, "--out", str(out), "--json"]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["n_spatial_orbitals"] == 2
    integrals = parse_fcidump(out.read_text())
    assert integrals.n_electrons == 2

    assert main(["fci", "--fcidump", str(out), "--json"]) == 0
    fci = json.loads(capsys.readouterr().out)
    assert fci["n_qubits"] == 4
    assert fci["e_fci"] < -1.13


def test_vqe_single_point_geometry(tmp_path, capsys):
    geometry = write_json(tmp_path / "h2.json", H2_GEOMETRY)
    assert main(["vqe", "--geometry", geometry, "--json", *FAST_VQE]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert abs(summary["e_vqe"] - summary["e_fci"]) < 1.6e-3
    assert summary["n_pauli_terms"] > 0


def test_vqe_requires_exactly_one_source(capsys):
    assert main(["vqe"]) == 2
    assert "exactly one" in capsys.readouterr().err


def test_scan_fit_compare_trace_roundtrip(tmp_path, capsys):
    manifest = small_manifest(tmp_path)
    out_a = tmp_path / "scan_a.csv"
    assert main(["scan", "--manifest", manifest, "--out", str(out_a), "--json"]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert summary["n_points"] == 2 and summary["n_failed"] == 0

    # fit needs >= 4 points; the 2-point curve must error out cleanly
    assert main(["fit", "--curve", str(out_a)]) == 2
    assert "4 points" in capsys.readouterr().err

    # compare the curve against itself: zero shift
    assert main([
        "compare", "--curve-a", str(out_a), "--curve-b", str(out_a),
        "--out", str(tmp_path / "cmp.csv"), "--json",
    ]) == 0
    cmp_summary = json.loads(capsys.readouterr().out)
    assert cmp_summary["mean_shift"] == 0.0
    assert (tmp_path / "cmp.csv").read_text().startswith("label,e_a,e_b,delta")

    geometry = write_json(tmp_path / "h2.json", H2_GEOMETRY)
    trace_out = tmp_path / "trace.csv"
    assert main(["trace", "--geometry", geometry, "--out", str(trace_out),
                 "--json", *FAST_VQE]) == 0
    trace_summary = json.loads(capsys.readouterr().out)
    lines = trace_out.read_text().strip().splitlines()
    assert lines[0] == "iteration,energy,best_energy"
    assert len(lines) == trace_summary["n_iterations"] + 1


def test_one_point_manifest_then_fit_errors(tmp_path, capsys):
    doc = {
        "label": "single",
        "ansatz": "uccsd",
        "mode": "exact",
        "optimizer": {"kind": "simplex", "max_iterations": 150,
                      "convergence_threshold": 1e-8, "seed": 0},
        "restarts": 1,
        "points": [h2_point("0.74", 0.74)],
    }
    manifest = write_json(tmp_path / "single.json", doc)
    out = tmp_path / "single.csv"
    assert main(["scan", "--manifest", manifest, "--out", str(out)]) == 0
    assert main(["fit", "--curve", str(out)]) == 2
    assert "points" in capsys.readouterr().err


def test_fit_on_synthetic_curve(tmp_path, capsys):
    points = [
        PesPoint(f"{r:.2f}", r, (r - 0.74) ** 2 - 1.1, (r - 0.74) ** 2 - 1.1, 0.0, 5, 2)
        for r in (0.70, 0.72, 0.74, 0.76, 0.78)
    ]
    curve = tmp_path / "curve.csv"
    curve.write_text(scan_csv(points))
    assert main(["fit", "--curve", str(curve), "--json"]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert abs(summary["equilibrium_coordinate"] - 0.74) < 1e-10


def test_barrier_on_synthetic_curve(tmp_path, capsys):
    def curve_fn(x):
        return 0.5 - x * x if abs(x) <= 0.5 else (abs(x) - 1.0) ** 2

    points = [
        PesPoint(f"{x:+.2f}", x, curve_fn(x), curve_fn(x), 0.0, 5, 2)
        for x in np.arange(-1.5, 1.55, 0.25)
    ]
    curve = tmp_path / "barrier.csv"
    curve.write_text(scan_csv(points))
    assert main(["barrier", "--curve", str(curve), "--json"]) == 0
    summary = json.loads(capsys.readouterr().out)
    assert abs(summary["activation_kcal_mol"] - 0.5 * 627.509474) < 1e-6


def test_scan_outputs_byte_identical(tmp_path):
    manifest = small_manifest(tmp_path)
    out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
    assert main(["scan", "--manifest", manifest, "--out", str(out1)]) == 0
    assert main(["scan", "--manifest", manifest, "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_cli_entry_point_subprocess(tmp_path):
    geometry = tmp_path / "h2.json"
    geometry.write_text(json.dumps(H2_GEOMETRY))
    result = subprocess.run(
        [sys.executable, "-m", "vqechem.cli", "fci",
         "--geometry", str(geometry), "--json"],
        capture_output=True, text=True, timeout=120,
    )
    assert result.returncode == 0
    assert "e_fci" in json.loads(result.stdout)
