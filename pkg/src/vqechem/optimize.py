"""Classical optimizers for the hybrid variational loop.

Two derivative-free minimizers: SPSA (stochastic, two-sided simultaneous
perturbations) and a Nelder-Mead simplex filling the deterministic role.
Both record a per-iteration energy trace and are bit-reproducible for a
fixed seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .exceptions import OptimizerDivergedError, ShapeError
from .measurement import estimate_energy_sampled, group_commuting
from .paulis import QubitHamiltonian
from .simulator import Circuit, apply_circuit, expectation, prepare_hf


@dataclass(frozen=True)
class OptimizerConfig:
    kind: str = "simplex"
    max_iterations: int = 200
    convergence_threshold: float = 1e-4  # Hartree
    seed: int = 0
    # SPSA gain schedule a_k = a/(A+k+1)^alpha, c_k = c/(k+1)^gamma
    spsa_a: float = 0.1
    spsa_c: float = 0.1
    spsa_big_a: float = 10.0
    spsa_alpha: float = 0.602
    spsa_gamma: float = 0.101
    spsa_window: int = 20
    simplex_step: float = 0.1
    simplex_xtol: float = 1e-6

    def __post_init__(self):
        if self.kind not in ("spsa", "simplex"):
            raise ShapeError(f"unknown optimizer kind {self.kind!r}")
        if self.max_iterations < 1:
            raise ShapeError("max_iterations must be >= 1")
        if self.convergence_threshold <= 0 or self.simplex_xtol <= 0:
            raise ShapeError("tolerances must be positive")


@dataclass(frozen=True)
class VqeResult:
    final_energy: float
    final_parameters: np.ndarray
    energy_trace: tuple
    n_function_evaluations: int
    converged: bool
    termination_reason: str
    restart_results: tuple = field(default=(), repr=False)

    def best_so_far(self) -> list[float]:
        """Running minimum of the trace (nonincreasing by construction)."""
        best = math.inf
        out = []
        for e in self.energy_trace:
            best = min(best, e)
            out.append(best)
        return out


def _checked(objective, trace):
    def wrapped(theta):
        value = float(objective(theta))
        if not math.isfinite(value):
            raise OptimizerDivergedError(
                f"objective returned non-finite value {value}", trace=trace
            )
        return value

    return wrapped


def _zero_dim_result(objective) -> VqeResult:
    energy = float(objective(np.zeros(0)))
    return VqeResult(energy, np.zeros(0), (energy,), 1, True, "no_parameters")


def spsa_minimize(objective, theta0, config: OptimizerConfig) -> VqeResult:
    """Simultaneous-perturbation stochastic approximation.

    Rademacher perturbations from a generator seeded by the config; stops
    at the iteration cap or when the best energy has improved by less than
    the convergence threshold over the trailing window.
    """
    theta = np.asarray(theta0, dtype=float).copy()
    if theta.ndim != 1:
        raise ShapeError("theta0 must be a 1-D parameter vector")
    if theta.size == 0:
        return _zero_dim_result(objective)

    trace: list[float] = []
    f = _checked(objective, trace)
    rng = np.random.default_rng(config.seed)
    evals = 0
    best_energy = math.inf
    best_theta = theta.copy()
    converged = False

    for k in range(config.max_iterations):
        a_k = config.spsa_a / (config.spsa_big_a + k + 1) ** config.spsa_alpha
        c_k = config.spsa_c / (k + 1) ** config.spsa_gamma
        delta = rng.integers(0, 2, size=theta.size) * 2.0 - 1.0
        f_plus = f(theta + c_k * delta)
        f_minus = f(theta - c_k * delta)
        evals += 2
        gradient = (f_plus - f_minus) / (2.0 * c_k) * delta
        theta = theta - a_k * gradient
        energy = f(theta)
        evals += 1
        trace.append(energy)
        if energy < best_energy:
            best_energy = energy
            best_theta = theta.copy()
        window = config.spsa_window
        if len(trace) > window:
            previous_best = min(trace[:-window])
            if previous_best - best_energy < config.convergence_threshold:
                converged = True
                break

    return VqeResult(
        final_energy=best_energy,
        final_parameters=best_theta,
        energy_trace=tuple(trace),
        n_function_evaluations=evals,
        converged=converged,
        termination_reason="converged" if converged else "iteration_cap",
    )


def simplex_minimize(objective, theta0, config: OptimizerConfig) -> VqeResult:
    """Nelder-Mead with standard coefficients (1, 2, 0.5, 0.5).

    Terminates when the simplex energy spread drops below the convergence
    threshold (and the simplex diameter below ``simplex_xtol``, so a
    symmetric straddle of a minimum cannot stall the contraction) or at
    the iteration cap. Fully deterministic.
    """
    x0 = np.asarray(theta0, dtype=float).copy()
    if x0.ndim != 1:
        raise ShapeError("theta0 must be a 1-D parameter vector")
    if x0.size == 0:
        return _zero_dim_result(objective)

    trace: list[float] = []
    f = _checked(objective, trace)
    reflect, expand, contract, shrink = 1.0, 2.0, 0.5, 0.5
    d = x0.size

    vertices = [x0]
    for i in range(d):
        step = np.zeros(d)
        step[i] = config.simplex_step
        vertices.append(x0 + step)
    values = [f(v) for v in vertices]
    evals = d + 1
    converged = False

    for _ in range(config.max_iterations):
        order = np.argsort(values, kind="stable")
        vertices = [vertices[i] for i in order]
        values = [values[i] for i in order]
        diameter = max(np.abs(v - vertices[0]).max() for v in vertices[1:])
        if values[-1] - values[0] < config.convergence_threshold and diameter < config.simplex_xtol:
            converged = True
            trace.append(values[0])
            break

        centroid = np.mean(vertices[:-1], axis=0)
        xr = centroid + reflect * (centroid - vertices[-1])
        fr = f(xr)
        evals += 1
        if fr < values[0]:
            xe = centroid + expand * (xr - centroid)
            fe = f(xe)
            evals += 1
            if fe < fr:
                vertices[-1], values[-1] = xe, fe
            else:
                vertices[-1], values[-1] = xr, fr
        elif fr < values[-2]:
            vertices[-1], values[-1] = xr, fr
        else:
            if fr < values[-1]:
                xc = centroid + contract * (xr - centroid)
                fc = f(xc)
                evals += 1
                accepted = fc <= fr
            else:
                xc = centroid - contract * (centroid - vertices[-1])
                fc = f(xc)
                evals += 1
                accepted = fc < values[-1]
            if accepted:
                vertices[-1], values[-1] = xc, fc
            else:
                best = vertices[0]
                for i in range(1, d + 1):
                    vertices[i] = best + shrink * (vertices[i] - best)
                    values[i] = f(vertices[i])
                    evals += 1
        trace.append(min(values))

    best_idx = int(np.argmin(values))
    return VqeResult(
        final_energy=values[best_idx],
        final_parameters=vertices[best_idx].copy(),
        energy_trace=tuple(trace),
        n_function_evaluations=evals,
        converged=converged,
        termination_reason="converged" if converged else "iteration_cap",
    )


def minimize(objective, theta0, config: OptimizerConfig) -> VqeResult:
    if config.kind == "spsa":
        return spsa_minimize(objective, theta0, config)
    return simplex_minimize(objective, theta0, config)


def exact_energy_objective(
    hamiltonian: QubitHamiltonian, circuit: Circuit, hf_occupied
):
    """theta -> <psi(theta)|H|psi(theta)> with exact statevector evaluation."""
    reference = prepare_hf(hamiltonian.n_qubits, hf_occupied)

    def objective(theta):
        return expectation(apply_circuit(reference, circuit, theta), hamiltonian)

    return objective


def sampled_energy_objective(
    hamiltonian: QubitHamiltonian, circuit: Circuit, hf_occupied, shots: int, seed: int
):
    """Objective backed by measurement-group sampling.

    Every evaluation draws fresh shots from a deterministic per-call seed,
    so a full optimization is reproducible for a fixed base seed.
    """
    reference = prepare_hf(hamiltonian.n_qubits, hf_occupied)
    groups = group_commuting(hamiltonian)
    counter = [0]

    def objective(theta):
        state = apply_circuit(reference, circuit, theta)
        call_seed = seed + 100003 * counter[0]
        counter[0] += 1
        return estimate_energy_sampled(state, hamiltonian, groups, shots, call_seed).energy

    return objective


def run_vqe(
    hamiltonian: QubitHamiltonian,
    circuit: Circuit,
    hf_occupied,
    config: OptimizerConfig,
    mode: str = "exact",
    shots: int = 1024,
    n_restarts: int = 5,
) -> VqeResult:
    """Full variational loop over a Hartree-Fock reference.

    Restarts rerun the optimizer from small seeded perturbations of the
    zero start (restart 0 starts exactly at zero) to dodge local minima;
    the best result is returned with all restart results retained.
    """
    if circuit.n_qubits != hamiltonian.n_qubits:
        raise ShapeError("circuit and Hamiltonian qubit counts differ")
    if mode == "exact":
        objective = exact_energy_objective(hamiltonian, circuit, hf_occupied)
    elif mode == "sampled":
        objective = sampled_energy_objective(
            hamiltonian, circuit, hf_occupied, shots, config.seed
        )
    else:
        raise ShapeError(f"unknown mode {mode!r}")

    d = circuit.n_parameters
    if d == 0:
        return _zero_dim_result(objective)
    if n_restarts < 1:
        raise ShapeError("n_restarts must be >= 1")

    results = []
    for restart in range(n_restarts):
        cfg = replace(config, seed=config.seed + restart)
        theta0 = np.zeros(d)
        if restart > 0:
            rng = np.random.default_rng((config.seed, restart))
            theta0 = theta0 + rng.normal(0.0, 0.1, size=d)
        results.append(minimize(objective, theta0, cfg))

    best = min(results, key=lambda r: r.final_energy)
    return replace(best, restart_results=tuple(results))
