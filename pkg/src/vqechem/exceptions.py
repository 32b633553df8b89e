"""Exception types raised across the package."""


class VqeChemError(Exception):
    """Base class for all package errors."""


class ShapeError(VqeChemError):
    """Dimension or index mismatch between objects."""


class UnsupportedElementError(VqeChemError):
    """Integral generation requested for an element outside the built-in basis."""


class SingularGeometryError(VqeChemError):
    """Two nuclei coincide (or nearly so), making the geometry singular."""


class ScfConvergenceError(VqeChemError):
    """SCF failed to converge within the iteration cap."""

    def __init__(self, message, last_energy=None):
        super().__init__(message)
        self.last_energy = last_energy


class FcidumpError(VqeChemError):
    """Malformed FCIDUMP content."""

    def __init__(self, message, line_number=None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class ActiveSpaceError(VqeChemError):
    """Invalid frozen/active orbital specification."""


class NonHermitianError(VqeChemError):
    """Operator expected to be Hermitian is not."""


class OptimizerDivergedError(VqeChemError):
    """Objective returned a non-finite value during optimization."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = list(trace) if trace is not None else []


class EigensolverConvergenceError(VqeChemError):
    """Iterative eigensolver failed to reach the residual tolerance."""

    def __init__(self, message, best_energy=None):
        super().__init__(message)
        self.best_energy = best_energy


class FitBracketError(VqeChemError):
    """Curve fitting requested without a bracketed interior minimum."""


class BarrierError(VqeChemError):
    """Reaction path has no interior maximum to locate a barrier."""


class CurveAlignmentError(VqeChemError):
    """Two curves to be compared do not share point labels."""


class ManifestError(VqeChemError):
    """Scan manifest is malformed or inconsistent."""
