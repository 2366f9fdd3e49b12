"""Exception hierarchy for the workbench.

Every error that signals a violated precondition or a degenerate
configuration derives from :class:`WorkbenchError`, so callers (and the
CLI) can distinguish "bad input / degenerate parameters" from genuine
bugs.
"""


class WorkbenchError(Exception):
    """Base class for all workbench errors."""


class ParameterError(WorkbenchError):
    """Invalid model parameters (spins, inhomogeneities, tolerances)."""


class PoleAtUnitPoint(WorkbenchError):
    """psi evaluated at zeta^2 = 1."""


class DegenerateTwist(WorkbenchError):
    """q-difference mode denominator q^(g+2k) - q^(-g-2k) vanished."""


class PoleCollision(WorkbenchError):
    """Two contour poles coincide within tolerance."""


class NoGap(WorkbenchError):
    """Leading eigenvalue moduli too close for a dominant eigenpair."""


class NotConverged(WorkbenchError):
    """Power iteration hit its cap before the Rayleigh quotient settled."""


class InterpolationInconsistent(WorkbenchError):
    """Held-out node residual exceeded tolerance (degree assumption broke)."""


class NullspaceDimensionError(WorkbenchError):
    """TQ coefficient system nullspace is not one-dimensional."""


class WronskianMismatch(WorkbenchError):
    """Ratio of Wronskian sides is not a constant polynomial."""


class NotConvergent(WorkbenchError):
    """Oscillator trace moved too much when the truncation was doubled."""


class TruncationTooSmall(NotConvergent):
    """Requested oscillator truncation below the minimum."""


class TwistOutOfRange(WorkbenchError):
    """|q^(2 lambda)| >= 1: oscillator trace cannot converge."""


class DivisionInexact(WorkbenchError):
    """Exact polynomial division left a remainder above tolerance."""


class NonSingleValued(WorkbenchError):
    """Contour integrand twist is not an even integer."""


class PoleOnContour(WorkbenchError):
    """Integrand pole sits on (or too near) a contour pole set."""


class SingularA(WorkbenchError):
    """det A is numerically zero: non-degeneracy condition failed."""


class DivideByZeroT(WorkbenchError):
    """Transfer polynomial vanished at an evaluation point."""


class PoleHit(WorkbenchError):
    """Evaluation point fell on a singular locus of omega."""


class SingularConjugation(WorkbenchError):
    """Space monodromy is not invertible at the requested point."""


class NonDegenerateFail(WorkbenchError):
    """Overlap of the two dominant eigenvectors is numerically zero."""


class LengthMismatch(WorkbenchError):
    """zeta+ and zeta- lists have different lengths."""


class RadiusTooLarge(WorkbenchError):
    """A singularity sits inside the coefficient-extraction circle."""


class RootClusterAmbiguous(WorkbenchError):
    """Branch points could not be paired into cuts by proximity."""


class BranchTrackingLost(WorkbenchError):
    """sqrt(P) continuity tracking detected a jump along a path."""


class QuadratureNotConverged(WorkbenchError):
    """Contour quadrature did not settle under node doubling."""


class SingularPeriodMatrix(WorkbenchError):
    """Classical a-period matrix is numerically singular."""


class ConfigError(WorkbenchError):
    """Malformed or unknown key in a run configuration."""
