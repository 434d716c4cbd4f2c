"""Exception and warning types shared across the package."""


class SqCavityError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatchError(SqCavityError, ValueError):
    """Operators or states built from incompatible Hilbert dimensions."""


class TruncationError(SqCavityError, RuntimeError):
    """Fock-space cutoff too small for the requested computation."""


class ThresholdError(SqCavityError, ValueError):
    """Pump amplitude at or above the parametric threshold (Omega_p >= Delta_c)."""


class DegenerateSteadyStateError(SqCavityError, RuntimeError):
    """More than one Liouvillian eigenvalue within tolerance of zero."""


class ConvergenceError(SqCavityError, RuntimeError):
    """Integrator or linear solver failed to meet its tolerance."""


class ConfigError(SqCavityError, ValueError):
    """Invalid or inconsistent scenario configuration."""


class CutoffWarning(UserWarning):
    """Population above 0.8*N_max exceeds tolerance; results may be unconverged."""


class RWAValidityWarning(UserWarning):
    """|g_s'|/(omega_s + Delta_A) >= 0.1; rotating-wave approximation questionable."""


class PositivityWarning(UserWarning):
    """Small negative density-matrix eigenvalue within tolerance; not clipped."""
