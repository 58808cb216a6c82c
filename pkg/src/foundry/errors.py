"""Exception types shared across the package."""


class FoundryError(Exception):
    """Base class for all library errors."""


class InvalidLattice(FoundryError, ValueError):
    pass


class PoleAtLatticePoint(FoundryError, ValueError):
    """Evaluation point lies within the pole radius of a lattice point."""


class PoleAtEnd(PoleAtLatticePoint):
    """Evaluation point coincides with an end of the surface."""


class TrivialMultiplier(FoundryError, ValueError):
    pass


class DegenerateAlpha(FoundryError, ValueError):
    """The spectral parameter solved from a multiplier lies on the lattice."""


class InconsistentPeriods(FoundryError, ValueError):
    pass


class DegenerateLattice(FoundryError, ValueError):
    pass


class DegenerateMetric(FoundryError, ValueError):
    pass


class NoConvergence(FoundryError, RuntimeError):
    """Iterative solver stopped without meeting its residual target.

    The best iterate and its residual are kept on the exception so callers
    can log or reuse them.
    """

    def __init__(self, message, best=None, residual=float("inf"), iterations=0):
        super().__init__(message)
        self.best = best
        self.residual = residual
        self.iterations = iterations


class ConfigError(FoundryError, ValueError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
