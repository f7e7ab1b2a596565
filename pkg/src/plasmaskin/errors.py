"""Exception hierarchy shared across the package."""


class PlasmaSkinError(Exception):
    """Base class for every error raised by this package."""


class DomainError(PlasmaSkinError, ValueError):
    """An argument lies outside the domain of an operation."""


class QuadratureError(PlasmaSkinError, RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance.

    Carries the best available estimate and its error bound so callers can
    decide whether the partial result is still usable.
    """

    def __init__(self, message, estimate=None, error_bound=None):
        super().__init__(message)
        self.estimate = estimate
        self.error_bound = error_bound


class NewtonError(PlasmaSkinError, RuntimeError):
    """Newton iteration diverged or ran out of iterations.

    ``iterates`` holds the full trace for post-mortem inspection.
    """

    def __init__(self, message, iterates=()):
        super().__init__(message)
        self.iterates = tuple(iterates)


class ContourZeroError(PlasmaSkinError, RuntimeError):
    """The function dropped below the modulus floor on an integration path."""

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class WindingError(PlasmaSkinError, RuntimeError):
    """Winding-number refinement failed to resolve the phase along a path."""


class BoundaryProximityError(PlasmaSkinError, RuntimeError):
    """Parameters sit too close to the spectral boundary to be solvable.

    ``mu`` names the point of the cut where the boundary values degenerate
    (or where a discrete zero approaches the continuous spectrum).
    """

    def __init__(self, message, mu=None):
        super().__init__(message)
        self.mu = mu


class SpectralDegeneracyError(PlasmaSkinError, RuntimeError):
    """The dispersion function vanishes on the integration axis."""


class CutoffError(PlasmaSkinError, RuntimeError):
    """A truncated integral's tail exceeds the requested tolerance."""


class DegenerateImpedanceError(PlasmaSkinError, RuntimeError):
    """The impedance is undefined because the defining integral degenerates."""
