"""Exception types shared across the package.

Every failure mode that callers are expected to catch gets its own class so
the CLI and service layer can map it to a machine-readable error report.
"""


class ZmapError(Exception):
    """Base class for all package-specific errors."""


class DegenerateQuad(ZmapError):
    """A cross-ratio denominator vanished relative to the cell scale."""

    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class DegenerateStencil(ZmapError):
    """A constraint-stencil or recurrence denominator vanished."""

    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class NewtonDivergence(ZmapError):
    """Newton iteration failed to reach the residual tolerance."""


class PositivityViolation(ZmapError):
    """A diagonal auxiliary quantity that must stay positive did not."""


class BranchPointEvaluation(ZmapError):
    """Jump matrix evaluated at a branch point or pole of its data."""


class ParityViolation(ZmapError):
    """Lattice indices n and m must have equal parity for the RHP route."""


class GeometryViolation(ZmapError):
    """Contour circles overlap or are otherwise inadmissible."""


class IllConditioned(ZmapError):
    """Estimated condition number of a linear solve exceeded its bound."""


class ResidualTooLarge(ZmapError):
    """Post-solve residual exceeded the declared tolerance."""


class TooCloseToContour(ZmapError):
    """Evaluation point too close to the contour for the Cauchy integral."""


class ExtractionDegenerate(ZmapError):
    """LU extraction at z=0 hit a vanishing 11-entry."""


class TailNotResolved(ZmapError):
    """Laurent coefficient tail has not decayed below the resolution bound."""


class ShapeViolation(ZmapError):
    """Rectangular truncation must have strictly more rows than columns."""


class SingularBasisChange(ZmapError):
    """Triangular polynomial basis change unexpectedly singular."""


class AmbiguousWinding(ZmapError):
    """Winding-number quadrature did not land near an integer."""
