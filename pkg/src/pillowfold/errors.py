"""Exception hierarchy for pillowfold."""


class PillowfoldError(Exception):
    """Base class for all pillowfold errors."""


class DomainError(PillowfoldError):
    """A parameter lies outside its family's admissible domain."""


class NonMonotoneError(PillowfoldError):
    """A Bezier crease has non-increasing u(t) and cannot be read as f(u)."""


class InvalidCurveError(PillowfoldError):
    """The crease curve violates the developability bound |f'(u)| <= 1."""


class GeometryError(PillowfoldError):
    """The requested fold cannot be realized (ends collide, wall too deep...)."""


class NotWatertightError(PillowfoldError):
    """Mesh volume was requested for a mesh that does not enclose a volume."""


class ParseError(PillowfoldError):
    """A curve/result document could not be parsed."""


class InfeasibleStartError(PillowfoldError):
    """The optimizer was handed an initial point violating the constraints."""


class MaxIterationsError(PillowfoldError):
    """Raised in strict mode when the solver stops at the iteration cap."""


class EvaluationError(PillowfoldError):
    """An objective could not be evaluated at a finite-difference probe."""
