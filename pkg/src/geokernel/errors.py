"""Exception hierarchy for the geometry kernel."""


class GeoError(Exception):
    """Base class for all kernel errors."""


class NegativeInput(GeoError, ValueError):
    """An approximant certified a negative argument to a square root."""


class Undecided(GeoError, ArithmeticError):
    """A witness search ran out of fuel where the caller required an answer."""


class InvalidWitness(GeoError, ValueError):
    """A supplied or required witness did not re-verify."""


class ArityMismatch(GeoError, TypeError):
    pass


class NotCollinear(GeoError, ValueError):
    pass


class IrrationalInput(GeoError, ValueError):
    pass


class DegenerateAngle(GeoError, ValueError):
    """An angle arm is not apart from its vertex."""


class DegenerateTriangle(GeoError, ValueError):
    pass


class LeavesField(GeoError, ArithmeticError):
    """Exact arithmetic would leave the current quadratic field.

    Raised internally; callers catch it and fall back to the real path.
    """
