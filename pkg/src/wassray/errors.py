"""Exception types shared across the toolkit."""


class DimensionMismatchError(ValueError):
    """Operands live in ambient spaces of different dimension."""


class EmptyMeasureError(ValueError):
    """A discrete measure with no atoms (or only zero-mass atoms) was supplied."""


class InvalidExponentError(ValueError):
    """The transport order p is outside the supported range (1, 16]."""


class NonOptimalCouplingError(ValueError):
    """A coupling that must be optimal fails the optimality re-check."""


class MarginalMismatchError(ValueError):
    """Two measures that must agree as measures do not."""


class UnitSpeedError(ValueError):
    """An operation defined only for unit-speed rays got a ray of other speed."""


class MonotonicityError(RuntimeError):
    """A provably monotone quantity came out non-monotone: solver defect."""


class MeasureFileError(ValueError):
    """A measure or ray file failed to parse."""
