"""Exception types shared across the package."""


class FieldError(ValueError):
    """Invalid field construction or out-of-range field parameters."""


class ElementNotCanonical(FieldError):
    """A value is not a canonical element of the field."""


class DivisionByZero(ZeroDivisionError):
    pass


class ZeroElement(FieldError):
    """Operation requires a nonzero element."""


class OrderNotDivisible(FieldError):
    """The requested root order does not divide q - 1."""


class FieldTooLarge(FieldError):
    pass


class BadRootOverride(FieldError):
    """A supplied root of unity does not have the required order."""


class LengthMismatch(ValueError):
    pass


class IndexOutOfRange(ValueError):
    pass


class LengthExceedsGroup(ValueError):
    pass


class DomainTooSmall(ValueError):
    """log log p is not above 1, so the Gowers bound is undefined or negative."""


class SizeMismatch(ValueError):
    pass


class ZeroDifference(ValueError):
    pass


class NotSquare(ValueError):
    pass


class ZeroFunction(ValueError):
    """Uncertainty checks require a nonzero function."""


class MismatchedParameters(ValueError):
    pass


class CapExceeded(ValueError):
    """Exhaustive enumeration would exceed the configured instance cap."""


class HardAssertionFailure(AssertionError):
    """A proven mathematical statement failed: always an implementation bug."""
