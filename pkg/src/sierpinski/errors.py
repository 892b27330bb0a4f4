"""Exception hierarchy shared by every module."""


class SierpinskiError(Exception):
    pass


class InvalidParameter(SierpinskiError, ValueError):
    pass


class ResourceLimit(SierpinskiError, RuntimeError):
    """A configured size or search budget would be exceeded."""


class MissingLabels(SierpinskiError, ValueError):
    pass


class NumericFailure(SierpinskiError, ArithmeticError):
    pass


class ComplexRootError(NumericFailure):
    """Backward iteration hit a negative discriminant."""


class InternalInconsistency(SierpinskiError, AssertionError):
    pass


class InvalidConnectionSet(SierpinskiError, ValueError):
    pass


class NotInSP(SierpinskiError, ValueError):
    """Inter-part edge counts are not constant."""
