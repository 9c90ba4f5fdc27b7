"""Exception hierarchy shared by every module."""


class ZetaError(Exception):
    """Base class for all errors raised by mzeta."""


class AlgebraError(ZetaError, ArithmeticError):
    pass


class NonInvertibleError(AlgebraError):
    def __init__(self, what="element"):
        super().__init__(f"non-invertible element: {what}")


class SubstitutionError(AlgebraError):
    pass


class LimitError(AlgebraError):
    pass


class ParseError(ZetaError):
    """Malformed text. ``location`` is a human readable position."""

    def __init__(self, message, location=None):
        self.message = message
        self.location = location
        text = message if location is None else f"{location}: {message}"
        super().__init__(text)


class SchemaError(ParseError):
    """Structurally valid JSON that breaks a document rule."""

    def __init__(self, message, location=None, violations=None):
        self.violations = list(violations) if violations else [message]
        super().__init__(message, location)


class InvalidConfiguration(ZetaError):
    def __init__(self, violations, what="configuration"):
        self.violations = list(violations)
        super().__init__(f"invalid {what}: " + "; ".join(self.violations))


class HigherOrderPoleError(ZetaError):
    pass
