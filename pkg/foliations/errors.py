class FoliationError(Exception):
    """Base class for every error raised by the foliations toolkit."""


class ZeroInverse(FoliationError, ZeroDivisionError):
    pass


class FieldMismatch(FoliationError, ValueError):
    pass


class ChartMismatch(FoliationError, ValueError):
    pass


class FormSyntaxError(FoliationError, ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


class ZeroForm(FoliationError, ValueError):
    pass


class IndeterminateForm(FoliationError, ValueError):
    pass


class NotSingular(FoliationError, ValueError):
    pass


class NotSeparatrix(FoliationError, ValueError):
    pass


class Degenerate(FoliationError, ValueError):
    pass


class UnknownPoint(FoliationError, KeyError):
    pass


class NotContractible(FoliationError, ValueError):
    pass


class NotSymmetric(FoliationError, ValueError):
    pass


class NotInvariantFibre(FoliationError, ValueError):
    pass


class PreconditionFailed(FoliationError, ValueError):
    def __init__(self, condition: str):
        super().__init__(f"precondition failed: {condition}")
        self.condition = condition


class UnknownIds(FoliationError, KeyError):
    pass


class WrongShape(FoliationError, ValueError):
    pass


class TraceMismatch(FoliationError, ValueError):
    pass
