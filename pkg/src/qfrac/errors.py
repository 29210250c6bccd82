"""Exception hierarchy shared by every qfrac module."""


class QFracError(Exception):
    """Base class for all qfrac errors."""


class InadmissiblePoint(QFracError, ValueError):
    """A denominator factor vanishes at the requested parameter point.

    ``factor`` is a human-readable name of the offending factor, e.g. ``"1-y"``
    or ``"(x;q)_3"``.
    """

    def __init__(self, factor: str, detail: str = ""):
        self.factor = factor
        msg = f"inadmissible point: factor {factor} vanishes"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class WrongSpecialization(QFracError, ValueError):
    pass


class ZeroBaseNegativeExponent(QFracError, ZeroDivisionError):
    pass


class OrderExceeded(QFracError, IndexError):
    """A coefficient beyond a series' valid order was requested."""


class ZeroConstantTerm(QFracError, ZeroDivisionError):
    pass


class NonzeroConstantTerm(QFracError, ArithmeticError):
    """Division by z attempted on a series whose constant term is not zero."""


class Breakdown(QFracError, ArithmeticError):
    """A vanishing constant term stopped continued-fraction extraction at ``index``."""

    def __init__(self, index: int, detail: str = ""):
        self.index = index
        msg = f"breakdown: constant term of s_{index - 1} is zero, a_{index} undefined"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)


class InsufficientOrder(QFracError, ValueError):
    pass


class SamplingExhausted(QFracError, RuntimeError):
    pass
