"""Exception hierarchy shared by all weyldim modules."""


class WeylError(Exception):
    """Base class for every error raised by weyldim."""


class DimensionMismatch(WeylError, ValueError):
    """Operands live over different ambient (n, m)."""


class ZeroElementError(WeylError, ValueError):
    """An operation that needs a nonzero element received zero."""


class ReductionError(WeylError, ValueError):
    """A reduction step was requested whose preconditions fail."""


class StepBudgetExceeded(WeylError, RuntimeError):
    """A diagnostic step budget ran out before the computation finished."""


class CertificationError(WeylError, AssertionError):
    """A basis failed a certification check; ``witness`` holds the offending element."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NonNumericalPolynomial(WeylError, ValueError):
    """A polynomial does not have integer coefficients in the binomial basis."""


class ParseError(WeylError, ValueError):
    """Syntax or semantic error in a presentation file."""

    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column
