"""Exception hierarchy; names follow the error kinds of each operation."""


class PsBCKError(Exception):
    """Base class for all package errors."""


class PreconditionViolated(PsBCKError):
    pass


class SizeLimit(PsBCKError):
    pass


class InvalidPoint(PsBCKError):
    pass


class NotDS(PreconditionViolated):
    pass


class NotNormal(PreconditionViolated):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotAMeasure(PreconditionViolated):
    pass


class NotStateMorphism(PreconditionViolated):
    pass


class NotAHoop(PreconditionViolated):
    pass


class NotLinear(PreconditionViolated):
    pass


class BudgetExceeded(PsBCKError):
    pass


class WellDefinednessFailure(PsBCKError):
    """A quotient operation or lifted map depends on the block representative."""


class TheoremViolation(PsBCKError):
    """A structural guarantee checked after a computation failed on a concrete model."""


class FormatError(PsBCKError):
    def __init__(self, message, line=None, column=None, path=None):
        self.line, self.column, self.path = line, column, path
        loc = ":".join(str(p) for p in (path, line, column) if p is not None)
        super().__init__(f"{loc}: {message}" if loc else message)
