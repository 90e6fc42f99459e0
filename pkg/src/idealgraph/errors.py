"""Exception hierarchy shared by every module of the package."""


class IdealGraphError(Exception):
    """Base class for all errors raised by idealgraph."""


class SpecSyntaxError(IdealGraphError, ValueError):
    """A ring-spec string does not match ``component ("," component)*``."""


class EmptySpecError(IdealGraphError, ValueError):
    pass


class OverflowingSpecError(IdealGraphError, ValueError):
    """The product ring has more ideals than the configured vertex bound."""


class LengthMismatchError(IdealGraphError, ValueError):
    pass


class NoComplementVertexError(IdealGraphError, ValueError):
    """The complement would be the zero ideal, which is not a vertex."""


class NotAFieldError(IdealGraphError, ValueError):
    pass


class DisconnectedGraphError(IdealGraphError):
    pass


class EmptyGraphError(IdealGraphError):
    pass


class VertexInSetError(IdealGraphError, ValueError):
    pass


class BudgetExceededError(IdealGraphError):
    """An exact search ran past its work budget before finishing."""

    def __init__(self, what: str, budget: int):
        super().__init__(f"{what}: work budget of {budget} exhausted")
        self.what = what
        self.budget = budget


class SpecOutOfTheoremScopeError(IdealGraphError):
    """No closed-form result covers this ring shape."""
