"""Exception types shared by every module.

Each error carries the name of the module that raised it and the contract
that was violated; the CLI maps the classes onto exit codes.
"""


class ToeplitzQCError(Exception):
    """Base class. ``exit_code`` is what the CLI returns for it."""

    exit_code = 3

    def __init__(self, message, module=None, contract=None):
        super().__init__(message)
        self.module = module
        self.contract = contract

    def describe(self):
        parts = []
        if self.module:
            parts.append(f"[{self.module}]")
        if self.contract:
            parts.append(f"{self.contract}:")
        parts.append(str(self))
        return " ".join(parts)


class ValidationError(ToeplitzQCError, ValueError):
    """Malformed input: bad spec text, bad flag, violated precondition."""

    exit_code = 1


class DomainError(ValidationError):
    """Parameter outside its mathematical domain (e.g. radius not in (0, 1))."""


class PreconditionError(ValidationError):
    """Input fails a stated precondition (e.g. symbol not invertible)."""


class ResolutionError(ToeplitzQCError):
    """The grid is too coarse for the requested computation."""

    exit_code = 2


class NumericalContractError(ToeplitzQCError):
    """A computed quantity violates its numerical contract."""

    exit_code = 3


class IllConditionedError(NumericalContractError):
    """A curve passes too close to the origin for a reliable winding number."""


class AmbiguousThresholdError(NumericalContractError):
    """A singular-value threshold sits inside a spectral cluster."""
