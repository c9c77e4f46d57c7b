"""Exception types shared across the package."""


class SgrankError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatchError(SgrankError):
    """Operands live in different rings, fields or ambient dimensions."""


class ParseError(SgrankError):
    """Malformed textual input (polynomial grammar, tensor JSON, edge files).

    ``position`` is the 0-based character offset of the offending token when
    known, else None.
    """

    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class InvalidInputError(SgrankError):
    """A precondition violation: zero tensor, degree < 2, bad parameters."""


class ComputationTimeout(SgrankError):
    """A computation exceeded its deadline.

    Carries partial diagnostics so callers can report progress without ever
    reporting a wrong number.
    """

    def __init__(self, message, *, basis_size=None, pairs_done=None, pairs_left=None):
        super().__init__(message)
        self.basis_size = basis_size
        self.pairs_done = pairs_done
        self.pairs_left = pairs_left

    def diagnostics(self):
        return {
            "basis_size": self.basis_size,
            "pairs_done": self.pairs_done,
            "pairs_left": self.pairs_left,
        }
