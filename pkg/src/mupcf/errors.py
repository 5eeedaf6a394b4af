class MupcfError(Exception):
    """Base class for all toolchain errors."""


class UserError(MupcfError):
    """Bad input: parse failure, ill-sorted term, rejected proof. CLI exit 1."""


class FuelExhausted(MupcfError):
    """Evaluation ran out of fuel. CLI exit 2."""

    def __init__(self, message, steps):
        super().__init__(message)
        self.steps = steps


class InternalError(MupcfError):
    """Invariant breach inside the toolchain. CLI exit 3."""
