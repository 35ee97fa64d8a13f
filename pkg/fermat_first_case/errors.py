"""Exception hierarchy shared by the arithmetic kernels, criteria and surveys.

The CLI turns ArgumentError into exit code 2, CapabilityError into 3 and
OSError (CheckpointError included) into 4.
"""


class FermatCriteriaError(Exception):
    """Base class for every error raised by this package."""


class ArgumentError(FermatCriteriaError, ValueError):
    """An input violates an operation's precondition."""


class NotSquarefreeError(ArgumentError):
    pass


class NotCubefreeError(ArgumentError):
    pass


class NotImaginaryError(ArgumentError):
    pass


class NotPrimeError(ArgumentError):
    pass


class InvalidModulusError(ArgumentError):
    pass


class NotInvertibleError(ArgumentError):
    pass


class OrderUnavailableError(ArgumentError):
    pass


class CapabilityError(FermatCriteriaError):
    """The input is well formed but outside what the library computes."""


class WordOverflowError(CapabilityError, OverflowError):
    pass


class CapExceededError(CapabilityError):
    pass


class UnsupportedFieldError(CapabilityError):
    pass


class CheckpointError(FermatCriteriaError, OSError):
    """A checkpoint file is unreadable, corrupt or belongs to another run."""
