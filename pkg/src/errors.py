"""
Errors Module - Exception hierarchy shared by the library and the CLI
"""
from typing import Optional


class ZenoError(Exception):
    """Base class for every error raised by this package"""


class ConfigError(ZenoError, ValueError):
    """
    A parameter violates a physical or structural invariant

    Args:
        key: Name of the offending parameter
        constraint: Human readable constraint that was violated
        value: The rejected value, if any
    """

    def __init__(self, key: str, constraint: str, value: Optional[object] = None):
        self.key = key
        self.constraint = constraint
        self.value = value
        message = f"{key}: must satisfy {constraint}"
        if value is not None:
            message += f" (got {value!r})"
        super().__init__(message)


class NumericalError(ZenoError):
    """A computation could not produce a trustworthy number"""


class DivergentZenoTimeError(NumericalError):
    """Energy uncertainty vanishes, the state never decays"""


class RegimeError(NumericalError):
    """A formula was evaluated outside its regime of validity"""


class PostSelectionError(NumericalError):
    """Post-selected state is orthogonal to the evolved pre-selected state"""


class RecurrenceHorizonError(NumericalError):
    """Bath oracle queried beyond its Poincare recurrence time"""


class StepSizeError(NumericalError):
    """Integration settings are unusable"""


class PositivityError(NumericalError):
    """An integrated density matrix left the physical set"""


class FitError(NumericalError):
    """A decay rate could not be extracted from a series"""
