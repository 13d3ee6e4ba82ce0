"""
Exceptions raised by wiretap_core.

All of them derive from builtin exceptions so callers that only
catch ``ValueError`` or ``RuntimeError`` keep working.
"""


class WiretapError(Exception):
    """Base class for every error raised on purpose by the package."""

    exit_code: int = 1


class ChannelFormatError(WiretapError, ValueError):
    """A channel, design or side-information file cannot be parsed."""

    exit_code = 2


class ValidationError(WiretapError, ValueError):
    """A distribution, kernel or design breaks a structural invariant."""

    exit_code = 2


class InfeasibleConfigError(WiretapError, ValueError):
    """The requested search or simulation cannot be set up."""

    exit_code = 3


class GuardExceededError(WiretapError, RuntimeError):
    """An enumeration or table would exceed its configured size guard."""

    exit_code = 4


class AtypicalStateError(WiretapError, RuntimeError):
    """Every likelihood-encoder weight vanished for the observed state."""

    exit_code = 4
