"""Exception hierarchy.

Everything raised for bad input derives from :class:`ValidationError` so the
CLI can map it to a single exit code.
"""


class StingyError(Exception):
    """Base class for all package errors."""


class ValidationError(StingyError, ValueError):
    """An input violated a documented invariant or precondition."""


class DimensionMismatch(ValidationError):
    pass


class NotHermitian(ValidationError):
    pass


class BadTrace(ValidationError):
    pass


class NotPSD(ValidationError):
    pass


class NotNormalized(ValidationError):
    pass


class NotOrthonormal(ValidationError):
    pass


class SubsetMismatch(ValidationError):
    pass


class FullTrace(ValidationError):
    pass


class IndexOutOfRange(ValidationError):
    pass


class RegisterTooLarge(ValidationError):
    pass


class BasisMismatch(ValidationError):
    pass


class BadLossCount(ValidationError):
    pass


class UnknownDistance(ValidationError):
    pass


class ChannelMismatch(ValidationError):
    pass


class NotTracePreserving(ValidationError):
    pass


class UnknownChannel(ValidationError):
    pass


class BadParams(ValidationError):
    pass


class NoFreeSamplesFound(StingyError):
    """The falsifier drew no state inside the free set, so nothing was tested."""

    def __init__(self, samples_drawn):
        super().__init__(f"none of the {samples_drawn} drawn states is free")
        self.samples_drawn = samples_drawn


class FormatError(ValidationError):
    """A JSON input file does not follow the expected layout."""
