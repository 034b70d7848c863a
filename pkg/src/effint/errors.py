"""Exception hierarchy shared by all modules."""


class EffintError(Exception):
    """Base class for every error raised by the library."""


class SpecificationError(EffintError):
    """A ring, bundle or target description is internally inconsistent."""


class NotAUnitError(EffintError):
    pass


class RingMismatchError(EffintError):
    pass


class InvalidDataError(EffintError):
    """Discrete data or target data violates a precondition."""


class OutOfRegimeError(EffintError):
    """A numeric criterion was queried outside the range where it applies."""


class UnsupportedTokenError(EffintError):
    pass


class ReductionNotGuaranteedError(EffintError):
    """Reduction to basic invariants is not justified for this target.

    ``trace`` holds the provenance lines accumulated before the failure.
    """

    def __init__(self, message, trace=()):
        super().__init__(message)
        self.trace = list(trace)


class ParseError(EffintError):
    pass
