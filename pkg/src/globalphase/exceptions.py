"""Exception hierarchy for globalphase."""


class GlobalPhaseError(Exception):
    """Base class for all errors raised by this package."""


class LinAlgError(GlobalPhaseError):
    pass


class NotHermitian(LinAlgError):
    pass


class NotPSD(LinAlgError):
    pass


class NoConvergence(LinAlgError):
    pass


class StateError(GlobalPhaseError, ValueError):
    pass


class IndexOutOfRange(StateError):
    pass


class QOutOfRange(StateError):
    pass


class EmptyKeepSet(StateError):
    pass


class InvalidQubitIndex(StateError):
    pass


class WrongDimension(StateError):
    pass


class POutOfRange(GlobalPhaseError, ValueError):
    pass


class NotPromise(GlobalPhaseError):
    """The oracle table is neither constant nor balanced."""


class PromiseViolated(GlobalPhaseError):
    """A table promised to be linear failed verification."""


class ConfigError(GlobalPhaseError, ValueError):
    pass


class ParseError(GlobalPhaseError, ValueError):
    pass
