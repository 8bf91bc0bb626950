"""Exception types raised by rtinfluence."""


class RtInfluenceError(Exception):
    """Base class for all errors raised by this package."""


class MalformedRecordError(RtInfluenceError, ValueError):
    """A corpus record could not be turned into a Tweet."""


class InvalidUsernameError(RtInfluenceError, ValueError):
    pass


class StateFileError(RtInfluenceError, ValueError):
    """A state or curve file failed to parse.

    ``lineno`` is 1-based and points at the offending line.
    """

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class DomainError(RtInfluenceError):
    """Well-formed input on which the requested computation is undefined."""


class MissingGroupError(DomainError, KeyError):
    pass


class DegenerateSampleError(DomainError, ValueError):
    pass


class EmptyCurveError(DomainError, ValueError):
    pass
