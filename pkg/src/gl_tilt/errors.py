"""Exception hierarchy shared by every gl_tilt module."""


class GLTiltError(Exception):
    """Base class for toolkit errors."""


class DimensionMismatchError(GLTiltError, ValueError):
    """Matrix, vector or object shapes do not fit together."""


class UnsupportedFieldError(GLTiltError):
    """A computation needs a point or root outside the configured field."""


class UnsupportedQuiverError(GLTiltError):
    """The quiver has oriented cycles, which v1 does not handle."""


class ResolutionBoundError(GLTiltError):
    """A projective resolution did not terminate within the configured length."""


class SplittingWindowError(GLTiltError):
    """Splitting-type recovery did not stabilise inside its degree window."""


class ConfigurationError(GLTiltError, ValueError):
    """An input configuration is malformed or outside the supported catalog."""


class TwistBoundError(GLTiltError):
    """auto_twist exceeded its configured bound."""


class ConditionFailure(GLTiltError):
    """A construction precondition failed.

    Args:
        message: Human readable summary
        failures: One entry per failing condition
    """

    def __init__(self, message: str, failures=None):
        super().__init__(message)
        self.failures = list(failures or [])
