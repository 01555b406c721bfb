"""Exception hierarchy.

Every error carries a short machine-readable ``code`` (e.g. ``ZERO_POLY``)
so records and CLI output can report the failure without parsing messages.
"""


class WeilStatError(Exception):
    """Base class for all domain errors raised by the package."""

    code = "ERROR"

    def __init__(self, message="", code=None):
        if code is not None:
            self.code = code
        super().__init__(message or self.code)


class AlgebraError(WeilStatError, ValueError):
    pass


class CurveError(WeilStatError, ValueError):
    pass


class WeilError(WeilStatError, ValueError):
    pass


class GroupError(WeilStatError, ValueError):
    pass


class GaloisError(WeilStatError, ValueError):
    pass


class SurveyError(WeilStatError, ValueError):
    pass
