"""Exception hierarchy shared by every module."""


class Lie2Error(ValueError):
    pass


class DimensionError(Lie2Error):
    pass


class NotACocycle(Lie2Error):
    pass


class InvalidPairing(Lie2Error):
    pass


class InvalidQuadratic(Lie2Error):
    pass


class InvalidRep(Lie2Error):
    pass


class InvalidLInfinity(Lie2Error):
    pass


class NotSkeletal(Lie2Error):
    pass


class NotNilpotent(Lie2Error):
    pass


class NoSolution(Lie2Error):
    """Raised when the polynomial cocycle ansatz is infeasible (a bug, not a user error)."""


class ModeUnsupported(Lie2Error):
    pass


class NotAssociative(Lie2Error):
    pass


class NotMorphism(Lie2Error):
    pass


class DocumentError(Lie2Error):
    """Malformed input document; carries a location string."""

    def __init__(self, message, location=""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location
