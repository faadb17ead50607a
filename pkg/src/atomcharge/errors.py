"""Exceptions raised when a computed identity fails."""


class VerificationError(RuntimeError):
    """Two routes to the same quantity disagreed."""


class EngineFailure(VerificationError):
    """A wall-crossing step broke one of its contracts."""

    def __init__(self, message, wall=None, atom=None):
        super().__init__(message)
        self.wall = wall
        self.atom = atom
