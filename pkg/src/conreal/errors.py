"""Exception types and their CLI exit codes"""


class ConrealError(Exception):
    exit_code = 1


class CapExceeded(ConrealError):
    """An unbounded search ran out of budget."""
    exit_code = 2

    def __init__(self, search, cap):
        super().__init__(f"cap exceeded: {search} (cap {cap})")
        self.search = search
        self.cap = cap


class InvalidInput(ConrealError, ValueError):
    exit_code = 3


class NoCandidateChild(InvalidInput):
    """Path extraction found no child interval; the input left [0, 1]."""


class NoLiftFound(InvalidInput):
    """No four-digit bridge matched; the target was too far from the path."""


class InvariantViolation(ConrealError):
    exit_code = 4
