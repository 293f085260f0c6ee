"""Exception hierarchy shared by every module."""


class KnightTopoError(Exception):
    """Base class for all library errors."""


class InvalidJump(KnightTopoError):
    pass


class InvalidTour(KnightTopoError):
    pass


class NotASurface(KnightTopoError):
    """Raised when a lift or homotopy class is requested for a regular board."""


class TargetTopologyMismatch(KnightTopoError):
    pass


class InvalidProblem(KnightTopoError):
    pass


class BaseCaseNotFound(KnightTopoError):
    pass


class HookViolation(KnightTopoError):
    """The input fixture lacks the edges or band property an induction step consumes."""


class StepInvalid(KnightTopoError):
    """An induction step produced something that is not a valid tour."""


class Unsupported(KnightTopoError):
    pass


class BudgetExceeded(KnightTopoError):
    def __init__(self, message: str, nodes_used: int = 0, ms_used: int = 0):
        super().__init__(message)
        self.nodes_used = nodes_used
        self.ms_used = ms_used
