"""Exception hierarchy shared by all modules."""


class RabiError(Exception):
    """Base class for every error raised by :mod:`mqcrabi`."""


class DomainError(RabiError, ValueError):
    """An argument lies outside the domain of the operation."""


class ContractViolation(RabiError, ValueError):
    """A precondition on a state or series was not met."""


class InsufficientData(RabiError, ValueError):
    """A series is too short for the requested analysis."""


class NoOscillation(RabiError, ValueError):
    """The requested motion is unbounded or degenerate, so it has no period."""


class ConfigError(RabiError, ValueError):
    """Invalid or unknown configuration keys."""


class IntegrationDiverged(RabiError, ArithmeticError):
    """Non-finite values appeared while stepping an ODE."""

    def __init__(self, step, message=None, trajectory=None, seed=None):
        self.step = step
        self.trajectory = trajectory
        self.seed = seed
        where = f"step {step}"
        if trajectory is not None:
            where = f"trajectory {trajectory} (seed {seed}), {where}"
        super().__init__(message or f"integration diverged at {where}")


class ScanPointError(RabiError):
    """A solver failed for one point of a parameter scan.

    The original exception is available as ``__cause__`` and ``cause``.
    """

    def __init__(self, n0, cause):
        self.n0 = n0
        self.cause = cause
        super().__init__(f"n0={n0!r}: {type(cause).__name__}: {cause}")
