"""Exception hierarchy shared by all coldgas modules."""


class ColdGasError(Exception):
    """Base class; ``module`` names the raising subsystem for CLI error reports."""

    module = "coldgas"


class DomainError(ColdGasError, ValueError):
    module = "ideal_gas"


class TailNotConverged(ColdGasError):
    module = "ideal_gas"


class NonFiniteTail(ColdGasError, ValueError):
    module = "scattering"


class RangeTooSmall(ColdGasError, ValueError):
    module = "scattering"


class NotUnitScattering(ColdGasError, ValueError):
    module = "scattering"


class Unstable(ColdGasError, ValueError):
    module = "gp_solver"


class GridTooCoarse(ColdGasError):
    module = "gp_solver"


class NotConverged(ColdGasError):
    """Raised by iterative solvers; ``result`` carries the best state reached."""

    module = "solver"

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class SizeLimit(ColdGasError):
    module = "lll_ed"


class ValidationFailed(ColdGasError, ValueError):
    module = "cli"

    def __init__(self, message, fields=()):
        super().__init__(message)
        self.fields = list(fields)
