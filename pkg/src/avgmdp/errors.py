"""Exception hierarchy shared by all avgmdp layers.

Every error is a ``ValueError`` so the CLI can treat them uniformly as input
problems.
"""


class MdpError(ValueError):
    """Base class for avgmdp errors."""


class ModelError(MdpError):
    """Model data is malformed or a referenced state has no value."""


class InfeasibleActionError(MdpError):
    """An action outside A(x) was used at state x."""


class ParameterError(MdpError):
    """A numeric parameter (discount, grid, tolerance, β, M) is out of range."""


class ConvergenceError(MdpError):
    """An iterative computation did not meet its tolerance."""


class CapExceededError(MdpError):
    """A computed size exceeds a configured cap.

    Attributes:
        value: The computed size that exceeded the cap
        cap: The cap in force
    """

    def __init__(self, msg: str, value: int, cap: int) -> None:
        super().__init__(msg)
        self.value = value
        self.cap = cap
