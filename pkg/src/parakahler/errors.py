"""Exception hierarchy shared by every module of the package."""


class ParaKahlerError(Exception):
    """Base class for all errors raised by :mod:`parakahler`."""


class ExprSyntaxError(ParaKahlerError, ValueError):
    """Malformed expression text; ``offset`` is the byte position of the fault."""

    def __init__(self, message, offset):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


class UnknownIdentifier(ExprSyntaxError):
    pass


class UnknownFunction(ExprSyntaxError):
    pass


class EvalDomainError(ParaKahlerError, ArithmeticError):
    """Evaluation left the domain of an operation (1/0, ln of x <= 0, ...)."""

    def __init__(self, reason, node=None):
        where = f" in {node}" if node is not None else ""
        super().__init__(f"{reason}{where}")
        self.reason = reason
        self.node = node


class BasePointMismatch(ParaKahlerError, ValueError):
    pass


class DegeneratePlane(ParaKahlerError, ArithmeticError):
    pass


class IsotropicVector(DegeneratePlane):
    pass


class DegenerateLagrangian(ParaKahlerError, ArithmeticError):
    def __init__(self, message, t=None):
        super().__init__(message if t is None else f"{message} (t={t!r})")
        self.t = t


class AxisSingularity(ParaKahlerError, ArithmeticError):
    """The para-Hamiltonian field is undefined on (and near) the axis y = 0."""

    def __init__(self, message, t=None, state=None):
        super().__init__(message)
        self.t = t
        self.state = state
