"""Exception hierarchy shared by all modules."""


class CoxSagbiError(Exception):
    """Base class; the CLI maps it to exit code 1 unless a subclass says otherwise."""

    exit_code = 1


class ZeroScalar(CoxSagbiError, ZeroDivisionError):
    pass


class ParseError(CoxSagbiError, ValueError):
    pass


class DimensionMismatch(CoxSagbiError, ValueError):
    pass


class NegativeDegree(CoxSagbiError, ValueError):
    pass


class NotInKernel(CoxSagbiError, ValueError):
    pass


class DegeneratePlucker(CoxSagbiError, ValueError):
    pass


class NotUnique(CoxSagbiError, ValueError):
    pass


class ZeroPolynomial(CoxSagbiError, ValueError):
    pass


class NotPointed(CoxSagbiError, ValueError):
    def __init__(self, lineality_dim):
        super().__init__(f"cone has a lineality space of dimension {lineality_dim}")
        self.lineality_dim = lineality_dim


class UnboundedFiber(CoxSagbiError, ValueError):
    pass


class InfeasibleSums(CoxSagbiError, ValueError):
    pass


class NotTreeMetric(CoxSagbiError, ValueError):
    pass


class NotMonericError(CoxSagbiError, ValueError):
    pass


class UnknownType(CoxSagbiError, RuntimeError):
    exit_code = 2


class InstanceTooLarge(CoxSagbiError, ValueError):
    exit_code = 3


class IncompatibleSplits(CoxSagbiError, ValueError):
    pass


class SplitNotInTree(CoxSagbiError, ValueError):
    pass


class InfeasibleDegree(CoxSagbiError, ValueError):
    pass


class ParityViolation(CoxSagbiError, ValueError):
    pass


class PrecisionFailure(CoxSagbiError, ArithmeticError):
    pass


class RankDeficient(CoxSagbiError, ValueError):
    pass


class NoApplicableFormula(CoxSagbiError, ValueError):
    pass
