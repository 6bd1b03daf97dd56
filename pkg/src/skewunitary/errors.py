"""Exception hierarchy."""


class SkewUnitaryError(Exception):
    """Base class for every error raised by this package."""


class InvalidSpec(SkewUnitaryError, ValueError):
    pass


class AxiomFailure(SkewUnitaryError):
    """An exhaustive axiom check found a counterexample (an implementation bug)."""


class RingMismatch(SkewUnitaryError, ValueError):
    pass


class NotAUnit(SkewUnitaryError, ArithmeticError):
    pass


class NotAvailable(SkewUnitaryError):
    pass


class BudgetExceeded(SkewUnitaryError):
    pass


class NotProper(SkewUnitaryError, ValueError):
    pass


class DimensionMismatch(SkewUnitaryError, ValueError):
    pass


class Singular(SkewUnitaryError, ArithmeticError):
    pass


class NotSkewHermitian(SkewUnitaryError, ValueError):
    pass


class Degenerate(SkewUnitaryError, ValueError):
    pass


class NotExtendable(SkewUnitaryError):
    pass


class NotABasisVector(SkewUnitaryError, ValueError):
    pass


class PreconditionFailed(SkewUnitaryError, ValueError):
    pass


class NotCongruentToOne(PreconditionFailed):
    pass


class NotApproximatelySymplectic(PreconditionFailed):
    pass


class NotUnitaryDownstairs(PreconditionFailed):
    pass


class LengthMismatch(PreconditionFailed):
    pass


class SingularGram(SkewUnitaryError, ArithmeticError):
    pass


class OddRank(SkewUnitaryError, ValueError):
    pass


class InternalDefect(SkewUnitaryError, AssertionError):
    """A postcondition that the algorithms guarantee did not hold."""


class BranchUnavailable(SkewUnitaryError, ValueError):
    pass
