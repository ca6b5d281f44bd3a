"""Exception types shared across the package."""


class OutOfRange(ValueError):
    """Integer outside the range handled by the deterministic primality test."""


class NonUnitLeadingCoefficient(ArithmeticError):
    pass


class NotInvertible(ArithmeticError):
    """Element of Z/p^k whose constant content is divisible by p."""


class ZeroDivisorWitness(ArithmeticError):
    """A nonzero non-unit was met while inverting.

    ``level`` is the ring in which the zero divisor lives.  For a tower level
    ``factor`` is a monic nontrivial factor of that level's defining
    polynomial (a :class:`~legendre_tower.poly.Poly` over the level below);
    for a base residue ring it is the offending residue itself.
    """

    def __init__(self, level, factor):
        super().__init__(f"zero divisor in {level!r}: {factor!r}")
        self.level = level
        self.factor = factor


class DuplicateGenerator(ValueError):
    pass


class InvalidWitness(ValueError):
    pass


class BadAssignment(ValueError):
    pass


class BadDenominator(ValueError):
    pass


class SingularCurve(ValueError):
    pass


class BadLambda(ValueError):
    pass


class BadN(ValueError):
    pass


class DegenerateLambda(ValueError):
    pass


class ConditionsFailed(ValueError):
    def __init__(self, report, reason=None):
        msg = reason or f"prime {report.p} does not qualify"
        super().__init__(msg)
        self.report = report


class InsufficientPrimes(ValueError):
    pass


class IllDefinedMap(RuntimeError):
    pass


class RepeatedRootModP(ValueError):
    pass


class NotSplitModP(ValueError):
    """Cubic has an irreducible quadratic factor modulo p."""


class AssignmentAmbiguous(ValueError):
    pass


class SplitBudgetExceeded(RuntimeError):
    pass
