"""Exception types raised across the package."""


class CimQigError(Exception):
    """Base class for all errors raised by cimqig."""


class DimensionMismatch(CimQigError, ValueError):
    pass


class NotOriented(CimQigError, ValueError):
    pass


class DegreeCapExceeded(CimQigError):
    def __init__(self, degree, cap):
        self.degree = degree
        self.cap = cap
        super().__init__(f"basis element of degree {degree} exceeds degree cap {cap}")


class BudgetExceeded(CimQigError):
    def __init__(self, what, needed, budget):
        self.needed = needed
        self.budget = budget
        super().__init__(f"{what}: {needed} exceeds budget {budget}")


class PatternError(CimQigError, ValueError):
    pass


class NotATree(CimQigError, ValueError):
    pass


class HomogeneityViolation(CimQigError):
    """A binomial cannot be lifted because its lead has a lift the trail lacks."""

    def __init__(self, binomial, witness, message=None):
        self.binomial = binomial
        self.witness = witness
        super().__init__(message or f"not weakly Q-homogeneous: {binomial} (lift {witness})")
