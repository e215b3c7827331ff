"""Exception types raised by the library.

Every domain error derives from PermPolyError so callers (and the CLI) can
tell them apart from programming errors.  Plain argument violations raise
ValueError.
"""


class PermPolyError(Exception):
    pass


class NotInvertible(PermPolyError):
    pass


class SingularModM(PermPolyError):
    pass


class FactorizationTooHard(PermPolyError):
    pass


class BudgetExceeded(PermPolyError):
    pass


class NotAPermutation(PermPolyError):
    pass


class NotPolynomialFunction(PermPolyError):
    pass


class RecursionBudgetExceeded(PermPolyError):
    pass


class NodesNotDistinctModP(PermPolyError):
    pass


class TooManyNodes(PermPolyError):
    pass


class TheoremViolation(AssertionError):
    """A structural fact that must hold for every permutation failed to hold.

    Raised explicitly (not via ``assert``) so it survives ``python -O``.
    Seeing one means there is a defect in this library.
    """
