"""Permutation polynomials over Z/m: tests, counts, null polynomials,
block decomposition, and coefficient recovery."""

from .census import CensusMethod, CensusResult, count_condition_based, count_exhaustive
from .errors import (BudgetExceeded, NotAPermutation, NotPolynomialFunction, PermPolyError,
                     TheoremViolation)
from .hierarchy import INF, HierarchyReport, decompose
from .modmath import FactoredModulus, crt_combine, factorize
from .nullpoly import enumerate_null, is_null, normal_form, omega
from .permtest import Method, PermVerdict, check_any, crt_build_poly, is_perm_bruteforce
from .poly import FuncTable, IntPoly, equivalent, induced_table
from .recover import RecoveryResult, SampleSet, recover, recover_composite

__all__ = [
    "BudgetExceeded", "CensusMethod", "CensusResult", "FactoredModulus", "FuncTable",
    "HierarchyReport", "INF", "IntPoly", "Method", "NotAPermutation", "NotPolynomialFunction",
    "PermPolyError", "PermVerdict", "RecoveryResult", "SampleSet", "TheoremViolation",
    "check_any", "count_condition_based", "count_exhaustive", "crt_build_poly", "crt_combine",
    "decompose", "enumerate_null", "equivalent", "factorize", "induced_table", "is_null",
    "is_perm_bruteforce", "normal_form", "omega", "recover", "recover_composite",
]
