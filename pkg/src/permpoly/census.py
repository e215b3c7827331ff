"""Counting permutation polynomials and the bijections they induce.

Counts are over the complete residue system of degree <= n: every
coefficient tuple (a_0, ..., a_n) mod m, including a_n = 0.  With
`include_constant=False` the constant is dropped and N_p = m^n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from . import _vector
from .errors import BudgetExceeded, TheoremViolation
from .modmath import is_prime
from .nullpoly import NullSearchBudget, enumerate_null

COUNT_BUDGET = 10**8


class CensusMethod(Enum):
    EXHAUSTIVE = "Exhaustive"
    CONDITION_BASED = "ConditionBased"
    CLOSED_FORM = "ClosedForm"
    UPPER_BOUND = "UpperBound"


@dataclass(frozen=True)
class CensusResult:
    modulus: int
    n: int
    include_constant: bool
    n_pp: int | None
    n_p: int
    ratio: Fraction
    method: CensusMethod

    def __post_init__(self):
        if self.n_pp is not None:
            if not 0 <= self.n_pp <= self.n_p:
                raise ValueError("N_pp must lie in [0, N_p]")
            if self.method is not CensusMethod.UPPER_BOUND and Fraction(self.n_pp, self.n_p) != self.ratio:
                raise ValueError("ratio does not match N_pp / N_p")


def _n_p(m: int, n: int, include_constant: bool) -> int:
    return m ** (n + 1 if include_constant else n)


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def _check_n(n: int) -> None:
    if n < 0:
        raise ValueError("degree bound must be non-negative")


def _bijective_count(m: int, exponents: list[int], budget: int) -> int:
    total = m ** len(exponents)
    if total > budget:
        raise BudgetExceeded(f"{total} coefficient tuples mod {m} exceed the budget {budget}")
    pw = _vector.power_matrix(exponents, m)
    count = 0
    for block in _vector.coefficient_blocks(m, len(exponents)):
        count += int(_vector.bijective_rows(_vector.tables(block, pw, m), m).sum())
    return count


def count_exhaustive(m: int, n: int, include_constant: bool = True, budget: int = COUNT_BUDGET) -> CensusResult:
    _check_n(n)
    if m < 2:
        raise ValueError("modulus must be at least 2")
    exps = list(range(0 if include_constant else 1, n + 1))
    n_pp = _bijective_count(m, exps, budget)
    n_p = _n_p(m, n, include_constant)
    return CensusResult(m, n, include_constant, n_pp, n_p, Fraction(n_pp, n_p), CensusMethod.EXHAUSTIVE)


def condition_mask(block: np.ndarray, p: int) -> np.ndarray:
    """Rows (a_1..a_n mod p) passing both coefficient condition groups."""
    n = block.shape[1]
    vals = _vector.tables(block, _vector.power_matrix(range(1, n + 1), p), p)
    injective = _vector.bijective_rows(vals, p)
    deriv = np.array([[k * pow(i, k - 1, p) % p for i in range(p)] for k in range(1, n + 1)],
                     dtype=np.int64).reshape(n, p)
    slopes = _vector.tables(block, deriv, p)
    return injective & slopes.all(axis=1)


def count_condition_based(p: int, d: int, n: int, include_constant: bool = True,
                          budget: int = COUNT_BUDGET) -> CensusResult:
    _check_prime(p)
    _check_n(n)
    if d < 2:
        raise ValueError("condition-based counting needs d >= 2")
    if p**n > budget:
        raise BudgetExceeded(f"{p}^{n} residue tuples exceed the budget {budget}")
    good = 0
    for block in _vector.coefficient_blocks(p, n):
        good += int(condition_mask(block, p).sum())
    # conditions see coefficients only mod p; the constant is free
    n_pp = good * p ** ((d - 1) * n) * (p**d if include_constant else 1)
    m = p**d
    n_p = _n_p(m, n, include_constant)
    return CensusResult(m, n, include_constant, n_pp, n_p, Fraction(n_pp, n_p), CensusMethod.CONDITION_BASED)


def ratio_closed_form(p: int, d: int, n: int) -> Fraction | None:
    _check_prime(p)
    _check_n(n)
    if d < 1:
        raise ValueError("d must be at least 1")
    if n == 0:
        return Fraction(0)
    if d == 1:
        if n >= p - 1:
            return Fraction(math.factorial(p - 1), p ** (p - 1))
        if n == 1:
            return Fraction(p - 1, p)
        if n == 2:
            return Fraction(p - 1, p**2)
        return None
    if n == 1:
        return Fraction(p - 1, p)
    if n == 2:
        return Fraction(p - 1, p**2)
    if n >= 2 * p - 1:
        return Fraction((p - 1) ** p * math.factorial(p - 1), p ** (2 * p - 1))
    return None


def ratio_upper_bound(p: int, d: int, n: int) -> Fraction:
    _check_prime(p)
    if d >= 2:
        if 3 <= n <= p:
            return Fraction((p - 1) * math.factorial(n - 1) * math.comb(p - 1, n - 1), p**n)
        if p + 1 <= n <= 2 * p - 2:
            # (p-1)! injective residue patterns, p-1 admissible values for each
            # of the n-p+1 slope-constrained coefficients
            return Fraction(math.factorial(p - 1) * (p - 1) ** (n - p + 1), p**n)
    elif d == 1 and 3 <= n <= p - 2:
        return Fraction(math.factorial(n - 1) * math.comb(p - 1, n - 1), p**n)
    raise ValueError(f"no upper bound for p={p}, d={d}, n={n}")


def count_degree_p_classes(p: int) -> int:
    _check_prime(p)
    return (p - 1) * math.factorial(p)


def degree_p_class_scan(p: int, budget: int = COUNT_BUDGET) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    """Permutation polynomials of degree exactly p mod p, grouped by induced table."""
    _check_prime(p)
    if (p - 1) * p**p > budget:
        raise BudgetExceeded(f"degree-{p} scan mod {p} exceeds the budget {budget}")
    pw = _vector.power_matrix(range(p + 1), p)
    out: dict = {}
    for block in _vector.coefficient_blocks(p, p + 1):
        block = block[block[:, -1] != 0]
        t = _vector.tables(block, pw, p)
        ok = _vector.bijective_rows(t, p)
        for row, vals in zip(block[ok].tolist(), t[ok].tolist()):
            out.setdefault(tuple(vals), []).append(tuple(row))
    return out


def count_bijections(p: int, d: int, n: int, budget: int = COUNT_BUDGET) -> int:
    """Distinct bijections induced by polynomials of degree <= n mod p^d.

    Computed as N_pp / N_np and by deduplicating tables; both must agree.
    """
    _check_prime(p)
    _check_n(n)
    m = p**d
    if m ** (n + 1) > budget:
        raise BudgetExceeded(f"{m}^{n + 1} tuples exceed the budget {budget}")
    pw = _vector.power_matrix(range(n + 1), m)
    n_pp = 0
    seen = []
    for block in _vector.coefficient_blocks(m, n + 1):
        t = _vector.tables(block, pw, m)
        ok = _vector.bijective_rows(t, m)
        n_pp += int(ok.sum())
        if ok.any():
            seen.append(np.unique(t[ok], axis=0))
    distinct = len(np.unique(np.concatenate(seen), axis=0)) if seen else 0
    nulls = len(enumerate_null(m, n, NullSearchBudget(max_tuples=budget, max_degree=max(n, 1))))
    if n_pp % nulls or n_pp // nulls != distinct:
        raise TheoremViolation(f"N_pp/N_np = {n_pp}/{nulls} but {distinct} distinct tables")
    return distinct


def census(p: int, d: int, n: int, include_constant: bool = True, exhaustive: bool = False,
           budget: int = COUNT_BUDGET) -> CensusResult:
    """Exact count by the cheapest available route."""
    _check_prime(p)
    if d < 1:
        raise ValueError("d must be at least 1")
    m = p**d
    if exhaustive:
        return count_exhaustive(m, n, include_constant, budget)
    if d >= 2:
        return count_condition_based(p, d, n, include_constant, budget)
    r = ratio_closed_form(p, d, n)
    if r is not None:
        n_p = _n_p(m, n, include_constant)
        return CensusResult(m, n, include_constant, int(r * n_p), n_p, r, CensusMethod.CLOSED_FORM)
    return count_exhaustive(m, n, include_constant, budget)


def count_exact_degree(p: int, d: int, n: int, include_constant: bool = True,
                       exhaustive: bool = False, budget: int = COUNT_BUDGET) -> int:
    """Permutation polynomials with a_n != 0, by differencing the <= n counts."""
    if n < 1:
        raise ValueError("exact-degree counts need n >= 1")
    hi = census(p, d, n, include_constant, exhaustive, budget).n_pp
    lo = census(p, d, n - 1, include_constant, exhaustive, budget).n_pp
    return hi - lo
