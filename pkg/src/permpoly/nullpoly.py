"""Null polynomials (vanishing at every residue) and equivalence classes."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _vector
from .errors import BudgetExceeded
from .modmath import is_prime
from .poly import TABLE_BUDGET, IntPoly, check_table_budget, table_values


@dataclass(frozen=True)
class NullSearchBudget:
    max_tuples: int = 10**8
    max_degree: int = 16

    def __post_init__(self):
        if self.max_tuples < 1 or self.max_degree < 1:
            raise ValueError("budget limits must be positive")


DEFAULT_BUDGET = NullSearchBudget()


def is_null(f: IntPoly, budget: int = TABLE_BUDGET) -> bool:
    check_table_budget(f.modulus, budget)
    return not table_values(f.coeffs, f.modulus).any()


def _null_rows(m: int, exponents, lead=None):
    """Scan tuples over `exponents` (plus an optional fixed leading term) for null rows."""
    pw = _vector.power_matrix(exponents, m)
    lead_vals = None
    if lead is not None:
        k, c = lead
        lead_vals = (c * _vector.power_matrix([k], m)[0]) % m
    for block in _vector.coefficient_blocks(m, len(exponents)):
        t = _vector.tables(block, pw, m)
        if lead_vals is not None:
            t = (t + lead_vals) % m
        hits = np.nonzero(~t.any(axis=1))[0]
        for r in hits:
            yield block[r].tolist()


def enumerate_null(m: int, max_deg: int, budget: NullSearchBudget = DEFAULT_BUDGET) -> list[IntPoly]:
    if max_deg < 0:
        raise ValueError("max_deg must be non-negative")
    if max_deg > budget.max_degree or m ** (max_deg + 1) > budget.max_tuples:
        raise BudgetExceeded(
            f"enumerating degree <= {max_deg} mod {m} needs {m}^{max_deg + 1} tuples")
    return list(_enumerate_null_cached(m, max_deg))


@lru_cache(maxsize=64)
def _enumerate_null_cached(m: int, max_deg: int) -> tuple[IntPoly, ...]:
    # a null polynomial vanishes at 0, so a_0 = 0 and only a_1.. are scanned
    found = [IntPoly(m, [0])]
    if max_deg >= 1:
        for row in _null_rows(m, list(range(1, max_deg + 1))):
            if any(row):
                found.append(IntPoly(m, [0, *row]))
    return tuple(sorted(found, key=lambda f: f.coeffs))


def count_null_closed(p: int, d: int) -> int:
    """Null polynomials of degree <= pd-1 mod p^d, valid for 2 <= d <= p."""
    if not is_prime(p) or not 2 <= d <= p:
        raise ValueError(f"closed form needs prime p and 2 <= d <= p (p={p}, d={d})")
    return p ** (d * (d - 1) * p // 2)


def omega(m: int, monic: bool = False, budget: NullSearchBudget = DEFAULT_BUDGET) -> int:
    """Least degree of a nonzero (or monic) null polynomial mod m."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    spent = 0
    for n in range(1, budget.max_degree + 1):
        leads = [1] if monic else range(1, m)
        cost = len(leads) * m ** (n - 1)
        spent += cost
        if spent > budget.max_tuples:
            break
        for c in leads:
            for _ in _null_rows(m, list(range(1, n)), lead=(n, c)):
                return n
    raise BudgetExceeded(f"no {'monic ' if monic else ''}null polynomial found mod {m} within budget")


def _to_falling(coeffs, n):
    # x^j = sum_k S(j, k) x(x-1)...(x-k+1), S the Stirling numbers of the second kind
    out = [0] * n
    row = [1]
    for j, a in enumerate(coeffs):
        if j:
            row = [(row[k] if k < len(row) else 0) * k + (row[k - 1] if k else 0) for k in range(j + 1)]
        for k, s2 in enumerate(row):
            out[k] += a * s2
    return out


def _from_falling(c, m):
    out = [0] * len(c)
    row = [1]  # coefficients of x(x-1)...(x-k+1)
    for k, ck in enumerate(c):
        if k:
            row = [((row[j - 1] if j else 0) - (k - 1) * (row[j] if j < len(row) else 0)) % m
                   for j in range(k + 1)]
        for j, v in enumerate(row):
            out[j] = (out[j] + ck * v) % m
    return out


def normal_form(f: IntPoly) -> IntPoly:
    """The unique representative of f's equivalence class in reduced falling-factorial form.

    Writes f = sum c_k x(x-1)...(x-k+1) and reduces c_k modulo m / gcd(m, k!);
    two polynomials are equivalent exactly when their normal forms agree.
    """
    m = f.modulus
    c = _to_falling(f.coeffs, len(f.coeffs))
    fact = 1
    for k in range(len(c)):
        fact = fact * k if k else 1
        c[k] %= m // math.gcd(m, fact)
    return IntPoly(m, _from_falling(c, m))


def equivalents_of(f: IntPoly, max_deg: int, budget: NullSearchBudget = DEFAULT_BUDGET) -> list[IntPoly]:
    out = {(f + z).coeffs: f + z for z in enumerate_null(f.modulus, max_deg, budget)}
    return [out[k] for k in sorted(out)]
