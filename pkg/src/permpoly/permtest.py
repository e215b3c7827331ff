"""Deciding whether a polynomial permutes Z/m.

Closed forms are used where they exist (degree one, binomials, powers of
two); otherwise the two coefficient condition groups mod p decide each
prime-power factor, and a composite modulus is the conjunction of its
prime-power factors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .errors import BudgetExceeded
from .modmath import crt_combine, factorize, is_prime
from .poly import TABLE_BUDGET, IntPoly, check_table_budget, table_values

# cap on inputs scanned when turning a violated condition into a collision
WITNESS_SEARCH_CAP = 1 << 20


class Method(Enum):
    BRUTE_FORCE = "BruteForce"
    DEGREE1 = "Degree1"
    DEGREE2_BINOMIAL = "Degree2Binomial"
    POWER2 = "Power2ClosedForm"
    PRIME_POWER = "PrimePowerConditions"
    COMPOSITE = "CompositeCRT"


@dataclass(frozen=True)
class Collision:
    x1: int
    x2: int


@dataclass(frozen=True)
class ViolatedCondition:
    """Condition group 1 fails at a pair (i, j); group 2 fails at a single i."""
    group: int
    at: tuple[int, ...]
    modulus: int


@dataclass(frozen=True)
class PermVerdict:
    is_permutation: bool
    method: Method
    witness: Collision | ViolatedCondition | None = None

    def __post_init__(self):
        if self.is_permutation == (self.witness is not None):
            raise ValueError("a witness is required exactly when the verdict is negative")

    def __bool__(self):
        return self.is_permutation


def is_perm_bruteforce(f: IntPoly, budget: int = TABLE_BUDGET) -> PermVerdict:
    m = f.modulus
    check_table_budget(m, budget)
    vals = table_values(f.coeffs, m)
    _, first, inverse = np.unique(vals, return_index=True, return_inverse=True)
    firsts = first[inverse.reshape(-1)]
    dup = np.nonzero(firsts != np.arange(m))[0]
    if dup.size == 0:
        return PermVerdict(True, Method.BRUTE_FORCE)
    x2 = int(dup[0])
    return PermVerdict(False, Method.BRUTE_FORCE, Collision(int(firsts[x2]), x2))


def check_degree1(a1: int, a0: int, m: int) -> bool:
    return math.gcd(a1 % m, m) == 1


def check_binomial_pd(a1: int, a2: int, p: int, d: int) -> bool:
    """a2 x^2 + a1 x permutes Z/p^d."""
    if p == 2 and d == 1:
        # x^2 = x on Z/2, so this is the linear map (a1 + a2) x
        return (a1 + a2) % 2 == 1
    return a1 % p != 0 and a2 % p == 0


def check_power2(f: IntPoly, d: int) -> bool:
    if d < 2 or f.modulus != 2**d:
        raise ValueError(f"need modulus 2^d with d >= 2, got modulus {f.modulus}, d={d}")
    a = f.coeffs
    even = sum(a[2::2])
    odd = sum(a[3::2])
    return f.coeff(1) % 2 == 1 and even % 2 == 0 and odd % 2 == 0


def _reduced_mod_p(f: IntPoly, p: int) -> list[int]:
    return [c % p for c in f.coeffs]


def group1_violation(cs: Sequence[int], p: int) -> tuple[int, int] | None:
    """First pair i < j with f(i) = f(j) mod p (a_0 cancels)."""
    seen = {}
    for x in range(p):
        v = 0
        for c in reversed(cs):
            v = (v * x + c) % p
        if v in seen:
            return seen[v], x
        seen[v] = x
    return None


def group2_violation(cs: Sequence[int], p: int) -> int | None:
    """First i with sum_k k a_k i^(k-1) = 0 mod p."""
    for i in range(p):
        s = 0
        for k in range(len(cs) - 1, 0, -1):
            s = (s * i + k * cs[k]) % p
        if s == 0:
            return i
    return None


def group1_values(f: IntPoly, p: int) -> dict[tuple[int, int], int]:
    cs = _reduced_mod_p(f, p)
    return {(i, j): sum(c * (pow(j, k, p) - pow(i, k, p)) for k, c in enumerate(cs) if k) % p
            for i in range(p) for j in range(i + 1, p)}


def group2_values(f: IntPoly, p: int) -> dict[int, int]:
    cs = _reduced_mod_p(f, p)
    return {i: sum(k * c * i ** (k - 1) for k, c in enumerate(cs) if k) % p for i in range(p)}


def _check_residue_budget(p: int, budget: int) -> None:
    if p > budget:
        raise BudgetExceeded(f"condition scan over {p} residues exceeds budget {budget}")


def check_prime_power(f: IntPoly, p: int, d: int, budget: int = TABLE_BUDGET) -> PermVerdict:
    if f.modulus != p**d or not is_prime(p):
        raise ValueError(f"modulus {f.modulus} is not {p}^{d} for a prime {p}")
    _check_residue_budget(p, budget)
    cs = _reduced_mod_p(f, p)
    bad = group1_violation(cs, p)
    if bad is not None:
        return PermVerdict(False, Method.PRIME_POWER, ViolatedCondition(1, bad, f.modulus))
    if d >= 2:
        i = group2_violation(cs, p)
        if i is not None:
            return PermVerdict(False, Method.PRIME_POWER, ViolatedCondition(2, (i,), f.modulus))
    return PermVerdict(True, Method.PRIME_POWER)


def _collision_from(violation: ViolatedCondition, f: IntPoly, p: int, d: int):
    """Turn a violated condition into an explicit collision when cheap."""
    q = p ** (d - 1)
    if violation.group == 2:
        # f(i + p^(d-1)) = f(i) + f'(i) p^(d-1) mod p^d, and p | f'(i)
        i = violation.at[0]
        return Collision(i, i + q)
    if d == 1:
        return Collision(*violation.at)
    if 2 * q > WITNESS_SEARCH_CAP or f.modulus > 3_000_000_000:
        return violation
    # both residue classes land in one class of size q, so they must collide
    i, j = violation.at
    if q <= 128:
        seen = {}
        for x in [*range(i, f.modulus, p), *range(j, f.modulus, p)]:
            v = f(x)
            if v in seen:
                a, b = seen[v], x
                return Collision(min(a, b), max(a, b))
            seen[v] = x
    xs = np.concatenate([np.arange(i, f.modulus, p), np.arange(j, f.modulus, p)])
    acc = np.zeros(xs.size, dtype=np.int64)
    for c in reversed(f.coeffs):
        acc = (acc * xs + c) % f.modulus
    _, first, inverse = np.unique(acc, return_index=True, return_inverse=True)
    firsts = first[inverse.reshape(-1)]
    dup = np.nonzero(firsts != np.arange(xs.size))[0]
    k = int(dup[0])
    a, b = int(xs[firsts[k]]), int(xs[k])
    return Collision(min(a, b), max(a, b))


def _negative(method: Method, f: IntPoly, p: int, d: int, budget: int) -> PermVerdict:
    v = check_prime_power(f, p, d, budget)
    if v.is_permutation:
        raise AssertionError(f"closed form rejected {f} but the condition groups accept it")
    return PermVerdict(False, method, _collision_from(v.witness, f, p, d))


def _check_part(h: IntPoly, p: int, d: int, budget: int) -> PermVerdict:
    """Dispatch for a prime power; h has a zero constant term."""
    m = h.modulus
    if h.degree <= 1:
        a1 = h.coeff(1)
        if check_degree1(a1, 0, m):
            return PermVerdict(True, Method.DEGREE1)
        return PermVerdict(False, Method.DEGREE1, Collision(0, m // math.gcd(a1, m)))
    if p == 2 and d >= 2:
        if check_power2(h, d):
            return PermVerdict(True, Method.POWER2)
        return _negative(Method.POWER2, h, p, d, budget)
    if h.degree == 2:
        if check_binomial_pd(h.coeff(1), h.coeff(2), p, d):
            return PermVerdict(True, Method.DEGREE2_BINOMIAL)
        return _negative(Method.DEGREE2_BINOMIAL, h, p, d, budget)
    if d == 1:
        _check_residue_budget(p, budget)
        bad = group1_violation(_reduced_mod_p(h, p), p)
        if bad is None:
            return PermVerdict(True, Method.BRUTE_FORCE)
        return PermVerdict(False, Method.BRUTE_FORCE, Collision(*bad))
    v = check_prime_power(h, p, d, budget)
    if v.is_permutation:
        return v
    return PermVerdict(False, Method.PRIME_POWER, _collision_from(v.witness, h, p, d))


def check_any(f: IntPoly, budget: int = TABLE_BUDGET) -> PermVerdict:
    m = f.modulus
    if m == 1:
        return PermVerdict(True, Method.DEGREE1)
    fm = factorize(m)
    g = f.without_constant()
    parts = []
    for p, d in fm.factors:
        q = p**d
        parts.append((q, _check_part(g.reduce(q), p, d, budget)))
    if len(parts) == 1:
        return parts[0][1]
    for q, v in parts:
        if not v.is_permutation:
            w = v.witness
            if isinstance(w, Collision):
                # agree with the failing part, sit at 0 modulo everything else
                rest = m // q
                x1, x2 = crt_combine([(w.x1, q), (0, rest)]), crt_combine([(w.x2, q), (0, rest)])
                w = Collision(min(x1, x2), max(x1, x2))
            return PermVerdict(False, Method.COMPOSITE, w)
    return PermVerdict(True, Method.COMPOSITE)


def crt_build_poly(parts: Sequence[IntPoly]) -> IntPoly:
    if not parts:
        raise ValueError("need at least one part")
    n = max(len(f.coeffs) for f in parts)
    coeffs = [crt_combine([(f.coeff(k), f.modulus) for f in parts]) for k in range(n)]
    return IntPoly(math.prod(f.modulus for f in parts), coeffs)
