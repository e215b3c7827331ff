"""Recovering polynomial coefficients from the function a polynomial induces.

Mod p^d a polynomial function has many polynomial representatives; every
routine here returns the class's normal form (the seed), of degree below
p*d, and the rest of the class is the seed plus null polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import nullpoly
from .errors import (NodesNotDistinctModP, NotPolynomialFunction,
                     RecursionBudgetExceeded, TooManyNodes)
from .modmath import (OpCounter, confluent_rows, factorize, is_prime, mat_solve_mod, module_size,
                      solve_mod_prime_power, span_basis)
from .permtest import crt_build_poly
from .poly import TABLE_BUDGET, FuncTable, IntPoly, check_table_budget, table_values

# leaves in the recursion tree (p^depth) before giving up
RECURSION_LEAF_CAP = 1 << 16


@dataclass(frozen=True)
class SampleSet:
    modulus: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple((int(x), int(y)) for x, y in self.pairs)
        seen = set()
        for x, y in pairs:
            if x % self.modulus in seen:
                raise ValueError(f"input {x} repeats modulo {self.modulus}")
            seen.add(x % self.modulus)
            if not 0 <= y < self.modulus:
                raise ValueError(f"output {y} is outside [0, {self.modulus})")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_table(cls, table: FuncTable, xs: Iterable[int] | None = None) -> "SampleSet":
        xs = range(table.modulus) if xs is None else xs
        return cls(table.modulus, tuple((x, table[x]) for x in xs))

    def lookup(self) -> dict[int, int]:
        return {x % self.modulus: y for x, y in self.pairs}


@dataclass(frozen=True)
class RecoveryResult:
    seed: IntPoly
    equivalence_class_size: int | None
    operation_count: int


def _as_lookup(data, m: int) -> dict[int, int]:
    if isinstance(data, FuncTable):
        if data.modulus != m:
            raise ValueError(f"table modulus {data.modulus} differs from {m}")
        return dict(enumerate(data.values))
    if isinstance(data, SampleSet):
        if data.modulus != m:
            raise ValueError(f"sample modulus {data.modulus} differs from {m}")
        return data.lookup()
    raise TypeError("expected a FuncTable or a SampleSet")


def _need(values: dict[int, int], x: int) -> int:
    if x not in values:
        raise ValueError(f"no sample at input {x}")
    return values[x]


def _check_prime_power(p: int, d: int) -> int:
    if not is_prime(p) or d < 1:
        raise ValueError(f"need a prime p and d >= 1 (p={p}, d={d})")
    return p**d


def _horner(coeffs: Sequence[int], x: int, m: int) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % m
    return acc


def interpolate_small(samples, p: int, d: int, counter: OpCounter | None = None) -> IntPoly:
    """The unique polynomial of degree < len(samples) through the samples mod p^d."""
    m = _check_prime_power(p, d)
    pairs = list(samples.pairs if isinstance(samples, SampleSet) else samples)
    if not pairs:
        raise ValueError("need at least one sample")
    if len(pairs) > p:
        raise TooManyNodes(f"{len(pairs)} nodes exceed p = {p}")
    xs = [x for x, _ in pairs]
    if len({x % p for x in xs}) != len(xs):
        raise NodesNotDistinctModP(f"inputs {xs} are not distinct modulo {p}")
    a = [[pow(x, k, m) for k in range(len(xs))] for x in xs]
    return IntPoly(m, mat_solve_mod(a, [y for _, y in pairs], m, counter))


def interpolate_function_mod_p(table, p: int) -> IntPoly:
    """Degree <= p-1 polynomial inducing an arbitrary function on Z/p (Newton form)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    values = list(table.values if isinstance(table, FuncTable) else table)
    if len(values) != p:
        raise ValueError(f"need {p} values, got {len(values)}")
    # divided differences on nodes 0..p-1; node gaps are units mod p
    coef = [v % p for v in values]
    for j in range(1, p):
        for i in range(p - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) * pow(j, -1, p) % p
    # expand sum coef[i] * x (x-1) ... (x-i+1)
    out = [0] * p
    basis = [1]
    for i in range(p):
        for k, b in enumerate(basis):
            out[k] = (out[k] + coef[i] * b) % p
        # basis *= (x - i)
        basis = [(u - i * v) % p for u, v in zip([0, *basis], [*basis, 0])]
    return IntPoly(p, out)


def _verify(seed: IntPoly, values: dict[int, int]) -> None:
    m = seed.modulus
    for x, y in values.items():
        if _horner(seed.coeffs, x, m) != y:
            raise NotPolynomialFunction(f"no polynomial fits the data at input {x}")


def recover_block(data, p: int, d: int) -> RecoveryResult:
    """Seed of degree <= pd-1 mod p^d, for 2 <= d <= p.

    Reads the inputs x = p*y + b with b < p, y < d, then checks every other
    available sample.
    """
    m = _check_prime_power(p, d)
    if not 2 <= d <= p:
        raise ValueError(f"block recovery needs 2 <= d <= p (p={p}, d={d})")
    values = _as_lookup(data, m)
    counter = OpCounter()
    rows, rhs = [], []
    for b in range(p):
        pts = [(y, _need(values, p * y + b)) for y in range(d)]
        h = interpolate_small(pts, p, d, counter)
        e = [h.coeff(k) for k in range(d)]
        # f(p y + b) = sum_k t_k p^k y^k with t_k the Taylor coefficients at b
        for k, ek in enumerate(e):
            if ek % p**k:
                raise NotPolynomialFunction(f"block {b}: coefficient {k} is not divisible by {p}^{k}")
        for x, y in values.items():
            if x % p == b and _horner(e, (x - b) // p, m) != y:
                raise NotPolynomialFunction(f"block {b} disagrees with the sample at {x}")
        rows.extend(confluent_rows(b, d, p * d))
        rhs.extend(ek // p**k for k, ek in enumerate(e))
    seed = nullpoly.normal_form(IntPoly(m, mat_solve_mod(rows, rhs, m, counter)))
    _verify(seed, values)
    return RecoveryResult(seed, nullpoly.count_null_closed(p, d), counter.count)


def depth(p: int, d: int) -> int:
    """Level at which the recursive solver stops splitting: ceil((d-1)/p)."""
    return -(-(d - 1) // p)


def _width(sigma: int, p: int, d: int) -> int:
    # Taylor terms p^(sigma k) c_k survive mod p^d only for sigma k < d
    return p * d if sigma == 0 else -(-d // sigma)


def required_samples(p: int, d: int) -> list[int]:
    _check_prime_power(p, d)
    return list(range(p ** (depth(p, d) + 1)))


class _Recursion:
    def __init__(self, values: dict[int, int], p: int, d: int, counter: OpCounter):
        self.values = values
        self.p, self.d, self.m = p, d, p**d
        self.top = depth(p, d)
        self.counter = counter

    def family(self, s: int, sigma: int):
        """Scaled Taylor data v_k = p^(sigma k) c_k at offset s, as (v0, basis).

        Every polynomial agreeing with the samples on x = s (mod p^sigma)
        has v = v0 + a combination of the basis rows (mod p^d).
        """
        p, d, m = self.p, self.d, self.m
        width = _width(sigma, p, d)
        if sigma == self.top:
            a = [[pow(p, sigma * k) * pow(y, k) for k in range(width)] for y in range(p)]
            b = [_need(self.values, s + p**sigma * y) for y in range(p)]
            sol = solve_mod_prime_power(a, b, p, d, self.counter)
            if sol is None:
                raise NotPolynomialFunction(f"samples on stratum {s} mod {p}^{sigma} are inconsistent")
            x0, gens = sol
            v0 = [(pow(p, sigma * k) * c) % m for k, c in enumerate(x0)]
            for x, y in self.values.items():
                if x % p**sigma == s and _horner(v0, (x - s) // p**sigma, m) != y:
                    raise NotPolynomialFunction(f"stratum {s} mod {p}^{sigma} disagrees at {x}")
            scaled = [[(pow(p, sigma * k) * c) % m for k, c in enumerate(g)] for g in gens]
            return v0, span_basis(scaled, p, d)

        children = [self.family(s + p**sigma * b, sigma + 1) for b in range(p)]
        child_width = _width(sigma + 1, p, d)
        nt = sum(len(basis) for _, basis in children)
        rows, rhs = [], []
        t0 = 0
        for b, (w0, basis) in enumerate(children):
            for j in range(child_width):
                row = [p**j * math.comb(k, j) * b ** (k - j) * p ** (sigma * k) if k >= j else 0
                       for k in range(width)]
                tail = [0] * nt
                for i, g in enumerate(basis):
                    tail[t0 + i] = -g[j]
                rows.append(row + tail)
                rhs.append(w0[j])
            t0 += len(basis)
        sol = solve_mod_prime_power(rows, rhs, p, d, self.counter)
        if sol is None:
            raise NotPolynomialFunction(f"strata below {s} mod {p}^{sigma} admit no common polynomial")
        x0, gens = sol
        v0 = [(p ** (sigma * k) * c) % m for k, c in enumerate(x0[:width])]
        scaled = [[(p ** (sigma * k) * c) % m for k, c in enumerate(g[:width])] for g in gens]
        return v0, span_basis(scaled, p, d)


def recover_recursive(data, p: int, d: int) -> RecoveryResult:
    """Seed of degree <= pd-1 mod p^d for d > p, splitting x by base-p digits.

    Only the inputs in `required_samples(p, d)` are needed; any further
    samples are checked against the seed.
    """
    m = _check_prime_power(p, d)
    if d <= p:
        raise ValueError(f"recursive recovery needs d > p (p={p}, d={d})")
    if p ** depth(p, d) > RECURSION_LEAF_CAP:
        raise RecursionBudgetExceeded(f"{p}^{depth(p, d)} leaves exceed the cap {RECURSION_LEAF_CAP}")
    values = _as_lookup(data, m)
    counter = OpCounter()
    v0, basis = _Recursion(values, p, d, counter).family(0, 0)
    seed = nullpoly.normal_form(IntPoly(m, v0))
    _verify(seed, values)
    return RecoveryResult(seed, module_size(basis, p, d), counter.count)


def recover(data, p: int, d: int) -> RecoveryResult:
    m = _check_prime_power(p, d)
    if d == 1:
        values = _as_lookup(data, m)
        seed = interpolate_function_mod_p([_need(values, x) for x in range(p)], p)
        _verify(seed, values)
        return RecoveryResult(seed, 1, p * p)
    if d <= p:
        return recover_block(data, p, d)
    return recover_recursive(data, p, d)


def recover_composite(table: FuncTable, budget: int = TABLE_BUDGET) -> IntPoly:
    m = table.modulus
    check_table_budget(m, budget)
    if m == 1:
        return IntPoly(1, [0])
    parts = []
    for p, d in factorize(m).factors:
        q = p**d
        sub = [v % q for v in table.values[:q]]
        for x, v in enumerate(table.values):
            if v % q != sub[x % q]:
                raise NotPolynomialFunction(f"values mod {q} are not periodic in x mod {q}")
        parts.append(recover(FuncTable(q, sub), p, d).seed)
    out = crt_build_poly(parts)
    if table_values(out.coeffs, m).tolist() != list(table.values):
        raise NotPolynomialFunction(f"combined polynomial does not reproduce the table mod {m}")
    return out


def complexity_bounds(p: int, d: int) -> tuple[int, int]:
    """Reference growth terms for the direct and the depth-limited solver."""
    return p ** max(d - p + 6, 0), d**3 * p ** (depth(p, d) + 3)
