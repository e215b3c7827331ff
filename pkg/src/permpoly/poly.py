"""Polynomials over Z/m and the function tables they induce."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import BudgetExceeded
from .modmath import is_prime

TABLE_BUDGET = 2**24
DEGREE_CAP = 64


@dataclass(frozen=True)
class IntPoly:
    """Polynomial mod `modulus`, coefficients ascending and canonical.

    Coefficients are reduced into [0, modulus) and trailing zeros trimmed;
    the zero polynomial is stored as (0,).
    """

    modulus: int
    coeffs: tuple[int, ...]

    def __init__(self, modulus: int, coeffs: Iterable[int] = (0,)):
        if modulus < 1:
            raise ValueError(f"modulus must be positive, got {modulus}")
        cs = [int(c) % modulus for c in coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [0]
        if len(cs) - 1 > DEGREE_CAP:
            raise ValueError(f"degree {len(cs) - 1} exceeds the cap of {DEGREE_CAP}")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def parse(cls, text: str, modulus: int) -> "IntPoly":
        return cls(modulus, parse_coeffs(text))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, k: int) -> int:
        return self.coeffs[k] if k < len(self.coeffs) else 0

    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    def __call__(self, x: int) -> int:
        return evaluate(self, x)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        _same_modulus(self, other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self.modulus, [self.coeff(k) + other.coeff(k) for k in range(n)])

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        _same_modulus(self, other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self.modulus, [self.coeff(k) - other.coeff(k) for k in range(n)])

    def scale(self, a: int) -> "IntPoly":
        return IntPoly(self.modulus, [a * c for c in self.coeffs])

    def plus_constant(self, b: int) -> "IntPoly":
        return IntPoly(self.modulus, [self.coeffs[0] + b, *self.coeffs[1:]])

    def without_constant(self) -> "IntPoly":
        return IntPoly(self.modulus, [0, *self.coeffs[1:]])

    def reduce(self, modulus: int) -> "IntPoly":
        """Reinterpret modulo a divisor of the current modulus."""
        if self.modulus % modulus:
            raise ValueError(f"{modulus} does not divide {self.modulus}")
        return IntPoly(modulus, self.coeffs)

    def text(self) -> str:
        return format_coeffs(self.coeffs)

    def pretty(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                base = "x" if k == 1 else f"x^{k}"
                terms.append(base if c == 1 else f"{c}{base}")
        body = " + ".join(terms) if terms else "0"
        return f"{body} mod {self.modulus}"

    def __str__(self):
        return self.pretty()


@dataclass(frozen=True)
class FuncTable:
    modulus: int
    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        if len(vals) != self.modulus:
            raise ValueError(f"table has {len(vals)} entries, expected {self.modulus}")
        if any(not 0 <= v < self.modulus for v in vals):
            raise ValueError("table values must lie in [0, m)")
        object.__setattr__(self, "values", vals)

    def __getitem__(self, x: int) -> int:
        return self.values[x % self.modulus]

    def is_bijection(self) -> bool:
        return len(set(self.values)) == self.modulus

    def reduce(self, modulus: int) -> "FuncTable":
        """The table mod a divisor; only meaningful for polynomial functions."""
        if self.modulus % modulus:
            raise ValueError(f"{modulus} does not divide {self.modulus}")
        return FuncTable(modulus, [self.values[x] % modulus for x in range(modulus)])


def _same_modulus(f: IntPoly, g: IntPoly) -> None:
    if f.modulus != g.modulus:
        raise ValueError(f"modulus mismatch: {f.modulus} vs {g.modulus}")


def parse_coeffs(text: str) -> list[int]:
    parts = [t.strip() for t in text.split(",")]
    if not parts or any(t == "" for t in parts):
        raise ValueError(f"bad coefficient list {text!r}")
    try:
        return [int(t) for t in parts]
    except ValueError:
        raise ValueError(f"bad coefficient list {text!r}") from None


def format_coeffs(coeffs: Sequence[int]) -> str:
    return ",".join(str(c) for c in coeffs)


def evaluate(f: IntPoly, x: int) -> int:
    m = f.modulus
    acc = 0
    for c in reversed(f.coeffs):
        acc = (acc * x + c) % m
    return acc


def check_table_budget(m: int, budget: int = TABLE_BUDGET) -> None:
    if m > budget:
        raise BudgetExceeded(f"modulus {m} exceeds the table budget {budget}")


def table_values(coeffs: Sequence[int], m: int) -> np.ndarray:
    """Horner over x = 0..m-1, vectorized while m**2 fits in int64."""
    if m > 3_000_000_000:
        return np.array([evaluate(IntPoly(m, coeffs), x) for x in range(m)], dtype=object)
    xs = np.arange(m, dtype=np.int64)
    acc = np.zeros(m, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * xs + c) % m
    return acc


def induced_table(f: IntPoly, budget: int = TABLE_BUDGET) -> FuncTable:
    check_table_budget(f.modulus, budget)
    return FuncTable(f.modulus, table_values(f.coeffs, f.modulus).tolist())


def congruent(f: IntPoly, g: IntPoly) -> bool:
    _same_modulus(f, g)
    return f.coeffs == g.coeffs


def equivalent(f: IntPoly, g: IntPoly, budget: int = TABLE_BUDGET) -> bool:
    _same_modulus(f, g)
    check_table_budget(f.modulus, budget)
    return not (table_values((f - g).coeffs, f.modulus)).any()


def shift_compose(f: IntPoly, i: int) -> IntPoly:
    """g(y) = f(y + i), expanded coefficient-wise."""
    a = f.coeffs
    n = len(a)
    out = [sum(math.comb(k, l) * i ** (k - l) * a[k] for k in range(l, n)) for l in range(n)]
    return IntPoly(f.modulus, out)


def scale_divide(f: IntPoly, p: int, d: int) -> IntPoly:
    """f1 mod p^(d-1) with f(p z) = p f1(z) (mod p^d); needs a_0 = 0."""
    if d < 2 or not is_prime(p):
        raise ValueError(f"need a prime p and d >= 2 (p={p}, d={d})")
    if f.modulus != p**d:
        raise ValueError(f"modulus {f.modulus} is not {p}^{d}")
    if f.coeffs[0] != 0:
        raise ValueError("constant term must be zero")
    out = [0] + [a * p ** (k - 1) for k, a in enumerate(f.coeffs) if k >= 1]
    return IntPoly(p ** (d - 1), out)


def degree_mod(f: IntPoly) -> int:
    return f.degree
