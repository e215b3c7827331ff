"""Base-p resolution and the block structure of permutations mod p^d.

A permutation polynomial f (with f(0) = 0) mod p^d maps the multiples of
p onto themselves and each residue class b + pZ onto a shifted copy of
the multiples.  On each block, f acts as p times a permutation
polynomial mod p^(d-1), and preserves the p-adic valuation of the
offset within the block.  `decompose` computes all of this and checks
every claim against the induced table.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field

from . import permtest
from .errors import NotAPermutation, TheoremViolation
from .modmath import is_prime
from .poly import TABLE_BUDGET, IntPoly, check_table_budget, scale_divide, shift_compose, table_values


@functools.total_ordering
class _Infinity:
    """Resolution level of 0; compares above every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __hash__(self):
        return hash("permpoly.INF")

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"


INF = _Infinity()


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def base_p_resolution(a: int, p: int):
    _check_prime(p)
    if a == 0:
        return INF
    a = abs(a)
    v = 0
    while a % p == 0:
        a //= p
        v += 1
    return v


def base_p_digits(a: int, p: int) -> list[int]:
    _check_prime(p)
    if a < 0:
        raise ValueError("digits are defined for non-negative integers")
    if a == 0:
        return [0]
    out = []
    while a:
        a, r = divmod(a, p)
        out.append(r)
    return out


def circular_shift(s, k: int, m: int) -> frozenset:
    for y in s:
        if not 0 <= y < m:
            raise ValueError(f"element {y} is outside [0, {m})")
    return frozenset((y + k) % m for y in s)


@dataclass(frozen=True)
class ResolutionPartition:
    p: int
    d: int
    classes: dict

    def __post_init__(self):
        m = self.p**self.d
        seen = set()
        for level, members in self.classes.items():
            if seen & members:
                raise ValueError("resolution classes overlap")
            seen |= members
            if level is INF:
                ok = members == {0}
            else:
                ok = len(members) == self.p ** (self.d - level) - self.p ** (self.d - level - 1)
            if not ok:
                raise ValueError(f"class {level} has the wrong size")
        if seen != set(range(m)):
            raise ValueError("resolution classes do not cover [0, p^d)")

    def levels(self) -> list:
        return sorted(self.classes)


def multires_partition(p: int, d: int, budget: int = TABLE_BUDGET) -> ResolutionPartition:
    _check_prime(p)
    if d < 1:
        raise ValueError("d must be at least 1")
    m = p**d
    check_table_budget(m, budget)
    classes: dict = {}
    for a in range(m):
        classes.setdefault(base_p_resolution(a, p), set()).add(a)
    return ResolutionPartition(p, d, {k: frozenset(v) for k, v in classes.items()})


@dataclass
class HierarchyReport:
    p: int
    d: int
    poly: IntPoly
    offsets: dict[int, int]  # blocks 1..p-1; block 0 has offset 0
    sub_perm_polys: dict[int, IntPoly]
    resolution_fixed: dict = field(default_factory=dict)
    condition_values: dict = field(default_factory=dict)

    def render(self) -> str:
        lines = [f"decompose {self.poly.pretty()} (p={self.p}, d={self.d})"]
        for b in range(self.p):
            lines.append(f"block {b}")
            lines.append(f"  offset {self.offsets.get(b, 0)}")
            lines.append(f"    derived {self.sub_perm_polys[b].pretty()}")
            for level in sorted(lv for (blk, lv) in self.resolution_fixed if blk == b):
                ok = self.resolution_fixed[(b, level)]
                lines.append(f"      level {level} {'fixed' if ok else 'MOVED'}")
        g1 = self.condition_values.get(1, {})
        g2 = self.condition_values.get(2, {})
        lines.append("conditions")
        lines.append("  group1 " + " ".join(f"{i},{j}:{v}" for (i, j), v in sorted(g1.items())))
        lines.append("  group2 " + " ".join(f"{i}:{v}" for i, v in sorted(g2.items())))
        return "\n".join(lines)


def _require(ok: bool, what: str) -> None:
    if not ok:
        raise TheoremViolation(what)


def decompose(f: IntPoly, p: int, d: int, budget: int = TABLE_BUDGET) -> HierarchyReport:
    _check_prime(p)
    if d < 2:
        raise ValueError("decompose needs d >= 2")
    m = p**d
    if f.modulus != m:
        raise ValueError(f"modulus {f.modulus} is not {p}^{d}")
    if f.coeffs[0] != 0:
        raise ValueError("constant term must be zero")
    check_table_budget(m, budget)
    verdict = permtest.is_perm_bruteforce(f, budget)
    if not verdict:
        w = verdict.witness
        raise NotAPermutation(f"{f} is not a permutation: f({w.x1}) = f({w.x2})")
    table = table_values(f.coeffs, m).tolist()
    q = p ** (d - 1)
    multiples = frozenset(range(0, m, p))

    # multiples of p and their complement are both invariant
    img0 = frozenset(table[x] for x in multiples)
    _require(img0 == multiples, "multiples of p are not mapped onto themselves")
    rest = frozenset(range(m)) - multiples
    _require(frozenset(table[x] for x in rest) == rest, "complement block is not invariant")

    offsets, subs, fixed = {}, {}, {}
    images = []
    for b in range(p):
        # block b + pZ lands on the multiples shifted by f(b)
        off = sum(b**k * a for k, a in enumerate(f.coeffs)) % m
        if b:
            offsets[b] = off
        img = frozenset(table[y + b] for y in multiples)
        _require(img == circular_shift(multiples, off, m), f"block {b} image is not a shift by {off}")
        images.append(img)

        # F(p z + b) = f(b) + p g(z) with g a permutation polynomial mod p^(d-1)
        shifted = shift_compose(f, b)
        _require(shifted.coeffs[0] == off, f"shifted constant differs from offset at block {b}")
        g = scale_divide(shifted.without_constant(), p, d)
        _require(g.degree <= d - 1, f"derived polynomial for block {b} has degree {g.degree}")
        for k, c in enumerate(g.coeffs):
            _require(k == 0 or c % p ** (k - 1) == 0, f"coefficient {k} of block {b} not divisible by p^{k - 1}")
        gt = table_values(g.coeffs, q).tolist()
        for z in range(q):
            _require(table[p * z + b] == (off + p * gt[z]) % m, f"derived polynomial misses F at block {b}, z={z}")
        _require(len(set(gt)) == q, f"derived polynomial for block {b} is not a permutation mod {q}")
        subs[b] = g

        # valuation of the in-block offset is preserved
        for level in [*range(1, d), INF]:
            fixed[(b, level)] = True
        for y in multiples:
            level = base_p_resolution(y, p)
            if base_p_resolution((table[y + b] - off) % m, p) != level:
                fixed[(b, level)] = False
        bad = [key for key, ok in fixed.items() if key[0] == b and not ok]
        _require(not bad, f"resolution classes moved in block {b}: {bad}")

    seen = set()
    for img in images:
        _require(not (seen & img), "block images overlap")
        seen |= img
    _require(len(seen) == m, "block images do not cover [0, p^d)")

    # both coefficient condition groups hold mod p
    g1 = permtest.group1_values(f, p)
    g2 = permtest.group2_values(f, p)
    _require(all(g1.values()), "a group-1 difference vanishes mod p")
    _require(all(g2.values()), "a group-2 sum vanishes mod p")

    return HierarchyReport(p, d, f, offsets, subs, fixed, {1: g1, 2: g2})
