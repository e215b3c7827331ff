"""Integer and modular arithmetic.

gcd and inverses, trial-division factoring, CRT, exact determinants,
linear congruence solving, and closed forms for a few structured
determinants (Vandermonde, derivative-paired powers, binomial blocks).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .errors import FactorizationTooHard, NotInvertible, SingularModM

MATRIX_CAP = 64
ADJUGATE_CHECK_DIM = 6
FACTOR_TRIAL_CAP = 2_000_000


class OpCounter:
    """Running tally of multiply-add steps, shared across nested solvers."""

    def __init__(self):
        self.count = 0

    def add(self, n: int) -> None:
        self.count += n


def _tally(counter, n):
    if counter is not None:
        counter.add(n)


def gcd(a: int, b: int) -> int:
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


def mod_inverse(a: int, m: int) -> int:
    if m < 1:
        raise ValueError(f"modulus must be positive, got {m}")
    try:
        return pow(a, -1, m)
    except ValueError:
        raise NotInvertible(f"{a} has no inverse modulo {m}") from None


@dataclass(frozen=True)
class FactoredModulus:
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("a modulus needs at least one prime factor")
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1 or not is_prime(p):
                raise ValueError(f"bad factor list {self.factors}")
            last = p

    @property
    def value(self) -> int:
        return math.prod(p**e for p, e in self.factors)

    def prime_powers(self) -> list[int]:
        return [p**e for p, e in self.factors]

    def __str__(self):
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


@lru_cache(maxsize=4096)
def factorize(m: int, max_trials: int = FACTOR_TRIAL_CAP) -> FactoredModulus:
    if m < 2:
        raise ValueError(f"cannot factor {m}; need m >= 2")
    factors = []
    n = m
    trials = 0
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            factors.append((d, e))
        d += 1 if d == 2 else 2
        trials += 1
        if trials > max_trials:
            raise FactorizationTooHard(
                f"no factor of the cofactor {n} of {m} found within {max_trials} trial divisions"
            )
    if n > 1:
        factors.append((n, 1))
    return FactoredModulus(tuple(factors))


def is_prime(n: int) -> bool:
    if n < 4:
        return n >= 2
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power_parts(m: int) -> tuple[int, int]:
    """Return (p, d) with m = p**d, or raise ValueError."""
    fm = factorize(m)
    if len(fm.factors) != 1:
        raise ValueError(f"{m} is not a prime power")
    return fm.factors[0]


def crt_combine(pairs: Sequence[tuple[int, int]]) -> int:
    if not pairs:
        raise ValueError("crt_combine needs at least one congruence")
    moduli = [m for _, m in pairs]
    for i, a in enumerate(moduli):
        if a < 1:
            raise ValueError(f"bad modulus {a}")
        for b in moduli[i + 1:]:
            if math.gcd(a, b) != 1:
                raise ValueError(f"moduli {a} and {b} are not coprime")
    x, acc = 0, 1
    for r, m in pairs:
        # x stays correct mod acc; pick t so x + acc*t hits r mod m
        t = ((r - x) * pow(acc, -1, m)) % m
        x += acc * t
        acc *= m
    return x % acc


def _square(a, cap=MATRIX_CAP):
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("matrix must be square")
    if n > cap:
        raise ValueError(f"matrix dimension {n} exceeds cap {cap}")
    return n


def mat_det_exact(a: Sequence[Sequence[int]], cap: int = MATRIX_CAP) -> int:
    """Exact integer determinant by fraction-free (Bareiss) elimination."""
    n = _square(a, cap)
    if n == 0:
        return 1
    m = [[int(v) for v in row] for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            lead = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class ModMatrix:
    rows: tuple[tuple[int, ...], ...]
    modulus: int

    @classmethod
    def of(cls, rows, modulus: int) -> "ModMatrix":
        if modulus < 1:
            raise ValueError(f"bad modulus {modulus}")
        reduced = tuple(tuple(int(v) % modulus for v in row) for row in rows)
        if len({len(r) for r in reduced}) > 1:
            raise ValueError("ragged matrix")
        return cls(reduced, modulus)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), (len(self.rows[0]) if self.rows else 0)

    def det(self) -> int:
        return mat_det_exact(self.rows) % self.modulus

    def apply(self, x: Sequence[int]) -> list[int]:
        return [sum(a * b for a, b in zip(row, x)) % self.modulus for row in self.rows]


def mat_mul_vec(a, x, m: int) -> list[int]:
    return [sum(u * v for u, v in zip(row, x)) % m for row in a]


def _eliminate_mod(a, b, m, counter):
    """Gauss-Jordan mod m; pivots are always units.

    When no unit sits in a column, Euclid-style row operations fold the
    column's gcd into one row first.  Those operations are unimodular, so a
    unit determinant guarantees the folded entry is a unit.
    """
    n = _square(a)
    if len(b) != n:
        raise ValueError("right-hand side length does not match the matrix")
    rows = [[v % m for v in row] + [bv % m] for row, bv in zip(a, b)]
    width = n + 1
    for col in range(n):
        piv = None
        for r in range(col, n):
            v = rows[r][col]
            if v and math.gcd(v, m) == 1:
                piv = r
                break
        if piv is None:
            while True:
                live = [r for r in range(col, n) if rows[r][col]]
                if not live:
                    raise SingularModM(f"matrix is singular modulo {m}")
                small = min(live, key=lambda r: rows[r][col])
                others = [r for r in live if r != small]
                if not others:
                    break
                for r in others:
                    q = rows[r][col] // rows[small][col]
                    src = rows[small]
                    rows[r] = [(u - q * v) % m for u, v in zip(rows[r], src)]
                    _tally(counter, width)
            piv = small
            if math.gcd(rows[piv][col], m) != 1:
                raise SingularModM(f"matrix is singular modulo {m}")
        rows[col], rows[piv] = rows[piv], rows[col]
        inv = pow(rows[col][col], -1, m)
        rows[col] = [(v * inv) % m for v in rows[col]]
        _tally(counter, width)
        prow = rows[col]
        for r in range(n):
            if r != col and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(u - f * v) % m for u, v in zip(rows[r], prow)]
                _tally(counter, width)
    return [row[n] for row in rows]


def solve_by_adjugate(a, b, m: int) -> list[int]:
    """X = det(A)^-1 adj(A) B mod m."""
    n = _square(a)
    det = mat_det_exact(a) % m
    if math.gcd(det, m) != 1:
        raise SingularModM(f"determinant {det} is not a unit modulo {m}")
    inv = pow(det, -1, m)
    x = []
    for i in range(n):
        acc = 0
        for j in range(n):
            # adj[i][j] is the (j, i) cofactor
            minor = [row[:i] + row[i + 1:] for k, row in enumerate(a) if k != j]
            cof = mat_det_exact(minor) if minor else 1
            if (i + j) % 2:
                cof = -cof
            acc += cof * b[j]
        x.append(acc * inv % m)
    return x


def mat_solve_mod(a, b: Sequence[int], m: int, counter: OpCounter | None = None,
                  cross_check: bool = True) -> list[int]:
    """Unique solution of A X = B (mod m) for A with unit determinant."""
    if isinstance(a, ModMatrix):
        a = [list(r) for r in a.rows]
    if m < 1:
        raise ValueError(f"bad modulus {m}")
    x = _eliminate_mod(a, list(b), m, counter)
    if cross_check and len(a) <= ADJUGATE_CHECK_DIM:
        y = solve_by_adjugate(a, list(b), m)
        if x != y:
            raise RuntimeError(f"elimination {x} and adjugate {y} disagree modulo {m}")
    return x


def p_valuation(a: int, p: int, cap: int) -> int:
    """Exponent of p in a, capped at `cap` (a = 0 gives cap)."""
    if a == 0:
        return cap
    v = 0
    while a % p == 0 and v < cap:
        a //= p
        v += 1
    return v


def solve_mod_prime_power(a, b, p: int, e: int, counter: OpCounter | None = None):
    """All solutions of A x = b (mod p**e) for any matrix shape.

    Returns (x0, gens): x0 is one solution and every solution is x0 plus a
    Z-combination of gens.  Returns None when the system is inconsistent.
    Pivots are chosen with least p-adic valuation over the remaining block,
    so each pivot divides every entry it has to clear.
    """
    mod = p**e
    nr = len(a)
    nc = len(a[0]) if nr else 0
    rows = [[v % mod for v in row] + [bv % mod] for row, bv in zip(a, b)]
    perm = list(range(nc))
    vals = []
    rank = 0
    while rank < min(nr, nc):
        best = None
        for r in range(rank, nr):
            row = rows[r]
            for c in range(rank, nc):
                if row[c]:
                    v = p_valuation(row[c], p, e)
                    if best is None or v < best[0]:
                        best = (v, r, c)
                        if v == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        v, r, c = best
        rows[rank], rows[r] = rows[r], rows[rank]
        if c != rank:
            for row in rows:
                row[rank], row[c] = row[c], row[rank]
            perm[rank], perm[c] = perm[c], perm[rank]
        prow = rows[rank]
        unit_inv = pow(prow[rank] // p**v, -1, mod)
        for r2 in range(rank + 1, nr):
            lead = rows[r2][rank]
            if lead:
                f = (lead // p**v) * unit_inv % mod
                rows[r2] = [(u - f * w) % mod for u, w in zip(rows[r2], prow)]
                _tally(counter, nc + 1 - rank)
        vals.append(v)
        rank += 1
    for r in range(rank, nr):
        if rows[r][nc] % mod:
            return None
    for i in range(rank):
        if rows[i][nc] % p ** vals[i]:
            return None

    def back_substitute(rhs_on, fixed):
        # fixed: permuted-index -> value for free columns and pivot lifts
        x = [0] * nc
        for j, val in fixed.items():
            x[j] = val % mod
        for i in range(rank - 1, -1, -1):
            row = rows[i]
            s = (row[nc] if rhs_on else 0) - sum(row[j] * x[j] for j in range(i + 1, nc))
            _tally(counter, nc - i)
            v = vals[i]
            unit = row[i] // p**v
            xi = (s % mod) // p**v * pow(unit, -1, mod) % mod
            x[i] = (xi + fixed.get(i, 0)) % mod
        out = [0] * nc
        for pos, col in enumerate(perm):
            out[col] = x[pos]
        return out

    x0 = back_substitute(True, {})
    gens = []
    for j in range(rank, nc):
        gens.append(back_substitute(False, {j: 1}))
    for i in range(rank):
        if vals[i] > 0:
            gens.append(back_substitute(False, {i: p ** (e - vals[i])}))
    return x0, [g for g in gens if any(g)]


def span_basis(gens, p: int, e: int):
    """Echelon generating set (at most one row per column) for the same submodule.

    Row i has pivot valuation v_i and every module element is uniquely
    sum t_i row_i with t_i in [0, p^(e - v_i)).
    """
    mod = p**e
    rows = [[v % mod for v in g] for g in gens if any(v % mod for v in g)]
    if not rows:
        return []
    nc = len(rows[0])
    out = []
    for c in range(nc):
        live = [r for r in rows if r[c]]
        if not live:
            continue
        piv = min(live, key=lambda r: p_valuation(r[c], p, e))
        v = p_valuation(piv[c], p, e)
        unit_inv = pow(piv[c] // p**v, -1, mod)
        # keep p^(e-v) * piv: it is in the module but has no entry in column c
        rest = [[(p ** (e - v) * u) % mod for u in piv]]
        for r in rows:
            if r is piv:
                continue
            if r[c]:
                f = (r[c] // p**v) * unit_inv % mod
                r = [(u - f * w) % mod for u, w in zip(r, piv)]
            if any(r):
                rest.append(r)
        out.append(piv)
        rows = [r for r in rest if any(r)]
    return out


def module_size(basis, p: int, e: int) -> int:
    """Cardinality of the submodule spanned by a `span_basis` result."""
    size = 1
    for row in basis:
        v = p_valuation(next(u for u in row if u), p, e)
        size *= p ** (e - v)
    return size


def vandermonde_matrix(nodes: Sequence[int]) -> list[list[int]]:
    n = len(nodes)
    return [[x**k for k in range(n)] for x in nodes]


def vandermonde_det(nodes: Sequence[int]) -> int:
    out = 1
    for j in range(len(nodes)):
        for i in range(j):
            out *= nodes[j] - nodes[i]
    return out


def paired_power_matrix(xs: Sequence[int], shifted: bool = False) -> list[list[int]]:
    """Power rows X^k stacked over weighted rows, one pair per node.

    Unshifted: columns k = 0..2m-1, weighted row (k+1) X^k.
    Shifted: columns k = 2..2m+1, weighted row k X^(k-1).
    """
    m = len(xs)
    if shifted:
        exps = range(2, 2 * m + 2)
        top = [[x**k for k in exps] for x in xs]
        bottom = [[k * x ** (k - 1) for k in exps] for x in xs]
    else:
        exps = range(0, 2 * m)
        top = [[x**k for k in exps] for x in xs]
        bottom = [[(k + 1) * x**k for k in exps] for x in xs]
    return top + bottom


def paired_power_det(xs: Sequence[int], shifted: bool = False) -> int:
    m = len(xs)
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    node_part = math.prod(x**4 if shifted else x for x in xs)
    return sign * node_part * vandermonde_det(xs) ** 4


def binom_block_matrix(xs: Sequence[int], n: int, l: int) -> list[list[int]]:
    m = len(xs)
    size = m * l
    out = []
    for x in xs:
        for k in range(l):
            out.append([math.comb(n + j, k) * x**j for j in range(size)])
    return out


def binom_block_det(xs: Sequence[int], n: int, l: int) -> int:
    if not (n >= l >= 1) or len(xs) < 1:
        raise ValueError(f"need n >= l >= 1 and at least one node (n={n}, l={l})")
    node_part = math.prod(x ** (l * (l - 1) // 2) for x in xs)
    return node_part * vandermonde_det(xs) ** (l * l)


def confluent_rows(node: int, order: int, width: int) -> list[list[int]]:
    """Rows k < order with entry C(j, k) node^(j-k) in column j (Taylor rows)."""
    return [[math.comb(j, k) * node ** (j - k) if j >= k else 0 for j in range(width)]
            for k in range(order)]
