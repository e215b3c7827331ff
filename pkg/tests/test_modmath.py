import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from permpoly.errors import FactorizationTooHard, NotInvertible, SingularModM
from permpoly.modmath import (FactoredModulus, ModMatrix, binom_block_det, binom_block_matrix, crt_combine,
                              factorize, gcd, mat_det_exact, mat_mul_vec, mat_solve_mod, mod_inverse,
                              module_size, paired_power_det, paired_power_matrix, solve_mod_prime_power,
                              span_basis, vandermonde_det, vandermonde_matrix)


@pytest.mark.parametrize("a,b,want", [(0, 7, 7), (12, 8, 4), (29, 36, 1)])
def test_gcd_examples(a, b, want):
    assert gcd(a, b) == want


def test_gcd_rejects_double_zero():
    with pytest.raises(ValueError):
        gcd(0, 0)


@given(st.integers(0, 500), st.integers(1, 500))
def test_gcd_is_greatest_common_divisor(a, b):
    g = gcd(a, b)
    assert a % g == 0 and b % g == 0
    for c in range(1, min(a, b) + 1):
        if a % c == 0 and b % c == 0:
            assert g % c == 0


def test_mod_inverse_examples():
    assert mod_inverse(1, 5) == 1
    assert mod_inverse(3, 7) == 5
    with pytest.raises(NotInvertible):
        mod_inverse(2, 4)


@pytest.mark.parametrize("m,factors", [(36, ((2, 2), (3, 2))), (128, ((2, 7),)), (97, ((97, 1),))])
def test_factorize_examples(m, factors):
    fm = factorize(m)
    assert fm.factors == factors
    assert fm.value == m


def test_factorize_rejects_small_and_caps_work():
    with pytest.raises(ValueError):
        factorize(1)
    with pytest.raises(FactorizationTooHard):
        factorize(1_000_003 * 1_000_033, max_trials=1000)


def test_factored_modulus_validates():
    with pytest.raises(ValueError):
        FactoredModulus(((3, 1), (2, 1)))
    with pytest.raises(ValueError):
        FactoredModulus(((4, 1),))


@given(st.integers(2, 10**6))
def test_factorize_multiplies_back(m):
    fm = factorize(m)
    assert math.prod(p**e for p, e in fm.factors) == m


def test_crt_examples():
    assert crt_combine([(1, 4), (2, 9)]) == 29 == oracles.crt_scan([(1, 4), (2, 9)])
    assert crt_combine([(0, 4), (0, 9)]) == 0
    assert crt_combine([(3, 4)]) == 3
    with pytest.raises(ValueError):
        crt_combine([(1, 4), (1, 6)])


@given(st.lists(st.sampled_from([3, 4, 5, 7, 11, 13]), min_size=1, max_size=4, unique=True), st.data())
def test_crt_reproduces_residues(mods, data):
    pairs = [(data.draw(st.integers(0, q - 1)), q) for q in mods]
    x = crt_combine(pairs)
    assert 0 <= x < math.prod(mods)
    assert all(x % q == r for r, q in pairs)


def test_det_examples():
    assert mat_det_exact([[1, 0], [0, 1]]) == 1
    assert mat_det_exact([[1, 0], [1, 1]]) == 1
    assert mat_det_exact(vandermonde_matrix([0, 1, 2, 3])) == 12
    with pytest.raises(ValueError):
        mat_det_exact([[1, 2, 3], [4, 5, 6]])


@settings(max_examples=60)
@given(st.lists(st.lists(st.integers(-9, 9), min_size=4, max_size=4), min_size=4, max_size=4))
def test_det_matches_rational_elimination(rows):
    assert mat_det_exact(rows) == oracles.det(rows)


def test_vandermonde_examples():
    assert vandermonde_det([0, 1]) == 1
    assert vandermonde_det([0, 1, 2]) == 2
    assert vandermonde_det([0, 1, 2, 3, 4]) == 288 == oracles.det(vandermonde_matrix(range(5)))


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=6, unique=True))
def test_vandermonde_closed_form_matches_matrix(nodes):
    assert vandermonde_det(nodes) == oracles.det(vandermonde_matrix(nodes))


def test_paired_power_examples():
    assert paired_power_det([2]) == 2
    assert paired_power_det([1, 2]) == -2 == oracles.det(paired_power_matrix([1, 2]))
    assert paired_power_det([1, 3]) == -48 == oracles.det(paired_power_matrix([1, 3]))


def test_binom_block_examples():
    assert binom_block_det([5], 3, 1) == 1
    assert binom_block_det([1, 2], 1, 1) == 1 == oracles.det(binom_block_matrix([1, 2], 1, 1))
    assert binom_block_det([1, 2], 2, 2) == 2 == oracles.det(binom_block_matrix([1, 2], 2, 2))
    with pytest.raises(ValueError):
        binom_block_det([1, 2], 1, 2)


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=3), st.booleans())
def test_paired_power_closed_form_matches_matrix(nodes, shifted):
    assert paired_power_det(nodes, shifted) == oracles.det(paired_power_matrix(nodes, shifted))


@given(st.lists(st.integers(-5, 5), min_size=1, max_size=3), st.integers(1, 3), st.integers(0, 3))
def test_binom_block_closed_form_matches_matrix(nodes, l, extra):
    n = l + extra
    assert binom_block_det(nodes, n, l) == oracles.det(binom_block_matrix(nodes, n, l))


def test_solve_examples():
    assert mat_solve_mod([[1, 0], [1, 1]], [1, 2], 5) == [1, 1]
    assert mat_solve_mod([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [4, 5, 6], 7) == [4, 5, 6]
    # Vandermonde system on nodes 0..2 mod 9 with zero right side
    assert mat_solve_mod(vandermonde_matrix([0, 1, 2]), [0, 0, 0], 9) == [0, 0, 0]


def test_solve_rejects_singular():
    with pytest.raises(SingularModM):
        mat_solve_mod([[2, 0], [0, 1]], [1, 1], 4)


@settings(max_examples=80)
@given(st.sampled_from([5, 7, 8, 9, 12, 25]), st.integers(1, 3), st.data())
def test_solve_is_the_unique_solution(m, dim, data):
    rows = data.draw(st.lists(st.lists(st.integers(0, m - 1), min_size=dim, max_size=dim),
                              min_size=dim, max_size=dim))
    b = data.draw(st.lists(st.integers(0, m - 1), min_size=dim, max_size=dim))
    if math.gcd(oracles.det(rows) % m, m) != 1:
        with pytest.raises(SingularModM):
            mat_solve_mod(rows, b, m)
        return
    x = mat_solve_mod(rows, b, m)
    assert mat_mul_vec(rows, x, m) == [v % m for v in b]
    if m**dim <= 20_000:
        hits = [list(t) for t in itertools.product(range(m), repeat=dim) if mat_mul_vec(rows, t, m) == b]
        assert hits == [x]


def test_mod_matrix_entries_in_range():
    a = ModMatrix.of([[5, -1], [7, 2]], 4)
    assert a.rows == ((1, 3), (3, 2))
    assert a.det() == (1 * 2 - 3 * 3) % 4


@settings(max_examples=60)
@given(st.sampled_from([(2, 3), (3, 2), (2, 4)]), st.integers(1, 3), st.integers(1, 3), st.data())
def test_prime_power_solver_finds_every_solution(pe, nr, nc, data):
    p, e = pe
    q = p**e
    a = data.draw(st.lists(st.lists(st.integers(0, q - 1), min_size=nc, max_size=nc), min_size=nr, max_size=nr))
    b = data.draw(st.lists(st.integers(0, q - 1), min_size=nr, max_size=nr))
    brute = {t for t in itertools.product(range(q), repeat=nc) if mat_mul_vec(a, t, q) == b}
    sol = solve_mod_prime_power(a, b, p, e)
    if sol is None:
        assert not brute
        return
    x0, gens = sol
    assert tuple(x0) in brute
    basis = span_basis(gens, p, e)
    assert module_size(basis, p, e) == len(brute)
    # every brute-force solution differs from x0 by a module element
    reach = {tuple(x0)}
    frontier = [tuple(x0)]
    while frontier:
        v = frontier.pop()
        for g in basis:
            w = tuple((u + s) % q for u, s in zip(v, g))
            if w not in reach:
                reach.add(w)
                frontier.append(w)
    assert reach == brute
