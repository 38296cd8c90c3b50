import itertools
import random

import pytest
import sympy

from algebra.arith import NotPrimeError, small_primes
from algebra.matrices import IntMatrix
from algebra.polynomials import (
    IntPoly,
    ModPoly,
    ModulusMismatchError,
    NotMonicError,
    ZeroPolynomialError,
    charpoly,
    derivative,
    discriminant,
    gcd_mod_p,
    has_multiple_factor_mod_p,
    poly_of_matrix,
    reduce_mod_p,
    resultant,
    substitute_square,
    sylvester_kernel_vs_gcd,
    sylvester_matrix,
)
from graph.signed_graph import permutation_matrix
from selftest.generators import random_permutation

X = sympy.Symbol("x")


def _to_sympy(f: IntPoly) -> sympy.Poly:
    return sympy.Poly(list(reversed(f.coeffs)), X)


def _random_monic(rng, degree, bound=9):
    return IntPoly(tuple(rng.randint(-bound, bound) for _ in range(degree)) + (1,))


def test_intpoly_basics():
    f = IntPoly.from_high([1, 0, -1])
    assert f.coeffs == (-1, 0, 1)
    assert f.degree == 2 and f.is_monic
    assert IntPoly((3, 0, 0)).degree == 0
    assert IntPoly(()).is_zero
    assert f * 2 == IntPoly((-2, 0, 2))
    assert f.shift(1) == IntPoly.from_high([1, 0, -1, 0])
    assert f(3) == 8
    assert str(IntPoly.from_high([1, -3, 0, 1])) == "x^3 - 3*x^2 + 1"
    assert derivative(f) == IntPoly((0, 2))
    assert substitute_square(IntPoly.from_high([1, -3, 1])) == IntPoly.from_high([1, 0, -3, 0, 1])


def test_charpoly_small_graphs():
    k2 = IntMatrix.from_rows([[0, 1], [1, 0]])
    assert charpoly(k2) == IntPoly.from_high([1, 0, -1])
    c4 = IntMatrix.from_rows([[0, 1, 0, 1], [1, 0, 1, 0], [0, 1, 0, 1], [1, 0, 1, 0]])
    assert charpoly(c4) == IntPoly.from_high([1, 0, -4, 0, 0])
    assert charpoly(IntMatrix.zeros(0)) == IntPoly((1,))


def test_charpoly_matches_sympy():
    rng = random.Random(13)
    for _ in range(100):
        n = rng.randint(1, 7)
        m = IntMatrix.from_rows([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
        expected = [int(c) for c in sympy.Matrix(m.to_rows()).charpoly(X).all_coeffs()]
        assert charpoly(m) == IntPoly.from_high(expected)


def test_cayley_hamilton():
    m = IntMatrix.from_rows([[0, 1, -1], [1, 0, 1], [-1, 1, 0]])
    assert poly_of_matrix(charpoly(m), m) == IntMatrix.zeros(3)


def test_sylvester_matrix_of_x2_minus_1():
    f = IntPoly.from_high([1, 0, -1])
    s = sylvester_matrix(f, derivative(f))
    assert s.to_rows() == [[1, 0, -1], [2, 0, 0], [0, 2, 0]]
    assert resultant(f, derivative(f)) == -4
    assert discriminant(f) == 4


@pytest.mark.parametrize(
    "high, disc",
    [
        ([1, -3, 1], 5),
        ([1, 0, -3, 0, 1], 400),
        ([1, 0, -4, 0, 0], 0),
        ([1, 5], 1),
    ],
)
def test_discriminant_examples(high, disc):
    assert discriminant(IntPoly.from_high(high)) == disc


def test_discriminant_matches_sympy():
    rng = random.Random(17)
    for _ in range(150):
        f = _random_monic(rng, rng.randint(1, 7))
        assert discriminant(f) == int(sympy.discriminant(_to_sympy(f)))


def test_discriminant_rejects_bad_input():
    with pytest.raises(NotMonicError):
        discriminant(IntPoly.from_high([2, 1]))
    with pytest.raises(ZeroPolynomialError):
        discriminant(IntPoly(()))
    with pytest.raises(ValueError):
        discriminant(IntPoly((1,)))


def test_modpoly_arithmetic():
    a = ModPoly(5, (1, 2, 3))
    assert a.coeffs == (1, 2, 3)
    assert ModPoly(5, (6, -1)).coeffs == (1, 4)
    q, r = divmod(a, ModPoly(5, (1, 1)))
    assert q * ModPoly(5, (1, 1)) + r == a
    assert r.degree < 1
    assert a.monic().leading == 1
    with pytest.raises(ModulusMismatchError):
        a + ModPoly(7, (1,))
    with pytest.raises(ZeroDivisionError):
        divmod(a, ModPoly(5, ()))


def test_gcd_mod_p():
    f = reduce_mod_p(IntPoly.from_high([1, 0, -1]), 3)
    g = reduce_mod_p(IntPoly.from_high([1, -1]), 3)
    assert gcd_mod_p(f, g).coeffs == (2, 1)
    assert gcd_mod_p(f, ModPoly(3, ())) == f.monic()
    with pytest.raises(NotPrimeError):
        reduce_mod_p(IntPoly((1, 1)), 9)


def test_has_multiple_factor_examples():
    f = IntPoly.from_high([1, 0, -1])
    assert has_multiple_factor_mod_p(f, 2)
    assert not has_multiple_factor_mod_p(f, 3)
    # x^3 - 2 = (x + 1)^3 over F_3, derivative vanishes there
    assert has_multiple_factor_mod_p(IntPoly.from_high([1, 0, 0, -2]), 3)


def test_has_multiple_factor_matches_sympy_factorization():
    rng = random.Random(19)
    primes = small_primes(30)
    for _ in range(150):
        f = _random_monic(rng, rng.randint(1, 6))
        p = rng.choice(primes)
        _, factors = sympy.Poly(list(reversed(f.coeffs)), X, modulus=p).factor_list()
        expected = any(mult > 1 for _, mult in factors)
        assert has_multiple_factor_mod_p(f, p) == expected, (f, p)


def test_sylvester_kernel_vs_gcd():
    f = IntPoly.from_high([1, 0, -1])
    assert sylvester_kernel_vs_gcd(f, 2) == (2, 2, True)
    assert sylvester_kernel_vs_gcd(f, 5) == (0, 0, True)
    # leading coefficient of f' vanishes mod 3
    assert sylvester_kernel_vs_gcd(IntPoly.from_high([1, 0, -1, 0]), 3) == (0, 0, True)


def test_sylvester_kernel_agrees_when_prime_exceeds_degree():
    rng = random.Random(23)
    for _ in range(100):
        f = _random_monic(rng, rng.randint(1, 6))
        p = rng.choice([7, 11, 13])
        assert sylvester_kernel_vs_gcd(f, p).agree


def test_charpoly_invariant_under_permutation_similarity():
    rng = random.Random(19)
    for _ in range(60):
        n = rng.randint(1, 7)
        m = IntMatrix.from_rows([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
        p = permutation_matrix(random_permutation(rng, n))
        assert charpoly(p.T @ m @ p) == charpoly(m)


def test_discriminant_quadratic_closed_form():
    for b, c in itertools.product(range(-5, 6), repeat=2):
        assert discriminant(IntPoly.from_high([1, b, c])) == b * b - 4 * c


def test_discriminant_cubic_closed_form():
    for b, c, d in itertools.product(range(-5, 6), repeat=3):
        expected = b * b * c * c - 4 * c**3 - 4 * b**3 * d - 27 * d * d + 18 * b * c * d
        assert discriminant(IntPoly.from_high([1, b, c, d])) == expected
    # depressed form x^3 + p x + q
    for p, q in itertools.product(range(-5, 6), repeat=2):
        assert discriminant(IntPoly.from_high([1, 0, p, q])) == -4 * p**3 - 27 * q * q
