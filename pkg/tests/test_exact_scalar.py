import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from slice_clifford.exact_scalar import (
    C, ONE, PI, ZERO, ExactScalar, Rational, as_rational, exact_sum, gamma_half,
    gaussian_moment, rate_power, squarefree_split,
)


def scalars():
    terms = st.dictionaries(
        st.tuples(st.integers(-4, 6), st.integers(-2, 4), st.sampled_from([1, 2, 3, 6])),
        st.fractions(min_value=-5, max_value=5, max_denominator=7), max_size=4)
    return terms.map(lambda d: ExactScalar({k: Rational(v.numerator, v.denominator) for k, v in d.items()}))


def test_rational_is_lowest_terms():
    q = as_rational("6/8")
    assert (q.numerator, q.denominator) == (3, 4)
    assert as_rational(Fraction(-2, 4)) == Rational(-1, 2)
    with pytest.raises(TypeError):
        as_rational(0.5)


def test_normalized_form_drops_zero():
    x = C - C
    assert x.is_zero() and x == ZERO and not x.terms
    assert ExactScalar({(0, 0, 1): 0}).terms == {}


def test_single_key_roundtrips_to_rational():
    x = ExactScalar.rational(Rational(7, 3))
    assert x.is_rational() and x.to_rational() == Rational(7, 3)
    with pytest.raises(ValueError):
        C.to_rational()


@pytest.mark.parametrize("z,want", [
    (1, ONE), (Rational(1, 2), ExactScalar.pi(Rational(1, 2))),
    (Rational(5, 2), Rational(3, 4) * ExactScalar.pi(Rational(1, 2))),
    (4, ExactScalar.rational(6)),
])
def test_gamma_half(z, want):
    assert gamma_half(z) == want
    assert math.isclose(gamma_half(z).evaluate(1.0), math.gamma(float(z)), rel_tol=1e-14)


@pytest.mark.parametrize("z", [0, -1, Rational(1, 3), Rational(-1, 2)])
def test_gamma_half_rejects(z):
    with pytest.raises(ValueError):
        gamma_half(z)


def test_gaussian_moment_examples():
    assert gaussian_moment(1, 0, 1) == ZERO
    assert gaussian_moment(0, 0, Rational(1, 2)) == C * PI
    want = ExactScalar.sqrt(2) * ExactScalar.pi(Rational(1, 2)) * ExactScalar.c(Rational(5, 2))
    assert gaussian_moment(2, 1, Rational(1, 2)) == want
    assert math.isclose(want.evaluate(1.0), _quad_moment(2, 1, 0.5), rel_tol=1e-10)
    assert math.isclose(want.evaluate(1.0), math.sqrt(2 * math.pi), rel_tol=1e-14)
    assert str(want) == "sqrt(2)*c^(5/2)*pi^(1/2)"


def test_gaussian_moment_rejects_divergent():
    with pytest.raises(ValueError):
        gaussian_moment(0, 0, 0)
    with pytest.raises(ValueError):
        gaussian_moment(0, 0, -1)


@pytest.mark.parametrize("a,b", [(a, b) for a in range(0, 9, 2) for b in range(0, 9 - a)])
def test_gaussian_moment_rate_scaling(a, b):
    base = None
    for rho in (Rational(1, 4), Rational(1, 2), 1, 2):
        scaled = gaussian_moment(a, b, rho) * rate_power(rho, -(a + b + 2))
        base = scaled if base is None else base
        assert scaled == base


def _quad_moment(a, b, rho, c=1.0, n=200):
    # Gauss-Legendre on a wide box, independent of gamma functions
    t, w = np.polynomial.legendre.leggauss(n)
    L = 14 * math.sqrt(c / rho)
    x, wx = L * t, L * w
    r, wr = L * (t + 1) / 2, L * w / 2
    fx = np.sum(wx * x ** a * np.exp(-rho * x ** 2 / c))
    fr = np.sum(wr * r ** b * np.exp(-rho * r ** 2 / c))
    return float(fx * fr)


@pytest.mark.parametrize("a,b", [(a, b) for a in range(0, 9, 2) for b in range(0, 9 - a)])
def test_gaussian_moment_matches_quadrature(a, b):
    exact = gaussian_moment(a, b, Rational(1, 2)).evaluate(1.0)
    assert abs(exact - _quad_moment(a, b, 0.5)) / max(1.0, abs(exact)) < 1e-10


def test_rendering():
    assert str(16 * C ** 3 * PI ** 2) == "16*c^3*pi^2"
    assert str(gamma_half(Rational(5, 2))) == "3/4*pi^(1/2)"
    assert str(C - 1) == "-1 + c"
    assert str(ZERO) == "0"


def test_json_roundtrip_sorted():
    x = 3 * C ** 2 - Rational(1, 2) * PI + ExactScalar.sqrt(Rational(1, 2))
    data = x.to_json()
    keys = [(t["c2"], t["pi2"]) for t in data["terms"]]
    assert keys == sorted(keys)
    assert ExactScalar.from_json(data) == x


def test_sqrt_of_rational():
    assert ExactScalar.sqrt(8) == 2 * ExactScalar.sqrt(2)
    assert ExactScalar.sqrt(Rational(1, 2)) * ExactScalar.sqrt(2) == ONE
    assert squarefree_split(72) == (6, 2)


def test_inverse_only_for_monomials():
    x = 4 * C * PI
    assert x * x.inverse() == ONE
    with pytest.raises(ZeroDivisionError):
        (C + 1).inverse()


def test_exact_sum_and_substitution():
    assert exact_sum([C, C, ONE]) == 2 * C + 1
    assert (C ** 2 + C).substitute_c(3) == ExactScalar.rational(12)


def test_factorials_exceed_64_bits():
    big = ExactScalar.rational(math.factorial(25)) * math.factorial(25)
    assert big.to_rational() == math.factorial(25) ** 2


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars(), scalars())
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
