import random

import pytest

from slice_clifford.clifford_core import DimensionError, Multivector, conjugate
from slice_clifford.exact_scalar import C, PI, ExactScalar, Rational
from slice_clifford.hermite import A, hermite_function
from slice_clifford.inner_product import (
    beta_closed_form, beta_inner, beta_scan, check_hermitian, check_orthogonality,
    check_selfadjoint, gram_matrix, inner, psi, random_dressed, regular_monomials,
    sphere_integral,
)
from slice_clifford.operators import apply_D0, apply_X
from slice_clifford.slice_model import R, DressedFunction, SliceCoeff, SlicePoly

QUARTER = Rational(1, 4)


def scalar(m, value):
    return Multivector.scalar(m + 1, value)


def test_sphere_integral_examples():
    assert sphere_integral(SliceCoeff(1), 2).scalar_part == 2 * PI
    p = sphere_integral(SliceCoeff.basis(2), 2)
    assert p.scalar_part.is_zero() and p.e0_part.is_zero()
    assert sphere_integral(SliceCoeff.basis(3), 5).e0_part.is_zero()
    assert sphere_integral(SliceCoeff(0, 1), 3).e0_part == 4 * PI


def test_inner_examples():
    assert inner(psi(0, 0), psi(0, 0), 2) == scalar(2, 4 * C * PI ** 2)
    assert inner(psi(0, 0), psi(0, 1), 2).is_zero()
    assert inner(psi(2, 0), psi(2, 0), 2) == scalar(2, 16 * C ** 3 * PI ** 2)


def test_inner_errors():
    with pytest.raises(ValueError):
        inner(DressedFunction(R), DressedFunction(R), 2)
    a = Multivector.generator(5, 1)
    with pytest.raises(DimensionError):
        inner(psi(0, 0).times_right(a), psi(0, 0), 2)
    with pytest.raises(ValueError):
        inner(psi(0, 0), psi(0, 0), 0)


def test_odd_m_keeps_half_pi_powers_exact():
    assert inner(psi(0, 0), psi(0, 0), 3) == scalar(3, A(0, 0, 3))
    assert A(0, 0, 5) == 4 * C * ExactScalar.pi(Rational(7, 2)) / (Rational(3, 4) * ExactScalar.pi(Rational(1, 2)))
    assert A(0, 0, 5) == Rational(16, 3) * C * PI ** 3


def test_selfadjoint_examples():
    f = g = psi(0, 0)
    assert inner(apply_D0(f), g, 2).is_zero() and inner(f, apply_D0(g), 2).is_zero()
    f = psi(1, 0)
    assert inner(apply_D0(f), f, 2) == inner(f, apply_D0(f), 2)
    f = DressedFunction(R * psi(0, 0).poly, QUARTER)
    g = psi(0, 0)
    assert inner(apply_X(f), g, 2) == -inner(f, apply_X(g), 2)


def test_axis_discontinuous_monomials_break_symmetry():
    # w has no limit on r = 0, so the boundary term survives
    f = DressedFunction(SlicePoly.constant(SliceCoeff.basis(2)), QUARTER)
    g = DressedFunction(SlicePoly.constant(1), QUARTER)
    lhs = inner(apply_D0(f), g, 2)
    rhs = inner(f, apply_D0(g), 2)
    assert lhs == -rhs and not lhs.is_zero()
    assert all(not (p.degree() == 0 and p.terms()[(0, 0)][2]) for p in regular_monomials(2))


def test_selfadjoint_small_sweep():
    assert check_selfadjoint(2, 2, 2, 2).passed
    assert check_selfadjoint(2, 1, 3, 1).passed


def test_beta_examples():
    assert beta_inner(4, 2).is_zero()
    assert beta_inner(2, 2) == C ** 2 * PI ** 2
    assert beta_inner(8, 2) == -8 * C ** 2 * PI ** 2
    for lam in (1, Rational(3, 2), 5):
        assert beta_inner(lam, 3) == beta_closed_form(lam, 3)
    rows, report = beta_scan(range(1, 9), 2)
    assert report.passed and [r.is_zero for r in rows] == [lam == 4 for lam in range(1, 9)]


def test_gram_examples():
    gram = gram_matrix(1, 1, 2)
    assert gram.report.passed
    assert gram.cell((0, 0), (0, 0)) == "4*c*pi^2"
    assert gram.cell((1, 0), (1, 0)) == "8*c^2*pi^2"
    assert gram.cell((0, 0), (1, 0)) == "0"


def test_gram_with_right_constants():
    a1 = Multivector.generator(3, 1) + 2
    a2 = Multivector.blade(3, (0, 2))
    gram = gram_matrix(2, 1, 2, a1, a2)
    assert gram.report.passed
    want = conjugate(a1) * scalar(2, A(2, 1, 2)) * a2
    assert gram.entries[((2, 1), (2, 1))] == want


def test_gram_detects_wrong_normalization():
    # psi with a doubled right constant must fail the unit-constant diagonal
    gram = gram_matrix(0, 0, 2)
    value = gram.entries[((0, 0), (0, 0))]
    assert value * 2 != scalar(2, A(0, 0, 2))


def test_orthogonality_small():
    report = check_orthogonality(2, 2, (2, 3), (2, 4))
    assert report.passed and report.details["diagonal"][3]["0,0"] == str(A(0, 0, 3))


def test_hermitian_and_right_linear():
    assert check_hermitian(2, n_pairs=10).passed
    assert check_hermitian(3, n_pairs=5, seed=3).passed


def test_positive_diagonal():
    rng = random.Random(11)
    for _ in range(10):
        f = random_dressed(rng)
        assert inner(f, f, 2).coeff(()).evaluate(1.0) > 0
