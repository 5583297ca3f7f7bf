import pytest

from slice_clifford.exact_scalar import C, PI, ExactScalar, Rational
from slice_clifford.hermite import (
    A, B, C_const, HermiteConstants, check_commutant, check_kernel, check_ladder,
    check_laguerre, check_listed_table, check_lowering, check_ode, check_oscillator,
    check_parity, check_rodrigues, hermite_function, hermite_poly, h_from_laguerre,
    laguerre_coefficients, laguerre_form, ladder_down, ladder_up, monogenic, rodrigues,
    sphere_area, verify_hermite, x_power,
)
from slice_clifford.operators import apply_D0, apply_normsq, apply_X
from slice_clifford.slice_model import NORM_SQ, R, X, X0, DressedFunction, SliceCoeff, SlicePoly

ONE, E0, W, WE0 = (SliceCoeff.basis(i) for i in range(4))


def const(s):
    return SlicePoly.constant(s)


def test_monogenic_examples():
    assert monogenic(0) == const(SliceCoeff(-1, 1))
    want = X0 * const(E0) - X0 - R * const(W) - R * const(WE0)
    assert monogenic(1) == want
    with pytest.raises(ValueError):
        monogenic(-1)


@pytest.mark.parametrize("k", range(7))
def test_h2_closed_form(k):
    h2 = -NORM_SQ + 2 * C * (k + 1)
    assert hermite_poly(2, k).poly == h2 * monogenic(k)


def test_h4_constant_term():
    h = h_from_laguerre(4, 0)
    assert h.coeff(0, 0) == SliceCoeff(8 * C ** 2)


def test_hermite_j0_is_monogenic():
    for k in range(5):
        assert hermite_poly(0, k).poly == monogenic(k)


def test_laguerre_examples():
    assert h_from_laguerre(2, 1) == 4 * C - NORM_SQ
    assert h_from_laguerre(2, 1) == x_power(2) + 4 * C
    assert h_from_laguerre(3, 0) == x_power(3) + X.scale(4 * C)
    assert h_from_laguerre(0, 5) == SlicePoly.constant(1)
    assert laguerre_coefficients(2, 0) == [1, -2, Rational(1, 2)]
    with pytest.raises(ValueError):
        laguerre_form(2, 1, via="series")


def test_constants():
    assert (B(4, 3), B(5, 3)) == (ExactScalar.rational(3), ExactScalar.rational(-4))
    assert C_const(2, 0) == ExactScalar.rational(-2)
    assert C_const(1, 1) == ExactScalar.rational(-4)
    assert C_const(0, 7).is_zero()
    assert A(0, 0, 2) == 4 * C * PI ** 2
    assert A(2, 0, 2) == 16 * C ** 3 * PI ** 2
    assert A(1, 0, 2) == 8 * C ** 2 * PI ** 2
    hc = HermiteConstants.of(3, 1, 3)
    assert hc.C == ExactScalar.rational(-6) and hc.B == ExactScalar.rational(-2)


def test_sphere_area():
    assert sphere_area(2) == 2 * PI
    assert sphere_area(3) == 4 * PI
    assert sphere_area(1) == ExactScalar.rational(2)


def test_lowering_examples():
    assert apply_D0(hermite_poly(2, 0).value).poly == hermite_poly(1, 0).poly.scale(-2)
    assert apply_D0(hermite_poly(1, 3).value).poly == hermite_poly(0, 3).poly.scale(-8)
    assert check_lowering(0, 4).passed


@pytest.mark.parametrize("j,k", [(2, 0), (1, 1), (0, 3), (7, 2)])
def test_ode_examples(j, k):
    assert check_ode(j, k).passed


def test_rodrigues_examples():
    assert rodrigues(2, 0, 2).poly == (x_power(2) + 2 * C) * monogenic(0)
    for lam in (2, 4, 8, Rational(1, 3)):
        assert rodrigues(0, 3, lam).poly == monogenic(3)
        assert rodrigues(3, 1, lam).poly == hermite_poly(3, 1).poly
    with pytest.raises(ValueError):
        rodrigues(1, 0, 0)


def test_function_rate():
    psi = hermite_function(2, 1)
    assert psi.value.rate == Rational(1, 4) and psi.poly == hermite_poly(2, 1).poly


def test_oscillator_eigenvalues():
    for j, k in [(0, 0), (1, 2)]:
        psi = hermite_function(j, k).value
        lhs = apply_D0(apply_D0(psi)).scale(C) + apply_normsq(psi).scale(ExactScalar.c(-1) / 4)
        assert lhs.poly == psi.poly.scale(j + k + 1)
    assert check_oscillator(3, 4).passed


@pytest.mark.parametrize("k", range(9))
def test_lowering_kills_ground_state(k):
    assert ladder_down(hermite_function(0, k).value).is_zero()


def test_ladder_j1():
    for k in range(4):
        got = ladder_down(hermite_function(1, k).value)
        assert got.poly == hermite_function(0, k).poly.scale(2 * C * (k + 1))
        assert ladder_up(hermite_function(0, k).value).poly == hermite_function(1, k).poly
    assert check_ladder(4, 2).passed


def test_wrong_constant_is_caught():
    # the ODE with C(j,k)+1 must fail
    H = hermite_poly(3, 1).value
    d0h = apply_D0(H)
    bad = apply_D0(d0h).scale(C) - apply_X(d0h) + H.scale(C_const(3, 1) + 1)
    assert not bad.is_zero()


def test_degree_and_parity():
    report = check_parity(8, 4)
    assert report.passed
    assert hermite_poly(5, 3).poly.degree() == 8


def test_pieces_pass():
    for report in (check_listed_table(3), check_laguerre(6, 3), check_commutant(4),
                   check_rodrigues(3, 2), check_kernel(5)):
        assert report.passed, report.failures


def test_verify_hermite_small():
    report = verify_hermite(j_max=3, k_max=2, laguerre_j=4, laguerre_k=2, rodrigues_j=2,
                            rodrigues_k=1, kernel_k=2)
    assert report.passed and set(report.details["parts"]) >= {"lowering", "ode", "kernel"}
