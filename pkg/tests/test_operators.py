import pytest

from slice_clifford.exact_scalar import C, ExactScalar, Rational
from slice_clifford.hermite import monogenic
from slice_clifford.linalg import bareiss_echelon, nullspace, rank
from slice_clifford.operators import (
    OD, OE, OI, OSP_RELATIONS, OX, Op, OperatorTag, anticommutator, apply, apply_D0,
    apply_euler, apply_euler_m, apply_normsq, apply_slice_laplacian, apply_X,
    apply_x0_partial, check_identity, check_osp_relations, check_power_identities,
    d0_matrix, kernel_basis,
)
from slice_clifford.reports import Report
from slice_clifford.slice_model import (
    NORM_SQ, R, X, X0, DressedFunction, SliceCoeff, SlicePoly, basis_monomials,
)

ONE, E0, W, WE0 = (SliceCoeff.basis(i) for i in range(4))
G = Rational(1, 4)


def const(s=1):
    return DressedFunction(SlicePoly.constant(s))


def test_apply_x_examples():
    assert apply_X(const()).poly == X
    assert apply_X(apply_X(const())).poly == -NORM_SQ
    want = -R - X0 * SlicePoly.constant(WE0)
    assert apply_X(const(W)).poly == want


def test_apply_d0_examples():
    assert apply_D0(const(SliceCoeff(3, 1, 2, 5))).is_zero()
    for k in range(13):
        assert apply_D0(monogenic(k)).is_zero()
    gauss = DressedFunction(SlicePoly.constant(1), G)
    assert apply_D0(gauss).poly == X.scale(ExactScalar.c(-1) * Rational(-1, 2))


def test_euler_laplacian_normsq_examples():
    assert apply_euler(SlicePoly.monomial(2, 1)).poly == SlicePoly.monomial(2, 1, 3)
    assert apply_slice_laplacian(NORM_SQ).poly == SlicePoly.constant(4)
    assert apply_normsq(const()).poly == NORM_SQ
    assert apply_euler_m(SlicePoly.monomial(2, 3)).poly == SlicePoly.monomial(2, 3, 3)
    assert apply_x0_partial(SlicePoly.monomial(2, 3)).poly == SlicePoly.monomial(1, 3, 2)


def test_chain_rule_guard():
    f = DressedFunction(R, G)
    for op in (apply_euler, apply_euler_m, apply_x0_partial, apply_slice_laplacian):
        with pytest.raises(ValueError):
            op(f)
        assert op(f, dressed=True).rate == G
    assert OperatorTag.EULER.needs_chain_rule and not OperatorTag.D0.needs_chain_rule


@pytest.mark.parametrize("tag", list(OperatorTag))
def test_closure_keeps_rate(tag):
    for p in basis_monomials(3):
        for rho in (0, G):
            out = apply(tag, DressedFunction(p, rho), dressed=True)
            assert isinstance(out, DressedFunction) and out.rate == rho


def test_dressed_euler_is_chain_rule():
    # E(p g) / g where g = exp(-rho |x|^2 / c): x0 d/dx0 (x0 g) = x0 g - 2 rho x0^3/c g
    f = DressedFunction(X0, G)
    want = X0 - (X0 * NORM_SQ).scale(ExactScalar.c(-1) * 2 * G)
    assert apply_euler(f, dressed=True).poly == want


def test_osp_examples():
    report = Report("t")
    check_identity("{x,D0}", anticommutator(OX, OD), -2 * (OE + 1), [const()], report)
    assert report.passed and report.checks == 1
    r_fn = DressedFunction(R)
    lhs = (OE + 1).apply(apply_X(r_fn))
    assert lhs.poly == apply_X(r_fn).poly.scale(3)


def test_osp_relation_labels():
    assert [label for label, _, _ in OSP_RELATIONS] == [
        "{x,x}", "{D0,D0}", "{x,D0}", "[E+1,D0]", "[|x|^2,D0]", "[E+1,x]", "[L,x]", "[E+1,L]", "[L,|x|^2]", "[E+1,|x|^2]"]


def test_osp_sweep_small():
    report = check_osp_relations(4, (0, G), dressed=True)
    assert report.passed
    assert all(v["checked"] == 2 * 4 * 15 for v in report.details["relations"].values())


def test_osp_bare_sweep_skips_dressed_chain():
    report = check_osp_relations(3, (0, G), dressed=False)
    assert report.passed
    assert report.details["relations"]["{x,D0}"]["checked"] == 40
    assert report.details["relations"]["{x,x}"]["checked"] == 80


def test_broken_relation_is_caught():
    report = Report("t")
    inputs = [DressedFunction(p) for p in basis_monomials(2)]
    check_identity("bad", anticommutator(OX, OD), -2 * OE, inputs, report)
    assert not report.passed
    assert report.failures[0]["case"]["relation"] == "bad"


def test_power_identities_examples():
    x2 = apply_X(apply_X(const()))
    assert apply_D0(x2).poly == X.scale(-2)
    x3 = apply_X(x2)
    assert apply_D0(x3).poly == x2.poly.scale(-4)
    assert apply_euler(x2).poly == x2.poly.scale(2)
    assert check_power_identities(2, 4).passed


def test_op_algebra():
    a = (OX - OD * C) ** 2
    f = DressedFunction(SlicePoly.monomial(1, 2, E0))
    step = apply_X(f) - apply_D0(f).scale(C)
    twice = apply_X(step) - apply_D0(step).scale(C)
    assert a.apply(f).poly == twice.poly
    assert (Op() + OX - OX).apply(f).is_zero()
    assert OI.apply(f).poly == f.poly


def test_kernel_dimension_and_generators():
    assert len(kernel_basis(0)) == 4
    assert len(kernel_basis(1)) == 4
    m = d0_matrix(3)
    assert len(m[0]) == 16 and rank(m) == 12


def test_m0_is_invertible():
    inv = SlicePoly.constant(SliceCoeff(Rational(-1, 2), Rational(-1, 2)))
    assert monogenic(0) * inv == SlicePoly.constant(1)


def test_bareiss_and_nullspace():
    m = [[2, 4, 6], [1, 2, 3], [0, 1, 1]]
    rows, pivots = bareiss_echelon(m)
    assert pivots == [0, 1] and rank(m) == 2
    (v,) = nullspace(m)
    assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in m)
    assert len(nullspace([], 3)) == 3
    assert rank([[Rational(1, 2), Rational(1, 3)], [3, 2]]) == 1
