"""Slice-monogenic generators and Clifford-Hermite polynomials and functions.

``H_j(m_k) = (x - c D0)**j m_k`` with ``m_k = (e0 - 1)(x0 + r w)**k``; the
right constant of ``m_k`` is fixed to 1 here because ``x - c D0`` commutes
with right multiplication. ``psi_{j,k}`` is ``H_j(m_k)`` dressed with the
Gaussian ``exp(-|x|^2 / 4c)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache, partial
from math import comb, factorial

from .exact_scalar import C, ExactScalar, Rational, as_rational, gamma_half
from .linalg import rank
from .operators import (
    OD, OE, OX, Op, apply_D0, apply_X, apply_euler, apply_normsq, check_identity,
    commutator, coordinates, kernel_basis,
)
from .reports import Report
from .slice_model import (
    NORM_SQ, PARAVECTOR, X, DressedFunction, SliceCoeff, SlicePoly, basis_monomials,
)

FUNCTION_RATE = Rational(1, 4)


def B(j: int, k: int) -> ExactScalar:
    """Eigenvalue of ``E + x D0`` on ``H_j(m_k)``."""
    return ExactScalar.rational(k if j % 2 == 0 else -(k + 1))


def C_const(j: int, k: int) -> ExactScalar:
    """Constant of the second-order equation; ``D0 H_j = C(j,k) H_{j-1}``."""
    t = j // 2
    return ExactScalar.rational(-2 * t if j % 2 == 0 else -2 * (k + t + 1))


def sphere_area(m: int) -> ExactScalar:
    """``2 pi**(m/2) / Gamma(m/2)``, the area of the unit sphere in ``R^m``."""
    if m < 1:
        raise ValueError("m must be at least 1")
    return 2 * ExactScalar.pi(Rational(m, 2)) / gamma_half(Rational(m, 2))


def A(j: int, k: int, m: int) -> ExactScalar:
    """Squared norm of ``psi_{j,k}`` with both right constants equal to 1."""
    t = j // 2
    if j % 2 == 0:
        value = 2 * factorial(t) * factorial(k + t) * (2 * C) ** (2 * t + k + 1)
    else:
        value = 2 * factorial(t) * factorial(k + t + 1) * (2 * C) ** (2 * t + k + 2)
    return value * ExactScalar.pi(Rational(m, 2) + 1) / gamma_half(Rational(m, 2))


@dataclass(frozen=True)
class HermiteConstants:
    B: ExactScalar
    C: ExactScalar
    A: ExactScalar

    @classmethod
    def of(cls, j: int, k: int, m: int) -> "HermiteConstants":
        return cls(B(j, k), C_const(j, k), A(j, k, m))


@dataclass(frozen=True)
class HermiteElement:
    j: int
    k: int
    value: DressedFunction

    @property
    def poly(self) -> SlicePoly:
        return self.value.poly


@lru_cache(maxsize=None)
def monogenic(k: int) -> SlicePoly:
    """``(e0 - 1)(x0 + r w)**k``, expanded."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = SlicePoly.constant(SliceCoeff(-1, 1))
    for _ in range(k):
        out = out * PARAVECTOR
    return out


def raise_op(f: DressedFunction) -> DressedFunction:
    """``(x - c D0) f``."""
    return apply_X(f) - apply_D0(f).scale(C)


@lru_cache(maxsize=None)
def _hermite_chain(k: int, j: int) -> SlicePoly:
    if j == 0:
        return monogenic(k)
    return raise_op(DressedFunction(_hermite_chain(k, j - 1))).poly


def hermite_poly(j: int, k: int) -> HermiteElement:
    """``H_j(m_k)`` generated by repeated application of ``x - c D0``."""
    if j < 0 or k < 0:
        raise ValueError("j and k must be nonnegative")
    return HermiteElement(j, k, DressedFunction(_hermite_chain(k, j)))


def hermite_function(j: int, k: int) -> HermiteElement:
    """``psi_{j,k} = H_j(m_k) exp(-|x|^2 / 4c)``."""
    return HermiteElement(j, k, DressedFunction(_hermite_chain(k, j), FUNCTION_RATE))


@lru_cache(maxsize=None)
def x_power(n: int) -> SlicePoly:
    """``x**n`` as a slice polynomial (``x**2 = -|x|^2``)."""
    if n == 0:
        return SlicePoly.constant(1)
    return X * x_power(n - 1)


def closed_form_coefficients(j: int, k: int) -> dict[int, ExactScalar]:
    """Coefficients of ``h_{j,k}`` in powers of ``x``: ``{power: a}``."""
    t = j // 2
    out = {}
    for i in range(t + 1):
        if j % 2 == 0:
            a = comb(t, i) * Rational(factorial(t + k), factorial(k + i))
            out[2 * i] = a * (2 * C) ** (t - i)
        else:
            a = comb(t, i) * Rational(factorial(t + k + 1), factorial(k + i + 1))
            out[2 * i + 1] = a * (2 * C) ** (t - i)
    return out


def laguerre_coefficients(t: int, alpha: int) -> list[Rational]:
    """Coefficients of the generalized Laguerre polynomial ``L_t^alpha(u)`` in ``u``."""
    return [Rational((-1) ** i * comb(t + alpha, t - i), factorial(i)) for i in range(t + 1)]


def h_from_coefficients(coeffs: dict[int, ExactScalar]) -> SlicePoly:
    out = SlicePoly()
    for power, a in coeffs.items():
        out = out + x_power(power).scale(a)
    return out


def h_from_laguerre(j: int, k: int) -> SlicePoly:
    """``(2c)^t t! L_t^k(|x|^2/2c)`` (even ``j``) or ``(2c)^t t! x L_t^{k+1}(|x|^2/2c)``.

    Built from the Laguerre coefficients and powers of ``|x|^2``, without
    reference to the closed-form ``a`` coefficients.
    """
    t = j // 2
    alpha = k if j % 2 == 0 else k + 1
    prefactor = (2 * C) ** t * factorial(t)
    out = SlicePoly()
    norm_power = SlicePoly.constant(1)
    for i, coeff in enumerate(laguerre_coefficients(t, alpha)):
        term = norm_power.scale(coeff * (2 * C) ** -i)
        out = out + term
        norm_power = norm_power * NORM_SQ
    out = out.scale(prefactor)
    if j % 2:
        out = X * out
    return out


def laguerre_form(j: int, k: int, via: str = "laguerre") -> HermiteElement:
    """``h_{j,k} m_k`` assembled from a closed form.

    ``via="laguerre"`` uses the generalized Laguerre expansion;
    ``via="coefficients"`` sums the explicit coefficients of ``x**n``.
    """
    if via == "laguerre":
        h = h_from_laguerre(j, k)
    elif via == "coefficients":
        h = h_from_coefficients(closed_form_coefficients(j, k))
    else:
        raise ValueError(f"unknown closed form {via!r}")
    return HermiteElement(j, k, DressedFunction(h * monogenic(k)))


def listed_h(j: int, k: int) -> SlicePoly:
    """The five lowest Hermite polynomials written out term by term."""
    c = C
    table = {
        0: [(0, 1)],
        1: [(1, 1)],
        2: [(2, 1), (0, 2 * c * (k + 1))],
        3: [(3, 1), (1, 2 * c * (k + 2))],
        4: [(4, 1), (2, 4 * c * (k + 2)), (0, 4 * c * c * (k + 1) * (k + 2))],
    }
    if j not in table:
        raise ValueError("only j <= 4 is listed")
    return h_from_coefficients({n: ExactScalar.coerce(a) for n, a in table[j]})


def check_listed_table(k_max: int = 6) -> Report:
    report = Report("hermite-table", anchor="first five Clifford-Hermite polynomials")
    for j in range(5):
        for k in range(k_max + 1):
            got = hermite_poly(j, k).poly
            want = listed_h(j, k) * monogenic(k)
            report.check(got == want, {"j": j, "k": k}, str(want), str(got))
    return report


def check_laguerre(j_max: int = 12, k_max: int = 6) -> Report:
    report = Report("laguerre", anchor="Laguerre closed form of h_{j,k}")
    for j in range(j_max + 1):
        for k in range(k_max + 1):
            got = hermite_poly(j, k).poly
            for via in ("laguerre", "coefficients"):
                want = laguerre_form(j, k, via).poly
                report.check(got == want, {"j": j, "k": k, "via": via}, str(want), str(got))
    return report


def check_parity(j_max: int = 12, k_max: int = 6) -> Report:
    """``h_{j,k}`` has only powers of ``x`` of the parity of ``j``."""
    report = Report("parity")
    for j in range(j_max + 1):
        for k in range(k_max + 1):
            h = h_from_laguerre(j, k)
            bad = [ab for ab in h.monomials() if (sum(ab) - j) % 2]
            report.check(not bad, {"j": j, "k": k}, "no wrong-parity monomials", bad)
            report.check(hermite_poly(j, k).poly.degree() == j + k, {"j": j, "k": k, "degree": True},
                         j + k, hermite_poly(j, k).poly.degree())
    return report


def check_kernel(k: int) -> Report:
    """Kernel of D0 in degree ``k`` is ``m_k * S`` (real dimension 4)."""
    report = Report("kernel", anchor="kernel of D0 on degree-k polynomials equals m_k times the slice algebra")
    basis = kernel_basis(k)
    report.check(len(basis) == 4, {"k": k, "dim": True}, 4, len(basis))
    gens = [coordinates(monogenic(k) * SliceCoeff.basis(s), k) for s in range(4)]
    gen_rank = rank(gens)
    report.check(gen_rank == 4, {"k": k, "generators independent": True}, 4, gen_rank)
    for n, v in enumerate(basis):
        report.check(apply_D0(v).poly.is_zero(), {"k": k, "kernel vector": n, "D0": True})
        r = rank(gens + [coordinates(v, k)])
        report.check(r == gen_rank, {"k": k, "kernel vector": n, "in m_k S": True}, gen_rank, r)
    report.details = {"k": k, "dimension": len(basis)}
    return report


def check_lowering(j: int, k: int) -> Report:
    """``D0 H_j(m_k) == C(j,k) H_{j-1}(m_k)`` (and ``D0 m_k == 0``)."""
    report = Report("lowering", anchor="D0 lowers H_j(m_k)")
    got = apply_D0(hermite_poly(j, k).value).poly
    want = SlicePoly() if j == 0 else hermite_poly(j - 1, k).poly.scale(C_const(j, k))
    report.check(got == want, {"j": j, "k": k}, str(want), str(got))
    return report


def check_ode(j: int, k: int) -> Report:
    """Second-order equation, the shifted three-term recursion and the ``B(j,k)`` eigenrelation."""
    report = Report("ode", anchor="differential equation for H_j(m_k)")
    H = hermite_poly(j, k).value
    d0h = apply_D0(H)
    lhs = apply_D0(d0h).scale(C) - apply_X(d0h) + H.scale(C_const(j, k))
    report.check(lhs.poly.is_zero(), {"j": j, "k": k, "equation": "cD0^2 - xD0 + C"},
                 "0", str(lhs.poly))
    if j >= 1:
        nxt = hermite_poly(j + 1, k).poly
        rec = apply_X(H).poly - hermite_poly(j - 1, k).poly.scale(C * C_const(j, k))
        report.check(nxt == rec, {"j": j, "k": k, "equation": "shifted recursion"},
                     str(nxt), str(rec))
    eig = apply_euler(H).poly + apply_X(d0h).poly
    report.check(eig == H.poly.scale(B(j, k)), {"j": j, "k": k, "equation": "E + xD0 = B"},
                 str(H.poly.scale(B(j, k))), str(eig))
    return report


def check_commutant(max_degree: int = 6) -> Report:
    """``[E + x D0, (x - c D0)^2] == 0`` on bare monomials."""
    report = Report("commutant", anchor="E + xD0 commutes with (x - cD0)^2")
    raise_sq = (OX - OD * C) ** 2
    lhs = commutator(OE + OX * OD, raise_sq)
    inputs = [DressedFunction(p) for p in basis_monomials(max_degree)]
    check_identity("commutant", lhs, Op(), inputs, report)
    return report


def bracket(f: DressedFunction, weight_x) -> DressedFunction:
    """``(weight_x * x - c D0) f`` with the dressed D0."""
    return apply_X(f).scale(weight_x) - apply_D0(f).scale(C)


def rodrigues(j: int, k: int, lam) -> HermiteElement:
    """``H_j(m_k)`` recovered by conjugating with ``exp(-|x|^2 / (lam c))``."""
    lam = as_rational(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    f = DressedFunction(monogenic(k), 1 / lam)
    weight = 1 - 2 / lam
    for _ in range(j):
        f = bracket(f, weight)
    if f.rate != 1 / lam:
        raise RuntimeError("dressed bracket changed the Gaussian rate")
    return HermiteElement(j, k, DressedFunction(f.poly))


def check_rodrigues(j_max: int = 6, k_max: int = 4, lambdas=(2, 4, 8)) -> Report:
    report = Report("rodrigues", anchor="Rodrigues formula")
    for lam in lambdas:
        for k in range(k_max + 1):
            for j in range(j_max + 1):
                got = rodrigues(j, k, lam).poly
                want = hermite_poly(j, k).poly
                report.check(got == want, {"j": j, "k": k, "lambda": str(lam)}, str(want), str(got))
    return report


def ladder_up(f: DressedFunction) -> DressedFunction:
    """``(x/2 - c D0) f``."""
    return bracket(f, Rational(1, 2))


def ladder_down(f: DressedFunction) -> DressedFunction:
    """``(-x/2 - c D0) f``: the adjoint of :func:`ladder_up`."""
    return bracket(f, Rational(-1, 2))


def check_ladder(j: int, k: int) -> Report:
    report = Report("ladder", anchor="ladder relations of psi_{j,k}")
    psi = hermite_function(j, k).value
    down = ladder_down(psi)
    if j == 0:
        report.check(down.is_zero(), {"j": 0, "k": k, "relation": "lowering kills ground state"},
                     "0", str(down.poly))
        return report
    prev = hermite_function(j - 1, k).value
    up = ladder_up(prev)
    report.check(up.poly == psi.poly, {"j": j, "k": k, "relation": "raise"},
                 str(psi.poly), str(up.poly))
    want = prev.scale(-C * C_const(j, k))
    report.check(down.poly == want.poly, {"j": j, "k": k, "relation": "lower"},
                 str(want.poly), str(down.poly))
    return report


def check_oscillator(j: int, k: int) -> Report:
    """``(c D0^2 + |x|^2 / 4c) psi_{j,k} == (j + k + 1) psi_{j,k}``."""
    report = Report("oscillator", anchor="scalar oscillator equation")
    psi = hermite_function(j, k).value
    lhs = apply_D0(apply_D0(psi)).scale(C) + apply_normsq(psi).scale(ExactScalar.c(-1) / 4)
    want = psi.scale(j + k + 1)
    report.check(lhs.poly == want.poly, {"j": j, "k": k}, str(want.poly), str(lhs.poly))
    return report


def hermite_cases(k: int, j_max: int) -> list[Report]:
    """Lowering, ODE, ladder and oscillator checks for one ``k``."""
    parts = []
    for j in range(j_max + 1):
        parts += [check_lowering(j, k), check_ode(j, k), check_ladder(j, k),
                  check_oscillator(j, k)]
    return parts


def verify_hermite(j_max: int = 8, k_max: int = 5, laguerre_j: int = 12,
                   laguerre_k: int = 6, rodrigues_j: int = 6, rodrigues_k: int = 4,
                   kernel_k: int = 10, lambdas=(2, 4, 8), mapper=map) -> Report:
    """Every Hermite-side check, merged into one report.

    ``mapper`` runs the per-``k`` case lists; any order-preserving map works.
    """
    report = Report("hermite", anchor="Clifford-Hermite polynomials and functions")
    parts = [check_listed_table(), check_laguerre(laguerre_j, laguerre_k),
             check_parity(laguerre_j, laguerre_k), check_commutant(6),
             check_rodrigues(rodrigues_j, rodrigues_k, lambdas)]
    parts += list(mapper(check_kernel, range(kernel_k + 1)))
    for case in mapper(partial(hermite_cases, j_max=j_max), range(k_max + 1)):
        parts += case
    summary = {}
    for part in parts:
        entry = summary.setdefault(part.suite, {"checks": 0, "failures": 0})
        entry["checks"] += part.checks
        entry["failures"] += part.n_failed
        report.merge(part, prefix=part.suite)
    report.details = {"parts": summary}
    return report
