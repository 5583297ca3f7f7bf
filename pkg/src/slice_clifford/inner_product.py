"""Exact weighted inner product on Gaussian-dressed slice functions.

``<f, g> = int conj(f) g dx0 dr dw`` over ``R x (0, inf) x S^{m-1}``. The
weight ``r^(1-m)`` cancels the Jacobian of spherical coordinates, so the
measure is flat in ``(x0, r)``. Right constants sit outside the integral:
``<f a, g b> = conj(a) <f, g> b``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from . import kernels
from .clifford_core import DimensionError, Multivector, conjugate, random_multivector, scalar_part
from .exact_scalar import C, ExactScalar, Rational, as_rational, gaussian_moment
from .hermite import A, FUNCTION_RATE, hermite_function, listed_h, sphere_area
from .operators import apply_D0, apply_X
from .reports import Report
from .slice_model import DressedFunction, SliceCoeff, SlicePoly, basis_monomials, dressed


@dataclass(frozen=True)
class SphereProjection:
    """``int_{S^{m-1}} s dw`` for ``s`` in S: only the 1 and e0 parts survive."""

    scalar_part: ExactScalar
    e0_part: ExactScalar
    area_factor: ExactScalar

    def to_multivector(self, dim: int) -> Multivector:
        return Multivector(dim, {(): self.scalar_part, (0,): self.e0_part})


def sphere_integral(s: SliceCoeff, m: int) -> SphereProjection:
    # w is odd under w -> -w, so w and w*e0 integrate to zero
    area = sphere_area(m)
    return SphereProjection(s[0] * area, s[1] * area, area)


@lru_cache(maxsize=4096)
def _moment(a: int, b: int, rho: Rational) -> ExactScalar:
    return gaussian_moment(a, b, rho)


def _resolve_right(f: DressedFunction, extra: Optional[Multivector], dim: int) -> Optional[Multivector]:
    right = f.right
    if extra is not None:
        right = extra if right is None else right * extra
    if right is not None and right.dim != dim:
        raise DimensionError(f"right constant lives in Cl_{right.dim}, expected Cl_{dim}")
    return right


def radial_integral(f: DressedFunction, g: DressedFunction) -> tuple[ExactScalar, ExactScalar]:
    """``(scalar, e0)`` parts of ``int conj(f) g dx0 dr`` after the w-kill.

    Independent of ``m``; the sphere area is applied by the caller.
    """
    f = dressed(f) if not isinstance(f, DressedFunction) else f
    g = dressed(g) if not isinstance(g, DressedFunction) else g
    rho = f.rate + g.rate
    if rho <= 0:
        raise ValueError("inner product needs a positive combined Gaussian rate")
    projected = kernels.poly_pair_project(f.poly._terms, g.poly._terms)
    parts: list[dict] = [{}, {}]
    for (a, b, s, c2, p2, rad), q in projected.items():
        moment = _moment(a, b, rho)
        acc = parts[s]
        for (mc, mp, mr), mq in moment.items():
            gg, r = kernels.rad_mul(rad, mr)
            key = (c2 + mc, p2 + mp, r)
            v = q * mq * gg
            acc[key] = acc.get(key, 0) + v
    return tuple(ExactScalar({k: v for k, v in acc.items() if v}) for acc in parts)


def inner(f: DressedFunction, g: DressedFunction, m: int,
          a: Optional[Multivector] = None, b: Optional[Multivector] = None) -> Multivector:
    """``<f a, g b>`` as an element of ``Cl_{m+1}``.

    ``f.right`` and ``g.right`` are honoured; ``a`` and ``b`` multiply them
    further from the right.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    dim = m + 1
    left = _resolve_right(f, a, dim)
    right = _resolve_right(g, b, dim)
    s, t = radial_integral(f, g)
    area = sphere_area(m)
    value = Multivector(dim, {(): s * area, (0,): t * area})
    if left is not None:
        value = conjugate(left) * value
    if right is not None:
        value = value * right
    return value


def psi(j: int, k: int) -> DressedFunction:
    return hermite_function(j, k).value


def _adjoint_pairs(f: DressedFunction, g: DressedFunction, m: int, report: Report, case: dict) -> None:
    lhs = inner(apply_D0(f), g, m)
    rhs = inner(f, apply_D0(g), m)
    report.check(lhs == rhs, {**case, "relation": "<D0 f, g> = <f, D0 g>"}, str(rhs), str(lhs))
    lhs = inner(apply_X(f), g, m)
    rhs = -inner(f, apply_X(g), m)
    report.check(lhs == rhs, {**case, "relation": "<x f, g> = -<f, x g>"}, str(rhs), str(lhs))


def regular_monomials(max_degree: int) -> list[SlicePoly]:
    """Dressed-monomial test functions that are continuous on the axis ``r = 0``.

    ``x0^a w`` and ``x0^a w e0`` jump across the axis (``w`` has no limit at
    ``r = 0``), so they lie outside the domain where D0 is symmetric.
    """
    out = []
    for p in basis_monomials(max_degree):
        ((a, b), s), = p.terms().items()
        if b == 0 and (s[2] or s[3]):
            continue
        out.append(p)
    return out


def check_selfadjoint(max_j: int = 5, max_k: int = 4, m: int = 2,
                      monomial_degree: int = 3) -> Report:
    """``D0`` symmetric and ``x`` antisymmetric over the psi sweep and regular dressed monomials."""
    report = Report("adjoint", anchor="D0 self-adjoint and x skew-adjoint")
    funcs = [((j, k), psi(j, k)) for k in range(max_k + 1) for j in range(max_j + 1)]
    for (jk1, f) in funcs:
        for (jk2, g) in funcs:
            _adjoint_pairs(f, g, m, report, {"m": m, "f": f"psi{jk1}", "g": f"psi{jk2}"})
    mons = [DressedFunction(p, FUNCTION_RATE) for p in regular_monomials(monomial_degree)]
    for f in mons:
        for g in mons:
            _adjoint_pairs(f, g, m, report, {"m": m, "f": str(f.poly), "g": str(g.poly)})
    n_psi = len(funcs) ** 2
    report.details = {"m": m, "psi_pairs": n_psi, "monomial_pairs": len(mons) ** 2}
    return report


@dataclass
class BetaRow:
    lam: Rational
    beta: ExactScalar
    direct: ExactScalar
    closed_form: ExactScalar

    @property
    def is_zero(self) -> bool:
        return self.direct.is_zero()

    def to_json(self) -> dict:
        return {"lambda": str(self.lam), "beta": str(self.beta), "direct": str(self.direct),
                "closed_form": str(self.closed_form), "zero": self.is_zero}


def beta_closed_form(lam, m: int) -> ExactScalar:
    """``(4c - beta)(pi beta / 8)`` times the sphere area, at ``beta = lam c``."""
    beta = C * as_rational(lam)
    return (4 * C - beta) * (beta * ExactScalar.pi() / 8) * sphere_area(m)


def beta_inner(lam, m: int) -> ExactScalar:
    """``<h_0 exp(-|x|^2/beta), h_{2,0} exp(-|x|^2/beta)>`` with unit right constants."""
    lam = as_rational(lam)
    if lam <= 0:
        raise ValueError("lambda must be positive")
    rate = 1 / lam
    f = DressedFunction(listed_h(0, 0), rate)
    g = DressedFunction(listed_h(2, 0), rate)
    value = inner(f, g, m)
    return scalar_part(value)


def beta_scan(lambdas: Iterable, m: int = 2) -> tuple[list[BetaRow], Report]:
    report = Report("beta-scan", anchor="orthogonality forces beta = 4c")
    rows = []
    for lam in lambdas:
        lam = as_rational(lam)
        direct = beta_inner(lam, m)
        closed = beta_closed_form(lam, m)
        row = BetaRow(lam, C * lam, direct, closed)
        rows.append(row)
        report.check(direct == closed, {"lambda": str(lam), "m": m, "check": "closed form"},
                     str(closed), str(direct))
        report.check(row.is_zero == (lam == 4), {"lambda": str(lam), "m": m, "check": "zero iff 4"},
                     lam == 4, row.is_zero)
    report.details = {"m": m, "rows": [r.to_json() for r in rows]}
    return rows, report


@dataclass
class GramReport:
    m: int
    j_max: int
    k_max: int
    a1: Optional[Multivector]
    a2: Optional[Multivector]
    entries: dict = field(default_factory=dict)
    report: Report = field(default_factory=lambda: Report("orthogonality"))

    @property
    def labels(self) -> list[tuple[int, int]]:
        return [(j, k) for k in range(self.k_max + 1) for j in range(self.j_max + 1)]

    def cell(self, row, col) -> str:
        value = self.entries[(row, col)]
        blades = value.blades()
        if set(blades) <= {()}:
            return str(value.coeff(()))
        return str(value)

    def to_json(self) -> dict:
        return {"m": self.m, "labels": [list(l) for l in self.labels],
                "entries": [[self.entries[(r, c)].to_json() for c in self.labels] for r in self.labels]}


def expected_diagonal(j: int, k: int, m: int, a1: Optional[Multivector],
                      a2: Optional[Multivector]) -> Multivector:
    dim = m + 1
    value = Multivector.scalar(dim, A(j, k, m))
    if a1 is not None:
        value = conjugate(a1) * value
    if a2 is not None:
        value = value * a2
    return value


def gram_matrix(j_max: int, k_max: int, m: int, a1: Optional[Multivector] = None,
                a2: Optional[Multivector] = None, radial_cache: Optional[dict] = None) -> GramReport:
    """All ``<psi_{j1,k1} a1, psi_{j2,k2} a2>`` with the diagonal and zero checks.

    ``radial_cache`` lets several values of ``m`` share the ``m``-independent
    radial integrals.
    """
    gram = GramReport(m, j_max, k_max, a1, a2)
    gram.report.anchor = "orthogonality of Clifford-Hermite functions"
    cache = radial_cache if radial_cache is not None else {}
    dim = m + 1
    area = sphere_area(m)
    for row in gram.labels:
        for col in gram.labels:
            if (row, col) not in cache:
                cache[(row, col)] = radial_integral(psi(*row), psi(*col))
            s, t = cache[(row, col)]
            value = Multivector(dim, {(): s * area, (0,): t * area})
            if a1 is not None:
                value = conjugate(a1) * value
            if a2 is not None:
                value = value * a2
            gram.entries[(row, col)] = value
            case = {"m": m, "row": list(row), "col": list(col)}
            if row == col:
                want = expected_diagonal(*row, m, a1, a2)
                gram.report.check(value == want, case, str(want), str(value))
            else:
                gram.report.check(value.is_zero(), case, "0", str(value))
    return gram


def check_orthogonality(j_max: int = 5, k_max: int = 4, ms: Sequence[int] = (2, 3),
                        lambdas: Iterable = range(1, 9)) -> Report:
    report = Report("orthogonality", anchor="orthogonality of Clifford-Hermite functions")
    cache: dict = {}
    diag = {}
    for m in ms:
        gram = gram_matrix(j_max, k_max, m, radial_cache=cache)
        report.merge(gram.report, prefix=f"gram m={m}")
        diag[m] = {f"{j},{k}": gram.cell((j, k), (j, k)) for (j, k) in gram.labels}
        _, beta = beta_scan(lambdas, m)
        report.merge(beta, prefix=f"beta m={m}")
    report.details = {"diagonal": diag}
    return report


def check_hermitian(m: int = 2, n_pairs: int = 20, seed: int = 0, max_degree: int = 4) -> Report:
    """``<f, g> = conj(<g, f>)`` and right-linearity on random dressed pairs."""
    report = Report("hermitian", anchor="conjugate symmetry of the inner product")
    rng = random.Random(seed)
    dim = m + 1
    rights = [Multivector.scalar(dim, 1), Multivector.generator(dim, 0),
              Multivector.blade(dim, (0, 1))]
    for n in range(n_pairs):
        f = random_dressed(rng, max_degree)
        g = random_dressed(rng, max_degree)
        fg = inner(f, g, m)
        gf = inner(g, f, m)
        report.check(fg == conjugate(gf), {"pair": n, "check": "hermitian"}, str(conjugate(gf)), str(fg))
        for b in rights:
            got = inner(f, g, m, b=b)
            report.check(got == fg * b, {"pair": n, "check": "right-linear", "b": str(b)},
                         str(fg * b), str(got))
        a = random_multivector(dim, rng)
        got = inner(f.times_right(a), g, m)
        want = conjugate(a) * fg
        report.check(got == want, {"pair": n, "check": "left constant"}, str(want), str(got))
        norm = scalar_part(inner(f, f, m)).evaluate(1.0)
        report.check(norm > 0, {"pair": n, "check": "positive"}, "> 0", norm)
    return report


def random_dressed(rng: random.Random, max_degree: int = 4, n_terms: int = 3) -> DressedFunction:
    terms = {}
    for _ in range(n_terms):
        a = rng.randint(0, max_degree)
        b = rng.randint(1, max_degree)
        coeff = SliceCoeff(*(Rational(rng.randint(-4, 4)) for _ in range(4)))
        terms[(a, b)] = terms.get((a, b), SliceCoeff()) + coeff
    poly = SlicePoly(terms)
    if poly.is_zero():
        poly = SlicePoly.monomial(0, 1)
    rate = Rational(rng.choice((1, 2, 3)), 8)
    return DressedFunction(poly, rate)
