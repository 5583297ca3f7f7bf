"""The operator calculus on dressed slice functions.

Elementary operators act on ``DressedFunction`` values and return functions
with the same Gaussian rate and right constant. Derivatives of a dressed
function include the chain-rule terms of the Gaussian. Euler-type and
Laplacian operators refuse dressed inputs unless ``dressed=True`` is passed,
so a sweep has to opt in to the chain-rule versions explicitly.
"""

from __future__ import annotations

import enum
from typing import Iterable, Mapping, Sequence

from . import kernels
from .exact_scalar import ExactScalar, Rational, as_rational
from .linalg import nullspace
from .reports import Report
from .slice_model import (
    NORM_SQ, X, DressedFunction, SliceCoeff, SlicePoly, basis_monomials,
)


class OperatorTag(enum.Enum):
    X = "x"
    D0 = "D0"
    EULER = "E"
    SLICE_LAPLACIAN = "L"
    NORM_SQ = "|x|^2"
    EULER_M = "r d/dr"
    X0_PARTIAL = "d/dx0"

    @property
    def needs_chain_rule(self) -> bool:
        return self in _CHAIN_RULE_TAGS


_CHAIN_RULE_TAGS = {OperatorTag.EULER, OperatorTag.SLICE_LAPLACIAN,
                    OperatorTag.EULER_M, OperatorTag.X0_PARTIAL}


def _as_dressed(f) -> DressedFunction:
    if isinstance(f, DressedFunction):
        return f
    return DressedFunction(f if isinstance(f, SlicePoly) else SlicePoly.constant(f))


def _rate_terms(rho: Rational, scale: int) -> dict:
    # scalar term map of  scale * rho / c
    return {(-2, 0, 1): rho * scale}


def _guard(f: DressedFunction, name: str, dressed: bool) -> None:
    if f.rate and not dressed:
        raise ValueError(f"{name} on a dressed function needs dressed=True "
                         "(chain-rule terms of the Gaussian)")


def apply_X(f) -> DressedFunction:
    f = _as_dressed(f)
    return f.with_poly(SlicePoly._raw(kernels.poly_mul(X._terms, f.poly._terms)))


def apply_normsq(f) -> DressedFunction:
    f = _as_dressed(f)
    return f.with_poly(SlicePoly._raw(kernels.poly_mul(NORM_SQ._terms, f.poly._terms)))


def apply_D0(f) -> DressedFunction:
    """Slice Dirac operator ``e0 d/dx0 + w d/dr``, Gaussian included."""
    f = _as_dressed(f)
    p = f.poly._terms
    out = kernels.poly_dirac(p)
    if f.rate:
        chain = kernels.poly_scale(kernels.poly_mul(X._terms, p), _rate_terms(f.rate, -2))
        out = kernels.poly_add(out, chain)
    return f.with_poly(SlicePoly._raw(out))


def apply_euler(f, dressed: bool = False) -> DressedFunction:
    """``x0 d/dx0 + r d/dr``."""
    f = _as_dressed(f)
    _guard(f, "Euler operator", dressed)
    p = f.poly._terms
    out = kernels.poly_euler(p)
    if f.rate:
        chain = kernels.poly_scale(kernels.poly_mul(NORM_SQ._terms, p), _rate_terms(f.rate, -2))
        out = kernels.poly_add(out, chain)
    return f.with_poly(SlicePoly._raw(out))


def apply_euler_m(f, dressed: bool = False) -> DressedFunction:
    """``r d/dr``, the Euler operator of the ``R^m`` factor."""
    f = _as_dressed(f)
    _guard(f, "r d/dr", dressed)
    p = f.poly._terms
    out = kernels.poly_r_dr(p)
    if f.rate:
        r2 = {(0, 2, 0, 0, 0, 1): Rational(1)}
        out = kernels.poly_add(out, kernels.poly_scale(kernels.poly_mul(r2, p),
                                                       _rate_terms(f.rate, -2)))
    return f.with_poly(SlicePoly._raw(out))


def apply_x0_partial(f, dressed: bool = False) -> DressedFunction:
    f = _as_dressed(f)
    _guard(f, "d/dx0", dressed)
    p = f.poly._terms
    out = kernels.poly_dx0(p)
    if f.rate:
        x0 = {(1, 0, 0, 0, 0, 1): Rational(1)}
        out = kernels.poly_add(out, kernels.poly_scale(kernels.poly_mul(x0, p),
                                                       _rate_terms(f.rate, -2)))
    return f.with_poly(SlicePoly._raw(out))


def apply_slice_laplacian(f, dressed: bool = False) -> DressedFunction:
    """``d^2/dx0^2 + d^2/dr^2``."""
    f = _as_dressed(f)
    _guard(f, "slice Laplacian", dressed)
    p = f.poly._terms
    out = kernels.poly_laplacian(p)
    if f.rate:
        rho = f.rate
        # 2 grad(g)/g . grad p  +  (lap g / g) p  for g = exp(-rho |x|^2 / c)
        out = kernels.poly_add(out, kernels.poly_scale(kernels.poly_euler(p),
                                                       _rate_terms(rho, -4)))
        out = kernels.poly_add(out, kernels.poly_scale(p, _rate_terms(rho, -4)))
        quad = {(-4, 0, 1): 4 * rho * rho}
        out = kernels.poly_add(out, kernels.poly_scale(
            kernels.poly_mul(NORM_SQ._terms, p), quad))
    return f.with_poly(SlicePoly._raw(out))


_APPLY = {
    OperatorTag.X: lambda f, dressed: apply_X(f),
    OperatorTag.D0: lambda f, dressed: apply_D0(f),
    OperatorTag.NORM_SQ: lambda f, dressed: apply_normsq(f),
    OperatorTag.EULER: apply_euler,
    OperatorTag.EULER_M: apply_euler_m,
    OperatorTag.X0_PARTIAL: apply_x0_partial,
    OperatorTag.SLICE_LAPLACIAN: apply_slice_laplacian,
}


def apply(tag: OperatorTag, f, dressed: bool = False) -> DressedFunction:
    return _APPLY[tag](_as_dressed(f), dressed)


class Op:
    """Linear combination of operator words with :class:`ExactScalar` weights.

    A word ``(A, B, C)`` means ``A o B o C``: ``C`` is applied first.
    Products compose words; the empty word is the identity.
    """

    __slots__ = ("words",)

    def __init__(self, words: Mapping[tuple, object] | None = None):
        clean = {}
        for word, w in (words or {}).items():
            w = ExactScalar.coerce(w)
            total = clean.get(word, ExactScalar()) + w
            if total:
                clean[word] = total
            else:
                clean.pop(word, None)
        self.words = clean

    @classmethod
    def tag(cls, tag: OperatorTag) -> "Op":
        return cls({(tag,): 1})

    @classmethod
    def identity(cls, weight=1) -> "Op":
        return cls({(): weight})

    def _combine(self, other: "Op", sign: int) -> "Op":
        words = dict(self.words)
        for word, w in other.words.items():
            words[word] = words.get(word, ExactScalar()) + (w if sign > 0 else -w)
        return Op(words)

    def __add__(self, other):
        return self._combine(_lift_op(other), 1)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(_lift_op(other), -1)

    def __rsub__(self, other):
        return _lift_op(other)._combine(self, -1)

    def __neg__(self):
        return Op({w: -v for w, v in self.words.items()})

    def __mul__(self, other):
        if not isinstance(other, Op):
            return Op({w: v * ExactScalar.coerce(other) for w, v in self.words.items()})
        words: dict = {}
        for w1, v1 in self.words.items():
            for w2, v2 in other.words.items():
                key = w1 + w2
                words[key] = words.get(key, ExactScalar()) + v1 * v2
        return Op(words)

    def __rmul__(self, other):
        return Op({w: ExactScalar.coerce(other) * v for w, v in self.words.items()})

    def __pow__(self, n: int) -> "Op":
        out = Op.identity()
        for _ in range(n):
            out = out * self
        return out

    def uses_chain_rule_tags(self) -> bool:
        return any(t.needs_chain_rule for word in self.words for t in word)

    def apply(self, f, dressed: bool = False, cache: dict | None = None) -> DressedFunction:
        """Apply to ``f``; shared word suffixes are evaluated once."""
        f = _as_dressed(f)
        memo = {} if cache is None else cache
        memo.setdefault((), f)
        acc: dict = {}
        for word, weight in self.words.items():
            g = _apply_word(word, memo, dressed)
            acc = kernels.poly_add(acc, kernels.poly_scale(g.poly._terms, weight._terms))
        return f.with_poly(SlicePoly._raw(acc))

    def __str__(self) -> str:
        if not self.words:
            return "0"
        return " + ".join(
            f"({w})" + ("" if not word else "*" + "".join(t.value + " " for t in word).strip())
            for word, w in self.words.items())


def _apply_word(word: tuple, memo: dict, dressed: bool) -> DressedFunction:
    hit = memo.get(word)
    if hit is not None:
        return hit
    inner = _apply_word(word[1:], memo, dressed)
    out = _APPLY[word[0]](inner, dressed)
    memo[word] = out
    return out


def _lift_op(value) -> Op:
    if isinstance(value, Op):
        return value
    return Op.identity(value)


OX = Op.tag(OperatorTag.X)
OD = Op.tag(OperatorTag.D0)
OE = Op.tag(OperatorTag.EULER)
OL = Op.tag(OperatorTag.SLICE_LAPLACIAN)
ON = Op.tag(OperatorTag.NORM_SQ)
OI = Op.identity()


def commutator(a: Op, b: Op) -> Op:
    return a * b - b * a


def anticommutator(a: Op, b: Op) -> Op:
    return a * b + b * a


# the ten osp(1|2) relations as (label, left side, right side); L is the slice Laplacian
OSP_RELATIONS: tuple[tuple[str, Op, Op], ...] = (
    ("{x,x}", anticommutator(OX, OX), -2 * ON),
    ("{D0,D0}", anticommutator(OD, OD), -2 * OL),
    ("{x,D0}", anticommutator(OX, OD), -2 * (OE + 1)),
    ("[E+1,D0]", commutator(OE + 1, OD), -OD),
    ("[|x|^2,D0]", commutator(ON, OD), -2 * OX),
    ("[E+1,x]", commutator(OE + 1, OX), OX),
    ("[L,x]", commutator(OL, OX), 2 * OD),
    ("[E+1,L]", commutator(OE + 1, OL), -2 * OL),
    ("[L,|x|^2]", commutator(OL, ON), 4 * (OE + 1)),
    ("[E+1,|x|^2]", commutator(OE + 1, ON), 2 * ON),
)


def check_identity(label: str, lhs: Op, rhs: Op, inputs: Iterable[DressedFunction],
                   report: Report, dressed: bool = False) -> None:
    needs_chain = lhs.uses_chain_rule_tags() or rhs.uses_chain_rule_tags()
    for f in inputs:
        if f.rate and needs_chain and not dressed:
            continue
        cache: dict = {}
        left = lhs.apply(f, dressed, cache)
        right = rhs.apply(f, dressed, cache)
        report.check(left.poly == right.poly,
                     {"relation": label, "f": str(f.poly), "rate": str(f.rate)},
                     expected=str(right.poly), got=str(left.poly))


def check_osp_relations(max_degree: int = 8, rates: Sequence = (0,),
                        dressed: bool = False) -> Report:
    """Check all ten relations on every dressed basis monomial.

    With ``dressed=False`` the relations involving the Euler operator or the
    slice Laplacian are only checked at rate 0.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    rates = [as_rational(r) for r in rates]
    inputs = [DressedFunction(p, rho) for rho in rates for p in basis_monomials(max_degree)]
    report = Report("osp", anchor="osp(1|2) relations of x, D0 and E")
    per_relation = {}
    for label, lhs, rhs in OSP_RELATIONS:
        sub = Report(label)
        check_identity(label, lhs, rhs, inputs, sub, dressed)
        per_relation[label] = {"checked": sub.checks, "failures": sub.failures}
        report.merge(sub)
    report.details = {"relations": per_relation, "max_degree": max_degree,
                      "rates": [str(r) for r in rates], "dressed": dressed}
    return report


def power_identities(s: int) -> list[tuple[str, Op, Op]]:
    """The four identities for ``D0`` and ``E`` against ``x**(2s)``, ``x**(2s+1)``."""
    even = OX ** (2 * s)
    odd = OX ** (2 * s + 1)
    return [
        (f"D0 x^{2 * s}", OD * even, -2 * s * OX ** (2 * s - 1) + even * OD),
        (f"D0 x^{2 * s + 1}", OD * odd, -2 * even * (OE + (s + 1)) - odd * OD),
        (f"E x^{2 * s}", OE * even, even * (OE + 2 * s)),
        (f"E x^{2 * s + 1}", OE * odd, odd * (OE + (2 * s + 1))),
    ]


def check_power_identities(s_max: int = 4, max_degree: int = 6) -> Report:
    if s_max < 1:
        raise ValueError("s_max must be at least 1")
    inputs = [DressedFunction(p) for p in basis_monomials(max_degree)]
    report = Report("powers", anchor="D0 and E acting on powers of x")
    for s in range(1, s_max + 1):
        for label, lhs, rhs in power_identities(s):
            check_identity(label, lhs, rhs, inputs, report)
    report.details = {"s_max": s_max, "max_degree": max_degree}
    return report


def homogeneous_basis(k: int) -> list[tuple[int, int]]:
    """Coordinates ``(a, s)`` of the real basis ``x0**a r**(k-a) * basis[s]``."""
    return [(a, s) for a in range(k + 1) for s in range(4)]


def coordinates(p: SlicePoly, k: int) -> list[Rational]:
    """Rational coordinates of a homogeneous degree-``k`` bare polynomial."""
    index = {ab: i for i, ab in enumerate(homogeneous_basis(k))}
    vec = [Rational(0)] * len(index)
    for (a, b, s, c2, pi2, rad), q in p._terms.items():
        if a + b != k or (c2, pi2, rad) != (0, 0, 1):
            raise ValueError("coordinates need a homogeneous polynomial with rational coefficients")
        vec[index[(a, s)]] = q
    return vec


def d0_matrix(k: int) -> list[list[Rational]]:
    """Matrix of D0 from degree-``k`` to degree-``k-1`` homogeneous polynomials."""
    cols = []
    for a, s in homogeneous_basis(k):
        image = apply_D0(SlicePoly.monomial(a, k - a, SliceCoeff.basis(s))).poly
        cols.append(coordinates(image, k - 1) if k else [])
    n_rows = 4 * k
    return [[cols[j][i] for j in range(len(cols))] for i in range(n_rows)]


def kernel_basis(k: int) -> list[SlicePoly]:
    """Basis of the kernel of D0 on homogeneous degree-``k`` slice polynomials."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    basis = homogeneous_basis(k)
    vectors = nullspace(d0_matrix(k), n_cols=len(basis))
    return [SlicePoly._raw({(a, k - a, s, 0, 0, 1): Rational(v[i])
                            for i, (a, s) in enumerate(basis) if v[i]})
            for v in vectors]
