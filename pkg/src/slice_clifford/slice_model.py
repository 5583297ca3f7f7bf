"""Functions of ``(x0, r)`` with values in the algebra ``S = span{1, e0, w, w e0}``.

``w`` stands for the unit vector ``x_/r`` of ``R^m``. Inside ``Cl_{m+1}`` it
squares to -1 and anticommutes with ``e0``, so ``S`` is a copy of the
quaternions and every operator of the calculus closes on polynomials in
``(x0, r)`` over ``S`` times a radial Gaussian.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional

from . import kernels
from .clifford_core import Multivector
from .exact_scalar import ExactScalar, Rational, as_rational

BASIS_NAMES = ("1", "e0", "w", "w*e0")
ONE, E0, W, WE0 = range(4)


class SliceCoeff:
    """Element ``s1 + s_e0 e0 + s_w w + s_we0 w e0`` of S."""

    __slots__ = ("coords",)

    def __init__(self, one=0, e0=0, w=0, we0=0):
        self.coords = tuple(ExactScalar.coerce(v) for v in (one, e0, w, we0))

    @classmethod
    def basis(cls, index: int, value=1) -> "SliceCoeff":
        coords = [0, 0, 0, 0]
        coords[index] = value
        return cls(*coords)

    def __getitem__(self, index: int) -> ExactScalar:
        return self.coords[index]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __add__(self, other: "SliceCoeff") -> "SliceCoeff":
        return SliceCoeff(*(x + y for x, y in zip(self.coords, other.coords)))

    def __sub__(self, other: "SliceCoeff") -> "SliceCoeff":
        return SliceCoeff(*(x - y for x, y in zip(self.coords, other.coords)))

    def __neg__(self) -> "SliceCoeff":
        return SliceCoeff(*(-x for x in self.coords))

    def __mul__(self, other):
        if isinstance(other, SliceCoeff):
            return s_mul(self, other)
        other = ExactScalar.coerce(other)
        return SliceCoeff(*(x * other for x in self.coords))

    def __rmul__(self, other):
        other = ExactScalar.coerce(other)
        return SliceCoeff(*(other * x for x in self.coords))

    def __eq__(self, other):
        if not isinstance(other, SliceCoeff):
            try:
                other = SliceCoeff(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __str__(self) -> str:
        parts = []
        for value, name in zip(self.coords, BASIS_NAMES):
            if not value:
                continue
            text = str(value) if value.is_monomial() else f"({value})"
            if name == "1":
                parts.append(text)
            elif text == "1":
                parts.append(name)
            elif text == "-1":
                parts.append("-" + name)
            else:
                parts.append(f"{text}*{name}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def __repr__(self) -> str:
        return f"SliceCoeff({self})"


def s_mul(s: SliceCoeff, t: SliceCoeff) -> SliceCoeff:
    out = [ExactScalar(), ExactScalar(), ExactScalar(), ExactScalar()]
    for i, x in enumerate(s.coords):
        if not x:
            continue
        for j, y in enumerate(t.coords):
            if not y:
                continue
            u = 4 * i + j
            prod = x * y
            k = kernels.S_IDX[u]
            out[k] = out[k] + prod if kernels.S_SIGN[u] > 0 else out[k] - prod
    return SliceCoeff(*out)


def conjugate_s(s: SliceCoeff) -> SliceCoeff:
    one, e0, w, we0 = s.coords
    return SliceCoeff(one, -e0, -w, -we0)


class SlicePoly:
    """Immutable polynomial ``sum x0**a r**b s_ab`` with ``s_ab`` in S.

    Stored as one flat kernel term map keyed by
    ``(a, b, basis, c2, pi2, rad)``.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        flat: dict = {}
        for (a, b), coeff in (terms or {}).items():
            if a < 0 or b < 0:
                raise ValueError("exponents must be nonnegative")
            if not isinstance(coeff, SliceCoeff):
                coeff = SliceCoeff(coeff)
            for s, value in enumerate(coeff.coords):
                for (c2, pi2, rad), q in value.items():
                    key = (a, b, s, c2, pi2, rad)
                    flat[key] = flat.get(key, 0) + q
        self._terms = {k: v for k, v in flat.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "SlicePoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, value=1) -> "SlicePoly":
        if isinstance(value, SliceCoeff):
            return cls({(0, 0): value})
        return cls({(0, 0): SliceCoeff(value)})

    @classmethod
    def monomial(cls, a: int, b: int, coeff=1) -> "SlicePoly":
        return cls({(a, b): coeff if isinstance(coeff, SliceCoeff) else SliceCoeff(coeff)})

    # inspection -----------------------------------------------------------
    def terms(self) -> dict[tuple[int, int], SliceCoeff]:
        grouped: dict = {}
        for (a, b, s, c2, pi2, rad), q in self._terms.items():
            grouped.setdefault((a, b), [{}, {}, {}, {}])[s][(c2, pi2, rad)] = q
        return {ab: SliceCoeff(*(ExactScalar._raw(t) for t in parts))
                for ab, parts in sorted(grouped.items())}

    def coeff(self, a: int, b: int) -> SliceCoeff:
        parts: list[dict] = [{}, {}, {}, {}]
        for (a2, b2, s, c2, pi2, rad), q in self._terms.items():
            if a2 == a and b2 == b:
                parts[s][(c2, pi2, rad)] = q
        return SliceCoeff(*(ExactScalar._raw(t) for t in parts))

    def monomials(self) -> set[tuple[int, int]]:
        return {(k[0], k[1]) for k in self._terms}

    def degree(self) -> int:
        return max((k[0] + k[1] for k in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def flat(self) -> dict:
        return dict(self._terms)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _lift_poly(other)
        return SlicePoly._raw(kernels.poly_add(self._terms, other._terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = _lift_poly(other)
        return SlicePoly._raw(kernels.poly_add(self._terms, other._terms, -1))

    def __rsub__(self, other):
        return _lift_poly(other) - self

    def __neg__(self):
        return SlicePoly._raw({k: -v for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, SlicePoly):
            return poly_mul(self, other)
        if isinstance(other, SliceCoeff):
            return poly_mul(self, SlicePoly.constant(other))
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, SliceCoeff):
            return poly_mul(SlicePoly.constant(other), self)
        return self.scale(other)

    def scale(self, value) -> "SlicePoly":
        """Multiply by a central scalar (rational or :class:`ExactScalar`)."""
        value = ExactScalar.coerce(value)
        return SlicePoly._raw(kernels.poly_scale(self._terms, value._terms))

    def conjugate(self) -> "SlicePoly":
        return SlicePoly._raw(kernels.poly_conj(self._terms))

    def __pow__(self, n: int) -> "SlicePoly":
        out = SlicePoly.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, SlicePoly):
            try:
                other = _lift_poly(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # rendering ------------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b), coeff in self.terms().items():
            mono = "*".join(
                f"{name}^{e}" if e > 1 else name
                for name, e in (("x0", a), ("r", b)) if e) or "1"
            parts.append(f"({mono}) * [{coeff}]")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"SlicePoly({self})"

    def to_json(self) -> dict:
        return {"terms": [{"x0": a, "r": b,
                           "coeff": {name: value.to_json()
                                     for name, value in zip(BASIS_NAMES, coeff.coords) if value}}
                          for (a, b), coeff in self.terms().items()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "SlicePoly":
        terms = {}
        for item in data["terms"]:
            parts = [ExactScalar.from_json(item["coeff"][n]) if n in item["coeff"] else 0
                     for n in BASIS_NAMES]
            terms[(int(item["x0"]), int(item["r"]))] = SliceCoeff(*parts)
        return cls(terms)


def _lift_poly(value) -> SlicePoly:
    if isinstance(value, SlicePoly):
        return value
    if isinstance(value, SliceCoeff):
        return SlicePoly.constant(value)
    if isinstance(value, float):
        raise TypeError("floats are not exact")
    return SlicePoly.constant(ExactScalar.coerce(value))


def poly_mul(p: SlicePoly, q: SlicePoly) -> SlicePoly:
    return SlicePoly._raw(kernels.poly_mul(p._terms, q._terms))


# frequently used polynomials
X0 = SlicePoly.monomial(1, 0)
R = SlicePoly.monomial(0, 1)
X = SlicePoly({(1, 0): SliceCoeff.basis(E0), (0, 1): SliceCoeff.basis(W)})
NORM_SQ = SlicePoly({(2, 0): SliceCoeff(1), (0, 2): SliceCoeff(1)})
PARAVECTOR = SlicePoly({(1, 0): SliceCoeff(1), (0, 1): SliceCoeff.basis(W)})


@dataclass(frozen=True)
class DressedFunction:
    """``poly * exp(-rate (x0^2 + r^2) / c) * right``.

    ``right`` is an optional constant of ``Cl_{m+1}`` acting from the right;
    operators never touch it.
    """

    poly: SlicePoly
    rate: Rational = field(default_factory=lambda: Rational(0))
    right: Optional[Multivector] = None

    def __post_init__(self):
        rate = as_rational(self.rate)
        if rate < 0:
            raise ValueError("Gaussian rate must be nonnegative")
        object.__setattr__(self, "rate", rate)
        if not isinstance(self.poly, SlicePoly):
            object.__setattr__(self, "poly", _lift_poly(self.poly))

    def with_poly(self, poly: SlicePoly) -> "DressedFunction":
        return DressedFunction(poly, self.rate, self.right)

    def times_right(self, constant: Multivector) -> "DressedFunction":
        right = constant if self.right is None else self.right * constant
        return DressedFunction(self.poly, self.rate, right)

    def __add__(self, other: "DressedFunction") -> "DressedFunction":
        _same_frame(self, other)
        return self.with_poly(self.poly + other.poly)

    def __sub__(self, other: "DressedFunction") -> "DressedFunction":
        _same_frame(self, other)
        return self.with_poly(self.poly - other.poly)

    def __neg__(self) -> "DressedFunction":
        return self.with_poly(-self.poly)

    def scale(self, value) -> "DressedFunction":
        return self.with_poly(self.poly.scale(value))

    def __mul__(self, other: "DressedFunction") -> "DressedFunction":
        """Pointwise product; rates add. Only defined without right constants."""
        if self.right is not None or other.right is not None:
            raise ValueError("product of functions with right constants is not closed")
        return DressedFunction(self.poly * other.poly, self.rate + other.rate)

    def is_zero(self) -> bool:
        return self.poly.is_zero()

    def __str__(self) -> str:
        text = str(self.poly)
        if self.rate:
            text = f"({text}) * exp(-{self.rate}*|x|^2/c)"
        if self.right is not None:
            text = f"{text} * ({self.right})"
        return text

    def to_json(self) -> dict:
        return {"poly": self.poly.to_json(), "rate": str(self.rate),
                "right": None if self.right is None else self.right.to_json()}


def _same_frame(f: DressedFunction, g: DressedFunction) -> None:
    if f.rate != g.rate or f.right != g.right:
        raise ValueError("cannot add functions with different Gaussian rates or right constants")


def dressed(poly, rate=0, right: Optional[Multivector] = None) -> DressedFunction:
    return DressedFunction(_lift_poly(poly), rate, right)


def basis_monomials(max_degree: int) -> Iterable[SlicePoly]:
    """All ``x0**a r**b s`` with ``a + b <= max_degree`` and ``s`` an S-basis element."""
    for d in range(max_degree + 1):
        for a in range(d + 1):
            for s in range(4):
                yield SlicePoly.monomial(a, d - a, SliceCoeff.basis(s))


def embed_coeff(s: SliceCoeff, omega: Iterable) -> Multivector:
    """Image of an S element in ``Cl_{m+1}`` with ``w -> sum omega_i e_i``."""
    omega = [as_rational(v) for v in omega]
    n = len(omega) + 1
    w_vec = Multivector(n, {(i + 1,): v for i, v in enumerate(omega)})
    e0 = Multivector.generator(n, 0)
    images = (Multivector.scalar(n, 1), e0, w_vec, w_vec * e0)
    out = Multivector(n)
    for value, image in zip(s.coords, images):
        if value:
            out = out + image * value
    return out


def check_unit(omega: Iterable) -> list:
    omega = [as_rational(v) for v in omega]
    if sum(v * v for v in omega) != 1:
        raise ValueError(f"direction {omega} is not a unit vector")
    return omega


def embed_at(f, x0, r, omega: Iterable, c_val=1) -> Multivector:
    """Exact value of a bare slice function at a rational point of ``R^{m+1}``.

    ``omega`` must be an exactly unit rational direction (for instance a
    Pythagorean pair such as ``(3/5, 4/5)``). The Gaussian factor of a
    dressed function is transcendental, so ``f.rate`` must be 0 here; the
    numeric oracle evaluates dressed functions.
    """
    if isinstance(f, SlicePoly):
        f = DressedFunction(f)
    elif isinstance(f, SliceCoeff):
        f = DressedFunction(SlicePoly.constant(f))
    if f.rate:
        raise ValueError("embed_at is exact only for bare polynomials (rate 0)")
    omega = check_unit(omega)
    x0 = as_rational(x0)
    r = as_rational(r)
    if r < 0:
        raise ValueError("r must be nonnegative")
    total = SliceCoeff()
    for (a, b), coeff in f.poly.terms().items():
        factor = x0 ** a * r ** b
        total = total + SliceCoeff(*(v.substitute_c(c_val) * factor for v in coeff.coords))
    out = embed_coeff(total, omega)
    if f.right is not None:
        out = out * f.right
    return out
