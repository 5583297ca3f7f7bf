"""Exact value ring: rational combinations of ``c**p * pi**s * sqrt(d)``.

Exponents ``p`` and ``s`` are half-integers and are stored doubled. The
radical ``d`` is a squarefree positive integer; it only appears through
Gaussian moments with a non-square rate and keeps those moments exact.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Union

from . import kernels

try:
    from gmpy2 import mpq as Rational
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as Rational

Key = tuple  # (c2, pi2, rad)
Number = Union[int, "Rational", "ExactScalar"]


def as_rational(value) -> Rational:
    """Coerce ints, Fractions, mpq and ``"p/q"`` strings to :data:`Rational`."""
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or a string")
    if isinstance(value, str):
        return Rational(value.strip())
    return Rational(value)


def squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` squarefree."""
    if n <= 0:
        raise ValueError("squarefree_split needs a positive integer")
    s, d = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        s *= p ** (e // 2)
        if e & 1:
            d *= p
        p += 1 if p == 2 else 2
    return s, d * n


class ExactScalar:
    """Immutable element of ``Q[c^(1/2), pi^(1/2), sqrt(d)]`` in normal form."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, object] | None = None):
        clean = {}
        if terms:
            for (c2, pi2, rad), q in terms.items():
                q = as_rational(q)
                if q:
                    if rad != 1:
                        s, rad = squarefree_split(int(rad))
                        q *= s
                    key = (int(c2), int(pi2), int(rad))
                    clean[key] = clean.get(key, 0) + q
        self._terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "ExactScalar":
        # trusted constructor: terms already normalized
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    # construction helpers -------------------------------------------------
    @classmethod
    def rational(cls, q) -> "ExactScalar":
        q = as_rational(q)
        return cls._raw({(0, 0, 1): q} if q else {})

    @classmethod
    def monomial(cls, q=1, c2: int = 0, pi2: int = 0, rad: int = 1) -> "ExactScalar":
        return cls({(c2, pi2, rad): q})

    @classmethod
    def c(cls, power=1) -> "ExactScalar":
        """``c**power``; ``power`` may be a half-integer."""
        return cls({(_doubled(power), 0, 1): 1})

    @classmethod
    def pi(cls, power=1) -> "ExactScalar":
        return cls({(0, _doubled(power), 1): 1})

    @classmethod
    def sqrt(cls, q) -> "ExactScalar":
        """Exact square root of a nonnegative rational."""
        q = as_rational(q)
        if q < 0:
            raise ValueError("square root of a negative rational")
        if not q:
            return cls._raw({})
        num, den = int(q.numerator), int(q.denominator)
        s, d = squarefree_split(num * den)
        return cls({(0, 0, d): Rational(s, den)})

    @staticmethod
    def coerce(value) -> "ExactScalar":
        if isinstance(value, ExactScalar):
            return value
        return ExactScalar.rational(value)

    # inspection ----------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_rational(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0, 0, 1) in self._terms)

    def to_rational(self) -> Rational:
        if not self.is_rational():
            raise ValueError(f"{self} is not a pure rational")
        return self._terms.get((0, 0, 1), Rational(0))

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def evaluate(self, c_val: float = 1.0) -> float:
        """Float value at ``c = c_val`` (``c_val > 0``)."""
        if c_val <= 0:
            raise ValueError("numeric evaluation needs c > 0")
        total = 0.0
        for (c2, pi2, rad), q in self._terms.items():
            total += (float(q) * c_val ** (c2 / 2) * math.pi ** (pi2 / 2)
                      * math.sqrt(rad))
        return total

    __float__ = evaluate

    def substitute_c(self, c_val) -> "ExactScalar":
        """Replace the symbol ``c`` by a positive rational, exactly."""
        c_val = as_rational(c_val)
        if c_val <= 0:
            raise ValueError("c must be positive")
        root = None
        out = ExactScalar._raw({})
        for (c2, pi2, rad), q in self._terms.items():
            term = ExactScalar._raw({(0, pi2, rad): q * c_val ** (c2 // 2)})
            if c2 % 2:
                if root is None:
                    root = ExactScalar.sqrt(c_val)
                term = term * root
            out = out + term
        return out

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return ExactScalar._raw(kernels.scalar_add(self._terms, other._terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return ExactScalar._raw(kernels.scalar_add(self._terms, other._terms, -1))

    def __rsub__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return ExactScalar._raw({k: -v for k, v in self._terms.items()})

    def __mul__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return ExactScalar._raw(kernels.scalar_mul(self._terms, other._terms))

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        """Inverse of a single-term scalar; sums are not invertible here."""
        if len(self._terms) != 1:
            raise ZeroDivisionError(f"cannot invert non-monomial {self}")
        ((c2, pi2, rad), q), = self._terms.items()
        # 1/sqrt(d) = sqrt(d)/d
        return ExactScalar._raw({(-c2, -pi2, rad): 1 / (q * rad)})

    def __truediv__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        out = ExactScalar.rational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        other = _maybe(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # rendering -------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, ((c2, pi2, rad), q) in enumerate(self.sorted_terms()):
            neg = q < 0
            factors = []
            mag = -q if neg else q
            if mag != 1:
                factors.append(str(mag))
            if rad != 1:
                factors.append(f"sqrt({rad})")
            if c2:
                factors.append("c" + _power_suffix(c2))
            if pi2:
                factors.append("pi" + _power_suffix(pi2))
            body = "*".join(factors) if factors else "1"
            if i == 0:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"ExactScalar({self})"

    def to_json(self) -> dict:
        out = []
        for (c2, pi2, rad), q in self.sorted_terms():
            item = {"num": str(int(q.numerator)), "den": str(int(q.denominator)),
                    "c2": c2, "pi2": pi2}
            if rad != 1:
                item["rad"] = rad
            out.append(item)
        return {"terms": out}

    @classmethod
    def from_json(cls, data: Mapping) -> "ExactScalar":
        terms = {}
        for item in data["terms"]:
            key = (int(item["c2"]), int(item["pi2"]), int(item.get("rad", 1)))
            terms[key] = Rational(int(item["num"]), int(item["den"]))
        return cls(terms)


def _doubled(power) -> int:
    twice = as_rational(power) * 2
    if twice.denominator != 1:
        raise ValueError(f"exponent {power} is not a half-integer")
    return int(twice)


def _power_suffix(doubled: int) -> str:
    if doubled == 2:
        return ""
    if doubled % 2 == 0:
        return f"^{doubled // 2}"
    return f"^({doubled}/2)"


def _maybe(value):
    if isinstance(value, ExactScalar):
        return value
    if isinstance(value, float):
        return NotImplemented
    try:
        return ExactScalar.rational(value)
    except (TypeError, ValueError):
        return NotImplemented


ZERO = ExactScalar()
ONE = ExactScalar.rational(1)
C = ExactScalar.c()
PI = ExactScalar.pi()


def exact_sum(values: Iterable) -> ExactScalar:
    acc: dict = {}
    for v in values:
        acc = kernels.scalar_add(acc, ExactScalar.coerce(v)._terms)
    return ExactScalar._raw(acc)


def gamma_half(z) -> ExactScalar:
    """Gamma function at a positive half-integer, exactly.

    >>> str(gamma_half(Rational(5, 2)))
    '3/4*pi^(1/2)'
    """
    z = as_rational(z)
    twice = z * 2
    if z <= 0 or twice.denominator != 1:
        raise ValueError(f"gamma_half needs a positive half-integer, got {z}")
    n2 = int(twice)
    if n2 % 2 == 0:
        return ExactScalar.rational(math.factorial(n2 // 2 - 1))
    # Gamma(n + 1/2) = (2n)! / (4**n n!) * sqrt(pi)
    n = n2 // 2
    return ExactScalar.monomial(
        Rational(math.factorial(2 * n), 4 ** n * math.factorial(n)), pi2=1)


def rate_power(rho, doubled_exp: int) -> ExactScalar:
    """``(1/rho) ** (doubled_exp / 2)`` exactly."""
    inv = 1 / as_rational(rho)
    whole = inv ** (doubled_exp // 2)
    if doubled_exp % 2 == 0:
        return ExactScalar.rational(whole)
    return ExactScalar.sqrt(inv) * whole


def gaussian_moment(a: int, b: int, rho) -> ExactScalar:
    """Integral of ``x0**a r**b exp(-rho (x0^2 + r^2) / c)`` over R x [0, inf).

    The ``x0`` integral runs over the whole line, the ``r`` integral over the
    half line; ``c`` stays symbolic.
    """
    rho = as_rational(rho)
    if rho <= 0:
        raise ValueError("gaussian_moment diverges for rho <= 0")
    if a < 0 or b < 0:
        raise ValueError("moment exponents must be nonnegative")
    if a % 2:
        return ZERO
    n2 = a + b + 2
    return (Rational(1, 2) * gamma_half(Rational(a + 1, 2))
            * gamma_half(Rational(b + 1, 2))
            * ExactScalar.monomial(1, c2=n2) * rate_power(rho, n2))
