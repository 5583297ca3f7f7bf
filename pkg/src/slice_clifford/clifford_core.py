"""Sparse multivectors in the real Clifford algebra Cl_n with e_i**2 = -1.

Blades are stored as bitmasks of generator indices; coefficients are
:class:`~slice_clifford.exact_scalar.ExactScalar`. Internally a multivector is
one flat term map ``{(mask, c2, pi2, rad): q}`` so the geometric product is a
single kernel loop.
"""

from __future__ import annotations

import random
from typing import Iterable, Mapping

from . import kernels
from .exact_scalar import ExactScalar, Rational


class DimensionError(ValueError):
    """Operands live in Clifford algebras of different dimension."""


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        bit = 1 << i
        if mask & bit:
            raise ValueError(f"repeated generator index {i} in blade")
        mask |= bit
    return mask


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def blade_name(mask: int) -> str:
    return "".join(f"e{i}" for i in indices_of(mask)) or "1"


def _blade_reorder_sign(indices: Iterable[int]) -> int:
    # sign of the permutation sorting ``indices`` (distinct entries)
    idx = list(indices)
    sign = 1
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign


class Multivector:
    """Immutable multivector of ``Cl_dim``."""

    __slots__ = ("dim", "_terms")

    def __init__(self, dim: int, blades: Mapping | None = None):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        self.dim = dim
        terms: dict = {}
        for idx, coeff in (blades or {}).items():
            if isinstance(idx, int):
                mask, sign = idx, 1
            else:
                idx = tuple(idx)
                mask, sign = mask_of(idx), _blade_reorder_sign(idx)
            if mask >> dim:
                raise DimensionError(f"blade {idx} outside Cl_{dim}")
            coeff = ExactScalar.coerce(coeff)
            for (c2, pi2, rad), q in coeff.items():
                key = (mask, c2, pi2, rad)
                terms[key] = terms.get(key, 0) + (q if sign > 0 else -q)
        self._terms = {k: v for k, v in terms.items() if v}

    @classmethod
    def _raw(cls, dim: int, terms: dict) -> "Multivector":
        obj = cls.__new__(cls)
        obj.dim = dim
        obj._terms = terms
        return obj

    # constructors -----------------------------------------------------------
    @classmethod
    def scalar(cls, dim: int, value=1) -> "Multivector":
        return cls(dim, {(): value})

    @classmethod
    def generator(cls, dim: int, i: int) -> "Multivector":
        return cls(dim, {(i,): 1})

    @classmethod
    def blade(cls, dim: int, indices: Iterable[int], value=1) -> "Multivector":
        return cls(dim, {tuple(indices): value})

    @classmethod
    def vector(cls, coords: Iterable) -> "Multivector":
        coords = list(coords)
        return cls(len(coords), {(i,): x for i, x in enumerate(coords)})

    # inspection ------------------------------------------------------------
    def coeff(self, indices: Iterable[int] = ()) -> ExactScalar:
        mask = indices if isinstance(indices, int) else mask_of(indices)
        return ExactScalar._raw({(c2, p2, r): q for (m, c2, p2, r), q in self._terms.items()
                                 if m == mask})

    def blades(self) -> dict[tuple[int, ...], ExactScalar]:
        grouped: dict = {}
        for (m, c2, p2, r), q in self._terms.items():
            grouped.setdefault(m, {})[(c2, p2, r)] = q
        return {indices_of(m): ExactScalar._raw(t)
                for m, t in sorted(grouped.items(), key=lambda kv: (bin(kv[0]).count("1"), kv[0]))}

    def grades(self) -> set[int]:
        return {bin(k[0]).count("1") for k in self._terms}

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    # arithmetic --------------------------------------------------------------
    def _check(self, other: "Multivector") -> None:
        if other.dim != self.dim:
            raise DimensionError(f"Cl_{self.dim} vs Cl_{other.dim}")

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        self._check(other)
        return Multivector._raw(self.dim, kernels.scalar_add(self._terms, other._terms))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        self._check(other)
        return Multivector._raw(self.dim, kernels.scalar_add(self._terms, other._terms, -1))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Multivector._raw(self.dim, {k: -v for k, v in self._terms.items()})

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return geometric_product(self, other)

    def __rmul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return geometric_product(other, self)

    def _lift(self, other):
        if isinstance(other, Multivector):
            return other
        if isinstance(other, float):
            return NotImplemented
        try:
            return Multivector.scalar(self.dim, ExactScalar.coerce(other))
        except (TypeError, ValueError):
            return NotImplemented

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        return hash((self.dim, frozenset(self._terms.items())))

    # rendering --------------------------------------------------------------
    def __str__(self) -> str:
        blades = self.blades()
        if not blades:
            return "0"
        parts = []
        for idx, coeff in blades.items():
            name = blade_name(mask_of(idx))
            text = str(coeff)
            if name == "1":
                parts.append(text)
            elif coeff.is_monomial():
                if text == "1":
                    parts.append(name)
                elif text == "-1":
                    parts.append("-" + name)
                else:
                    parts.append(f"{text}*{name}")
            else:
                parts.append(f"({text})*{name}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Multivector(Cl_{self.dim}: {self})"

    def to_json(self) -> dict:
        return {"dim": self.dim,
                "blades": [{"idx": list(idx), "coeff": coeff.to_json()}
                           for idx, coeff in self.blades().items()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Multivector":
        return cls(int(data["dim"]),
                   {tuple(b["idx"]): ExactScalar.from_json(b["coeff"]) for b in data["blades"]})


def geometric_product(u: Multivector, v: Multivector) -> Multivector:
    if u.dim != v.dim:
        raise DimensionError(f"Cl_{u.dim} vs Cl_{v.dim}")
    return Multivector._raw(u.dim, kernels.mv_mul(u._terms, v._terms))


def conjugate(u: Multivector) -> Multivector:
    """Clifford conjugation: grade-g blades pick up (-1)**(g(g+1)/2)."""
    out = {}
    for key, q in u._terms.items():
        g = bin(key[0]).count("1")
        out[key] = -q if (g * (g + 1) // 2) & 1 else q
    return Multivector._raw(u.dim, out)


def scalar_part(u: Multivector) -> ExactScalar:
    return u.coeff(0)


def random_multivector(dim: int, rng: random.Random, n_terms: int = 3,
                       max_num: int = 5) -> Multivector:
    """Sparse multivector with small random rational coefficients."""
    blades = {}
    for _ in range(n_terms):
        mask = rng.randrange(1 << dim)
        blades[mask] = Rational(rng.randint(-max_num, max_num), rng.randint(1, max_num))
    return Multivector(dim, blades)


def verify_tilde_embedding(m: int, seed: int = 0) -> dict[str, bool]:
    """Check that ``b_i = E0 E_i`` in ``Cl_{m+1}`` behave like fresh generators.

    Returns one boolean per relation family:

    * ``"bivector_relations"``: ``b_i b_j + b_j b_i == -2 delta_ij``;
    * ``"e0_anticommutes"``: ``E0 b_i == -b_i E0``;
    * ``"paravector_to_vector"``: ``E0 (x0 + sum x_i E_i) == x0 E0 + sum x_i b_i``
      for random rational coordinates, with the right side a 1-vector once
      ``b_i`` are relabelled as generators.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    n = m + 1
    e = [Multivector.generator(n, i) for i in range(n)]
    minus_two = Multivector.scalar(n, -2)
    zero = Multivector(n)
    b = [None] + [e[0] * e[i] for i in range(1, n)]

    bivector_ok = all(
        b[i] * b[j] + b[j] * b[i] == (minus_two if i == j else zero)
        for i in range(1, n) for j in range(1, n))
    e0_ok = all(e[0] * b[i] == -(b[i] * e[0]) for i in range(1, n))

    rng = random.Random(seed)
    para_ok = True
    for _ in range(5):
        xs = [Rational(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(n)]
        para = Multivector.scalar(n, xs[0])
        for i in range(1, n):
            para = para + e[i] * xs[i]
        image = e[0] * xs[0]
        for i in range(1, n):
            image = image + b[i] * xs[i]
        para_ok &= (e[0] * para == image)
        # in the new basis the image has exactly one coordinate per generator
        para_ok &= image.grades() <= {1, 2} and all(
            image.coeff(mask) == 0 for mask in range(1 << n)
            if mask not in {1} | {1 | (1 << i) for i in range(1, n)})
    return {"bivector_relations": bivector_ok, "e0_anticommutes": e0_ok,
            "paravector_to_vector": bool(para_ok)}
