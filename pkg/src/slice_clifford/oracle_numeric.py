"""Floating-point oracle for the exact engine.

Nothing here goes through ExactScalar arithmetic, the slice product table or
the Gaussian moments: coefficients are read off the raw term keys, S is
multiplied as the quaternions (1, e0, w, w e0) -> (1, i, j, -k), Clifford
products use a separately built blade table, and integrals are tensor
Gauss-Legendre rules on a truncated box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .slice_model import DressedFunction, SlicePoly

REL_TOL = 1e-9
BOX_SCALE = 12.0


@dataclass(frozen=True)
class NumericPoint:
    x0: float
    r: float
    omega: tuple
    c_val: float = 1.0

    def __post_init__(self):
        omega = tuple(float(v) for v in self.omega)
        if abs(math.fsum(v * v for v in omega) - 1.0) > 1e-12:
            raise ValueError(f"omega {omega} is not a unit vector")
        if self.r <= 0 or self.c_val <= 0:
            raise ValueError("r and c must be positive")
        object.__setattr__(self, "omega", omega)

    @property
    def m(self) -> int:
        return len(self.omega)


# --- scalars ---------------------------------------------------------------

def key_value(c2: int, pi2: int, rad: int, q, c_val: float) -> float:
    # term key (c^(c2/2) pi^(pi2/2) sqrt(rad)) * q
    return float(q) * c_val ** (c2 / 2) * math.pi ** (pi2 / 2) * math.sqrt(rad)


def scalar_value(x, c_val: float) -> float:
    return math.fsum(key_value(c2, p2, rad, q, c_val) for (c2, p2, rad), q in x.items())


# --- Clifford algebra with e_i^2 = -1, rebuilt independently ---------------

@lru_cache(maxsize=None)
def _blade_table(dim: int) -> tuple[np.ndarray, np.ndarray]:
    size = 1 << dim
    sign = np.empty((size, size))
    index = np.empty((size, size), dtype=int)
    for a in range(size):
        for b in range(size):
            # move each generator of b leftwards past the higher generators of a
            swaps = 0
            for i in range(dim):
                if b >> i & 1:
                    swaps += bin(a >> (i + 1)).count("1")
            squares = bin(a & b).count("1")
            sign[a, b] = -1.0 if (swaps + squares) % 2 else 1.0
            index[a, b] = a ^ b
    return sign, index


def cl_mul(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    size = u.shape[-1]
    dim = size.bit_length() - 1
    sign, index = _blade_table(dim)
    out = np.zeros(np.broadcast_shapes(u.shape, v.shape))
    for a in range(size):
        ua = u[..., a]
        if not np.any(ua):
            continue
        for b in range(size):
            out[..., index[a, b]] += sign[a, b] * ua * v[..., b]
    return out


def cl_conj(u: np.ndarray) -> np.ndarray:
    size = u.shape[-1]
    signs = np.array([(-1.0) ** (g * (g + 1) // 2) for g in (bin(i).count("1") for i in range(size))])
    return u * signs


def multivector_array(mv, c_val: float) -> np.ndarray:
    out = np.zeros(1 << mv.dim)
    for idx, coeff in mv.blades().items():
        # blades() yields sorted index tuples, so no reordering sign
        mask = sum(1 << i for i in idx)
        out[mask] = scalar_value(coeff, c_val)
    return out


def s_images(omega: Sequence[float]) -> np.ndarray:
    """Rows: images of 1, e0, w, w e0 in ``Cl_{m+1}`` for a fixed direction."""
    dim = len(omega) + 1
    size = 1 << dim
    one = np.zeros(size)
    one[0] = 1.0
    e0 = np.zeros(size)
    e0[1] = 1.0
    w = np.zeros(size)
    for i, v in enumerate(omega):
        w[1 << (i + 1)] = v
    return np.stack([one, e0, w, cl_mul(w, e0)])


# --- quaternion model of S -------------------------------------------------

# w e0 -> -k; the map is diagonal and its own inverse
_TO_QUAT = np.array([1.0, 1.0, 1.0, -1.0])


def quat_mul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    a1, b1, c1, d1 = np.moveaxis(p, -1, 0)
    a2, b2, c2, d2 = np.moveaxis(q, -1, 0)
    return np.stack([a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                     a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                     a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                     a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2], axis=-1)


def s_mul_numeric(s: np.ndarray, t: np.ndarray) -> np.ndarray:
    return quat_mul(s * _TO_QUAT, t * _TO_QUAT) * _TO_QUAT


def s_conj_numeric(s: np.ndarray) -> np.ndarray:
    return s * np.array([1.0, -1.0, -1.0, -1.0])


# --- evaluation ------------------------------------------------------------

def _grouped(poly: SlicePoly, c_val: float) -> dict[tuple[int, int], np.ndarray]:
    # {(b, s): coefficients of x0^0..x0^a} for Horner in x0
    groups: dict[tuple[int, int], dict[int, float]] = {}
    for (a, b, s, c2, p2, rad), q in poly._terms.items():
        row = groups.setdefault((b, s), {})
        row[a] = row.get(a, 0.0) + key_value(c2, p2, rad, q, c_val)
    out = {}
    for key, row in groups.items():
        coeffs = np.zeros(max(row) + 1)
        for a, v in row.items():
            coeffs[a] = v
        out[key] = coeffs
    return out


def eval_slice(poly: SlicePoly, x0, r, c_val: float) -> np.ndarray:
    """S-valued polynomial on arrays ``x0``, ``r``; last axis holds (1, e0, w, w e0)."""
    x0 = np.asarray(x0, dtype=float)
    r = np.asarray(r, dtype=float)
    shape = np.broadcast_shapes(x0.shape, r.shape)
    out = np.zeros(shape + (4,))
    for (b, s), coeffs in _grouped(poly, c_val).items():
        acc = np.zeros(shape)
        for v in coeffs[::-1]:
            acc = acc * x0 + v
        out[..., s] += acc * r ** b
    return out


def eval_dressed(f: DressedFunction, x0, r, c_val: float) -> np.ndarray:
    gauss = np.exp(-float(f.rate) * (np.asarray(x0) ** 2 + np.asarray(r) ** 2) / c_val)
    return eval_slice(f.poly, x0, r, c_val) * gauss[..., None]


def eval_at(f: DressedFunction, p: NumericPoint) -> np.ndarray:
    """Value of ``f`` in ``Cl_{m+1}`` (blade-coefficient vector) at a point."""
    s = eval_dressed(f, p.x0, p.r, p.c_val)
    value = s @ s_images(p.omega)
    if f.right is not None:
        value = cl_mul(value, multivector_array(f.right, p.c_val))
    return value


def fd_check_d0(f: DressedFunction, p: NumericPoint, h: float = 1e-5) -> float:
    """Max blade discrepancy between central-difference and symbolic ``D0 f``."""
    from .operators import apply_D0

    if h <= 0 or p.r <= h:
        raise ValueError("need 0 < h < r")
    shift = lambda dx0, dr: eval_at(f, NumericPoint(p.x0 + dx0, p.r + dr, p.omega, p.c_val))
    d_x0 = (shift(h, 0) - shift(-h, 0)) / (2 * h)
    d_r = (shift(0, h) - shift(0, -h)) / (2 * h)
    images = s_images(p.omega)
    numeric = cl_mul(images[1], d_x0) + cl_mul(images[2], d_r)
    symbolic = eval_at(apply_D0(f), p)
    return float(np.max(np.abs(numeric - symbolic)))


# --- quadrature ------------------------------------------------------------

def sphere_area_numeric(m: int) -> float:
    return 2 * math.pi ** (m / 2) / math.gamma(m / 2)


@dataclass
class QuadResult:
    value: np.ndarray
    nodes: int
    converged: bool
    change: float


@lru_cache(maxsize=32)
def _legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(n)


@lru_cache(maxsize=256)
def _grid_values(f: DressedFunction, half: float, c_val: float, n: int) -> np.ndarray:
    t, _ = _legendre(n)
    X0, R = np.meshgrid(half * t, half * (t + 1) / 2, indexing="ij")
    return eval_dressed(f, X0, R, c_val)


def _box_integral(f: DressedFunction, g: DressedFunction, c_val: float, n: int) -> np.ndarray:
    rho = float(f.rate + g.rate)
    half = BOX_SCALE * math.sqrt(c_val / rho)
    _, w = _legendre(n)
    F = _grid_values(f, half, c_val, n)
    G = _grid_values(g, half, c_val, n)
    prod = s_mul_numeric(s_conj_numeric(F), G)
    weights = np.outer(half * w, half * w / 2)
    # only the 1 and e0 components survive the sphere
    return np.array([np.sum(prod[..., 0] * weights), np.sum(prod[..., 1] * weights)])


def quad_inner(f: DressedFunction, g: DressedFunction, m: int, c_val: float = 1.0,
               n_nodes: int = 48, max_nodes: int = 768) -> QuadResult:
    """Numeric ``<f, g>`` as a ``Cl_{m+1}`` blade vector.

    The box ``|x0|, r <= 12 sqrt(c / rho)`` drops a tail below
    ``exp(-144)`` times a polynomial factor. Node counts double until two
    successive rules agree to ``1e-9`` relative.
    """
    if f.rate + g.rate <= 0:
        raise ValueError("inner product needs a positive combined Gaussian rate")
    prev = _box_integral(f, g, c_val, n_nodes)
    n = n_nodes
    change = math.inf
    while n < max_nodes:
        n *= 2
        cur = _box_integral(f, g, c_val, n)
        scale = max(1.0, float(np.max(np.abs(cur))))
        change = float(np.max(np.abs(cur - prev))) / scale
        prev = cur
        if change <= REL_TOL:
            break
    area = sphere_area_numeric(m)
    size = 1 << (m + 1)
    value = np.zeros(size)
    value[0] = prev[0] * area
    value[1] = prev[1] * area
    if f.right is not None:
        value = cl_mul(cl_conj(multivector_array(f.right, c_val)), value)
    if g.right is not None:
        value = cl_mul(value, multivector_array(g.right, c_val))
    return QuadResult(value, n, change <= REL_TOL, change)


# --- comparison ------------------------------------------------------------

@dataclass
class CompareRow:
    f: str
    g: str
    m: int
    component: str
    exact: str
    exact_value: float
    numeric: float
    rel_error: float
    converged: bool

    def to_json(self) -> dict:
        return dict(self.__dict__)


def compare_inner(f: DressedFunction, g: DressedFunction, m: int, c_val: float,
                  labels: tuple[str, str]) -> list[CompareRow]:
    from .inner_product import inner

    exact = inner(f, g, m)
    quad = quad_inner(f, g, m, c_val)
    exact_arr = multivector_array(exact, c_val)
    rows = []
    for mask in sorted(set(np.nonzero(exact_arr)[0]) | set(np.nonzero(np.abs(quad.value) > 0)[0]) | {0}):
        e = float(exact_arr[mask])
        q = float(quad.value[mask])
        err = abs(q - e) / max(1.0, abs(e))
        idx = tuple(i for i in range(m + 1) if mask >> i & 1)
        name = "".join(f"e{i}" for i in idx) or "1"
        rows.append(CompareRow(labels[0], labels[1], m, name, str(exact.coeff(idx)), e, q, err,
                               quad.converged))
    return rows


def compare_table(j_max: int = 3, k_max: int = 3, ms: Iterable[int] = (2, 3),
                  c_val: float = 1.0, pairs: str = "all") -> list[CompareRow]:
    """Exact-vs-quadrature table over all pairs of ``psi_{j,k}``."""
    from .hermite import hermite_function

    funcs = [((j, k), hermite_function(j, k).value) for k in range(k_max + 1) for j in range(j_max + 1)]
    rows = []
    for m in ms:
        for (jk1, f) in funcs:
            for (jk2, g) in funcs:
                if pairs == "diagonal" and jk1 != jk2:
                    continue
                rows.extend(compare_inner(f, g, m, c_val, (f"psi{jk1}", f"psi{jk2}")))
    return rows


def fd_sample_points(m: int = 2, c_val: float = 1.0) -> list[NumericPoint]:
    dirs = {2: [(0.6, 0.8), (0.8, -0.6), (1.0, 0.0), (0.0, -1.0), (-0.28, 0.96)],
            3: [(0.6, 0.8, 0.0), (2 / 3, 1 / 3, 2 / 3), (0.0, 0.0, 1.0), (-0.48, 0.6, 0.64),
                (0.36, 0.48, -0.8)]}
    coords = [(0.3, 0.7), (-0.5, 1.2), (1.1, 0.4), (0.0, 2.0), (-1.3, 0.9)]
    return [NumericPoint(x0, r, w, c_val) for (x0, r), w in zip(coords, dirs[m])]

