"""Pure-Python hot kernels.

Every function here has a compiled twin in ``_ckernels.pyx`` with the same
signature and semantics; :mod:`slice_clifford.kernels` picks one at import.

Storage conventions shared by both backends:

* scalar term map: ``{(c2, pi2, rad): q}`` meaning ``sum q * c**(c2/2) *
  pi**(pi2/2) * sqrt(rad)`` with ``rad`` squarefree.
* slice polynomial term map: ``{(a, b, s, c2, pi2, rad): q}`` where ``s``
  indexes the basis ``(1, e0, w, w e0)`` and the monomial is ``x0**a r**b``.
* multivector term map: ``{(mask, c2, pi2, rad): q}`` with ``mask`` a bitmask
  of generator indices.

No map ever stores a zero coefficient.
"""

from math import gcd

# s_mul table for basis (1, e0, w, w e0): product of basis s and t is
# SIGN[4*s + t] * basis[IDX[4*s + t]].
S_SIGN = (
    1, 1, 1, 1,
    1, -1, -1, 1,
    1, 1, -1, -1,
    1, -1, 1, -1,
)
S_IDX = (
    0, 1, 2, 3,
    1, 0, 3, 2,
    2, 3, 0, 1,
    3, 2, 1, 0,
)
# conjugation fixes 1 and negates the other three basis elements
S_CONJ = (1, -1, -1, -1)


def rad_mul(r1, r2):
    """Return ``(g, r)`` with ``sqrt(r1) * sqrt(r2) == g * sqrt(r)``.

    Both inputs must be squarefree; the output radical is squarefree too.
    """
    if r1 == 1:
        return 1, r2
    if r2 == 1:
        return 1, r1
    g = gcd(r1, r2)
    return g, (r1 // g) * (r2 // g)


def blade_sign(a, b):
    """Sign from reordering the product of blades ``a`` and ``b`` (bitmasks).

    Counts transpositions needed to sort the concatenated index list and
    adds one factor of -1 for every generator squared (all square to -1).
    """
    swaps = 0
    x = a >> 1
    while x:
        swaps += bin(x & b).count("1")
        x >>= 1
    swaps += bin(a & b).count("1")
    return -1 if swaps & 1 else 1


def scalar_add(x, y, sign=1):
    out = dict(x)
    for key, q in y.items():
        v = out.get(key)
        if v is None:
            out[key] = q if sign == 1 else -q
        else:
            v = v + q if sign == 1 else v - q
            if v:
                out[key] = v
            else:
                del out[key]
    return out


def scalar_mul(x, y):
    out = {}
    for (c1, p1, r1), q1 in x.items():
        for (c2, p2, r2), q2 in y.items():
            g, r = rad_mul(r1, r2)
            key = (c1 + c2, p1 + p2, r)
            q = q1 * q2 * g if g != 1 else q1 * q2
            v = out.get(key)
            out[key] = q if v is None else v + q
    return {k: v for k, v in out.items() if v}


def poly_add(p, q, sign=1):
    out = dict(p)
    for key, v in q.items():
        w = out.get(key)
        if w is None:
            out[key] = v if sign == 1 else -v
        else:
            w = w + v if sign == 1 else w - v
            if w:
                out[key] = w
            else:
                del out[key]
    return out


def poly_scale(p, scalar):
    """Multiply a slice polynomial by a central scalar term map."""
    if not scalar:
        return {}
    out = {}
    for (a, b, s, c1, p1, r1), q1 in p.items():
        for (c2, p2, r2), q2 in scalar.items():
            g, r = rad_mul(r1, r2)
            key = (a, b, s, c1 + c2, p1 + p2, r)
            q = q1 * q2 * g if g != 1 else q1 * q2
            v = out.get(key)
            out[key] = q if v is None else v + q
    return {k: v for k, v in out.items() if v}


def poly_mul(p, q):
    """Product of two slice polynomials (non-commutative in ``s``)."""
    out = {}
    for (a1, b1, s1, c1, p1, r1), q1 in p.items():
        row = 4 * s1
        for (a2, b2, s2, c2, p2, r2), q2 in q.items():
            t = row + s2
            g, r = rad_mul(r1, r2)
            key = (a1 + a2, b1 + b2, S_IDX[t], c1 + c2, p1 + p2, r)
            v = q1 * q2 * g if g != 1 else q1 * q2
            if S_SIGN[t] < 0:
                v = -v
            w = out.get(key)
            out[key] = v if w is None else w + v
    return {k: v for k, v in out.items() if v}


def poly_left_basis(p, s, factor=1):
    """``factor * basis[s] * p`` for an integer ``factor``."""
    out = {}
    row = 4 * s
    for (a, b, t, c2, p2, r), q in p.items():
        u = row + t
        v = q * factor if S_SIGN[u] > 0 else -q * factor
        out[(a, b, S_IDX[u], c2, p2, r)] = v
    return out


def poly_dirac(p):
    """``e0 d/dx0 p + w d/dr p`` on a bare polynomial."""
    out = {}
    for (a, b, s, c2, p2, r), q in p.items():
        if a:
            u = 4 + s
            key = (a - 1, b, S_IDX[u], c2, p2, r)
            v = q * a if S_SIGN[u] > 0 else -q * a
            w = out.get(key)
            out[key] = v if w is None else w + v
        if b:
            u = 8 + s
            key = (a, b - 1, S_IDX[u], c2, p2, r)
            v = q * b if S_SIGN[u] > 0 else -q * b
            w = out.get(key)
            out[key] = v if w is None else w + v
    return {k: v for k, v in out.items() if v}


def poly_dx0(p):
    return {(a - 1, b, s, c2, p2, r): q * a
            for (a, b, s, c2, p2, r), q in p.items() if a}


def poly_dr(p):
    return {(a, b - 1, s, c2, p2, r): q * b
            for (a, b, s, c2, p2, r), q in p.items() if b}


def poly_euler(p):
    return {k: q * (k[0] + k[1]) for k, q in p.items() if k[0] + k[1]}


def poly_r_dr(p):
    return {k: q * k[1] for k, q in p.items() if k[1]}


def poly_laplacian(p):
    out = {}
    for (a, b, s, c2, p2, r), q in p.items():
        if a > 1:
            key = (a - 2, b, s, c2, p2, r)
            v = q * (a * (a - 1))
            w = out.get(key)
            out[key] = v if w is None else w + v
        if b > 1:
            key = (a, b - 2, s, c2, p2, r)
            v = q * (b * (b - 1))
            w = out.get(key)
            out[key] = v if w is None else w + v
    return {k: v for k, v in out.items() if v}


def poly_conj(p):
    return {k: (q if k[2] == 0 else -q) for k, q in p.items()}


def poly_pair_project(f, g):
    """Sphere-surviving part of ``conj(f) * g`` with odd ``x0`` powers dropped.

    Returns ``{(A, B, s, c2, pi2, rad): q}`` with ``s`` in ``{0, 1}`` only:
    the ``w`` and ``w e0`` components integrate to zero over the sphere and
    odd total ``x0`` exponents integrate to zero over the real line.
    """
    out = {}
    for (a1, b1, s1, c1, p1, r1), q1 in f.items():
        if s1:
            q1 = -q1
        row = 4 * s1
        par = a1 & 1
        for (a2, b2, s2, c2, p2, r2), q2 in g.items():
            if (a2 & 1) != par:
                continue
            t = row + s2
            u = S_IDX[t]
            if u > 1:
                continue
            g_, r = rad_mul(r1, r2)
            key = (a1 + a2, b1 + b2, u, c1 + c2, p1 + p2, r)
            v = q1 * q2 * g_ if g_ != 1 else q1 * q2
            if S_SIGN[t] < 0:
                v = -v
            w = out.get(key)
            out[key] = v if w is None else w + v
    return {k: v for k, v in out.items() if v}


def mv_mul(u, v):
    """Geometric product of multivector term maps."""
    out = {}
    for (m1, c1, p1, r1), q1 in u.items():
        for (m2, c2, p2, r2), q2 in v.items():
            g, r = rad_mul(r1, r2)
            key = (m1 ^ m2, c1 + c2, p1 + p2, r)
            w = q1 * q2 * g if g != 1 else q1 * q2
            if blade_sign(m1, m2) < 0:
                w = -w
            x = out.get(key)
            out[key] = w if x is None else x + w
    return {k: w for k, w in out.items() if w}
