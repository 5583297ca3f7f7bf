# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled twin of ``_pykernels``.

Exponents, basis indices and blade masks are C integers; coefficients stay
Python rationals, so results are bit-for-bit identical to the pure backend.
"""

from math import gcd

cdef int C_SIGN[16]
cdef int C_IDX[16]
C_SIGN[:] = [1, 1, 1, 1, 1, -1, -1, 1, 1, 1, -1, -1, 1, -1, 1, -1]
C_IDX[:] = [0, 1, 2, 3, 1, 0, 3, 2, 2, 3, 0, 1, 3, 2, 1, 0]

S_SIGN = tuple(C_SIGN[i] for i in range(16))
S_IDX = tuple(C_IDX[i] for i in range(16))
S_CONJ = (1, -1, -1, -1)


cdef extern from *:
    int __builtin_popcountll(unsigned long long)


cpdef tuple rad_mul(object r1, object r2):
    if r1 == 1:
        return 1, r2
    if r2 == 1:
        return 1, r1
    g = gcd(r1, r2)
    return g, (r1 // g) * (r2 // g)


cpdef int blade_sign(unsigned long long a, unsigned long long b):
    cdef int swaps = 0
    cdef unsigned long long x = a >> 1
    while x:
        swaps += __builtin_popcountll(x & b)
        x >>= 1
    swaps += __builtin_popcountll(a & b)
    return -1 if swaps & 1 else 1


cdef inline void _acc(dict out, tuple key, object v):
    w = out.get(key)
    out[key] = v if w is None else w + v


cdef dict _nonzero(dict out):
    return {k: v for k, v in out.items() if v}


def scalar_add(dict x, dict y, int sign=1):
    cdef dict out = dict(x)
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


def scalar_mul(dict x, dict y):
    cdef dict out = {}
    cdef int c1, p1, c2, p2
    for (c1, p1, r1), q1 in x.items():
        for (c2, p2, r2), q2 in y.items():
            if r1 == 1 and r2 == 1:
                _acc(out, (c1 + c2, p1 + p2, 1), q1 * q2)
            else:
                g, r = rad_mul(r1, r2)
                _acc(out, (c1 + c2, p1 + p2, r), q1 * q2 * g)
    return _nonzero(out)


def poly_add(dict p, dict q, int sign=1):
    cdef dict out = dict(p)
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


def poly_scale(dict p, dict scalar):
    if not scalar:
        return {}
    cdef dict out = {}
    cdef int a, b, s, c1, p1, c2, p2
    for (a, b, s, c1, p1, r1), q1 in p.items():
        for (c2, p2, r2), q2 in scalar.items():
            if r1 == 1 and r2 == 1:
                _acc(out, (a, b, s, c1 + c2, p1 + p2, 1), q1 * q2)
            else:
                g, r = rad_mul(r1, r2)
                _acc(out, (a, b, s, c1 + c2, p1 + p2, r), q1 * q2 * g)
    return _nonzero(out)


def poly_mul(dict p, dict q):
    cdef dict out = {}
    cdef int a1, b1, s1, c1, p1, a2, b2, s2, c2, p2, t
    for (a1, b1, s1, c1, p1, r1), q1 in p.items():
        for (a2, b2, s2, c2, p2, r2), q2 in q.items():
            t = 4 * s1 + s2
            if r1 == 1 and r2 == 1:
                r = 1
                v = q1 * q2
            else:
                g, r = rad_mul(r1, r2)
                v = q1 * q2 * g
            if C_SIGN[t] < 0:
                v = -v
            _acc(out, (a1 + a2, b1 + b2, C_IDX[t], c1 + c2, p1 + p2, r), v)
    return _nonzero(out)


def poly_left_basis(dict p, int s, factor=1):
    cdef dict out = {}
    cdef int a, b, t, c2, p2, u
    for (a, b, t, c2, p2, r), q in p.items():
        u = 4 * s + t
        v = q * factor if C_SIGN[u] > 0 else -q * factor
        out[(a, b, C_IDX[u], c2, p2, r)] = v
    return out


def poly_dirac(dict p):
    cdef dict out = {}
    cdef int a, b, s, c2, p2, u
    for (a, b, s, c2, p2, r), q in p.items():
        if a:
            u = 4 + s
            _acc(out, (a - 1, b, C_IDX[u], c2, p2, r), q * a if C_SIGN[u] > 0 else -q * a)
        if b:
            u = 8 + s
            _acc(out, (a, b - 1, C_IDX[u], c2, p2, r), q * b if C_SIGN[u] > 0 else -q * b)
    return _nonzero(out)


def poly_dx0(dict p):
    cdef int a, b, s, c2, p2
    return {(a - 1, b, s, c2, p2, r): q * a
            for (a, b, s, c2, p2, r), q in p.items() if a}


def poly_dr(dict p):
    cdef int a, b, s, c2, p2
    return {(a, b - 1, s, c2, p2, r): q * b
            for (a, b, s, c2, p2, r), q in p.items() if b}


def poly_euler(dict p):
    return {k: q * (k[0] + k[1]) for k, q in p.items() if k[0] + k[1]}


def poly_r_dr(dict p):
    return {k: q * k[1] for k, q in p.items() if k[1]}


def poly_laplacian(dict p):
    cdef dict out = {}
    cdef int a, b, s, c2, p2
    for (a, b, s, c2, p2, r), q in p.items():
        if a > 1:
            _acc(out, (a - 2, b, s, c2, p2, r), q * (a * (a - 1)))
        if b > 1:
            _acc(out, (a, b - 2, s, c2, p2, r), q * (b * (b - 1)))
    return _nonzero(out)


def poly_conj(dict p):
    return {k: (q if k[2] == 0 else -q) for k, q in p.items()}


def poly_pair_project(dict f, dict g):
    cdef dict out = {}
    cdef list left = []
    cdef list right = []
    cdef int a1, b1, s1, c1, p1, a2, b2, s2, c2, p2, t, u
    # unpack once; the double loop below is the hot spot of the Gram sweeps
    for (a1, b1, s1, c1, p1, r1), q1 in f.items():
        left.append((a1, b1, s1, c1, p1, r1, -q1 if s1 else q1))
    for (a2, b2, s2, c2, p2, r2), q2 in g.items():
        right.append((a2, b2, s2, c2, p2, r2, q2))
    for a1, b1, s1, c1, p1, r1, q1 in left:
        for a2, b2, s2, c2, p2, r2, q2 in right:
            if (a1 ^ a2) & 1:
                continue
            t = 4 * s1 + s2
            u = C_IDX[t]
            if u > 1:
                continue
            if r1 == 1 and r2 == 1:
                r = 1
                v = q1 * q2
            else:
                gg, r = rad_mul(r1, r2)
                v = q1 * q2 * gg
            if C_SIGN[t] < 0:
                v = -v
            _acc(out, (a1 + a2, b1 + b2, u, c1 + c2, p1 + p2, r), v)
    return _nonzero(out)


def mv_mul(dict u, dict v):
    cdef dict out = {}
    cdef unsigned long long m1, m2
    cdef int c1, p1, c2, p2
    for (m1, c1, p1, r1), q1 in u.items():
        for (m2, c2, p2, r2), q2 in v.items():
            if r1 == 1 and r2 == 1:
                r = 1
                w = q1 * q2
            else:
                g, r = rad_mul(r1, r2)
                w = q1 * q2 * g
            if blade_sign(m1, m2) < 0:
                w = -w
            _acc(out, (m1 ^ m2, c1 + c2, p1 + p2, r), w)
    return _nonzero(out)
