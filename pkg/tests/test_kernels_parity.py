import os
import random
import subprocess
import sys

import pytest

from slice_clifford import kernels
from slice_clifford.exact_scalar import Rational

py = kernels.load("python")
try:
    cy = kernels.load("cython")
except ImportError:
    cy = None

needs_ext = pytest.mark.skipif(cy is None, reason="compiled kernels not built")


def rand_q(rng):
    return Rational(rng.randint(-9, 9) or 1, rng.randint(1, 6))


def rand_scalar(rng, n=3):
    return {(rng.randint(-4, 4), rng.randint(0, 4), rng.choice((1, 2, 3, 6))): rand_q(rng)
            for _ in range(n)}


def rand_poly(rng, n=6):
    return {(rng.randint(0, 4), rng.randint(0, 4), rng.randint(0, 3), rng.randint(-2, 2),
             rng.randint(0, 2), rng.choice((1, 1, 2, 3))): rand_q(rng) for _ in range(n)}


def rand_mv(rng, n=5):
    return {(rng.randrange(16), rng.randint(0, 2), 0, rng.choice((1, 2))): rand_q(rng)
            for _ in range(n)}


def test_backend_selected():
    assert kernels.BACKEND in ("python", "cython")
    with pytest.raises(ValueError):
        kernels.load("fortran")


@needs_ext
@pytest.mark.parametrize("seed", range(25))
def test_backends_agree(seed):
    rng = random.Random(seed)
    x, y = rand_scalar(rng), rand_scalar(rng)
    p, q = rand_poly(rng), rand_poly(rng)
    u, v = rand_mv(rng), rand_mv(rng)
    assert py.scalar_add(x, y, -1) == cy.scalar_add(x, y, -1)
    assert py.scalar_mul(x, y) == cy.scalar_mul(x, y)
    assert py.poly_add(p, q, -1) == cy.poly_add(p, q, -1)
    assert py.poly_scale(p, x) == cy.poly_scale(p, x)
    assert py.poly_mul(p, q) == cy.poly_mul(p, q)
    assert py.poly_left_basis(p, 3, 2) == cy.poly_left_basis(p, 3, 2)
    for name in ("poly_dirac", "poly_dx0", "poly_dr", "poly_euler", "poly_r_dr",
                 "poly_laplacian", "poly_conj"):
        assert getattr(py, name)(p) == getattr(cy, name)(p), name
    assert py.poly_pair_project(p, q) == cy.poly_pair_project(p, q)
    assert py.mv_mul(u, v) == cy.mv_mul(u, v)
    for a in range(16):
        for b in range(16):
            assert py.blade_sign(a, b) == cy.blade_sign(a, b)
    assert py.rad_mul(6, 10) == cy.rad_mul(6, 10) == (2, 15)


@pytest.mark.parametrize("pure", ["1", "0"])
def test_env_switch(pure):
    env = dict(os.environ, SLICE_CLIFFORD_PURE=pure)
    out = subprocess.run([sys.executable, "-c", "from slice_clifford import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    if pure == "1":
        assert out.stdout.strip() == "python"
    elif cy is not None:
        assert out.stdout.strip() == "cython"
