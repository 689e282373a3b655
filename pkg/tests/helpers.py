"""Shared samplers and independent oracles for the test suite."""

import cmath
import math

import numpy as np

from torusbundles import FactorOfAutomorphy, LaurentMatrix, LaurentPoly


def random_constant_invertible(rng, n, cond_cap=50.0):
    while True:
        m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        if np.linalg.cond(m) < cond_cap:
            return m


def random_monomial_det_matrix(rng, n, exp_lo=-2, exp_hi=2):
    """S @ diag(c_k u^(e_k)) @ T with constant invertible S, T.

    The determinant is a monomial and every entry is supported on the
    exponents of the diagonal, so supports stay inside [exp_lo, exp_hi].
    """
    for _ in range(20):
        s = random_constant_invertible(rng, n)
        t = random_constant_invertible(rng, n)
        exps = rng.integers(exp_lo, exp_hi + 1, size=n)
        phases = rng.uniform(0, 2 * math.pi, size=n)
        mags = rng.uniform(0.5, 1.5, size=n)
        diag = LaurentMatrix.diagonal(
            [LaurentPoly.monomial(int(e), m * cmath.exp(1j * p)) for e, m, p in zip(exps, mags, phases)]
        )
        out = LaurentMatrix.from_constant(s) @ diag @ LaurentMatrix.from_constant(t)
        if out.det().is_monomial():
            return out
    raise RuntimeError("could not sample a clean monomial-det matrix")


def random_factor(rng, torus, n, exp_lo=-2, exp_hi=2):
    return FactorOfAutomorphy(torus, random_monomial_det_matrix(rng, n, exp_lo, exp_hi))


def random_single_exponent_matrix(rng, n, exp_lo=-2, exp_hi=2):
    """u^e times a constant invertible matrix.

    Iterates and inverses of these keep one coefficient scale per entry,
    so they stay clear of the relative pruning threshold even on tori
    with |q| far below 1.  Mixed exponents do not survive that regime:
    a product over m twists spreads true coefficients across |q|^(m de)
    which for |q| ~ 2e-3 drops below pruning already at m de ~ 4.
    """
    e = int(rng.integers(exp_lo, exp_hi + 1))
    c = random_constant_invertible(rng, n)
    return LaurentMatrix([[LaurentPoly.monomial(e, c[i, j]) if c[i, j] != 0 else LaurentPoly.zero()
                           for j in range(n)] for i in range(n)])


def random_single_exponent_factor(rng, torus, n, exp_lo=-2, exp_hi=2):
    return FactorOfAutomorphy(torus, random_single_exponent_matrix(rng, n, exp_lo, exp_hi))


def random_laurent(rng, lo=-4, hi=4, max_terms=5):
    count = min(max_terms, hi - lo + 1)
    ks = rng.choice(np.arange(lo, hi + 1), size=count, replace=False)
    return LaurentPoly({int(k): complex(rng.normal(), rng.normal()) for k in ks})


def random_laurent_matrix(rng, n, lo=-1, hi=1, max_terms=3):
    return LaurentMatrix([[random_laurent(rng, lo, hi, max_terms) for _ in range(n)] for _ in range(n)])


def winding_on_unit_circle(p, samples=4096):
    """Winding number of u -> p(u) along |u| = 1, by accumulating phase
    increments; independent of the root counting used by the library."""
    vals = [p(cmath.exp(2j * math.pi * k / samples)) for k in range(samples)]
    total = 0.0
    for a, b in zip(vals, vals[1:] + vals[:1]):
        total += cmath.phase(b / a)
    return round(total / (2 * math.pi))
