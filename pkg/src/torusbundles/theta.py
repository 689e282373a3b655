"""Theta functions with characteristics and their automorphy factors.

For a characteristic xi = a*tau + b the series

    theta_xi(z) = sum_n exp(pi i (n+a)^2 tau) exp(2 pi i (n+a)(z+b))

converges for Im tau > 0 and transforms under lattice translations
z -> z + p*tau + n by the scalar factor

    e_xi(p*tau + n, z) = exp(2 pi i a (p*tau + n) - pi i p^2 tau
                             - 2 pi i p (z + xi)).

For xi = 0 and p = 1, n = 0 this factor is exp(-pi i tau - 2 pi i z),
the value of the degree one line factor phi0 at u = exp(2 pi i z); that
bridge ties the additive theta picture to the multiplicative factors
used elsewhere in the package.  theta_xi vanishes exactly on the lattice
translates of 1/2 + tau/2 - xi (for xi = 0 and half characteristics the
sign of xi does not matter modulo the lattice).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .laurent import Torus

__all__ = [
    "ThetaCharacteristic",
    "ThetaReport",
    "theta_eval",
    "e_factor",
    "theta_zero",
    "verify_theta_function",
]


@dataclass(frozen=True)
class ThetaCharacteristic:
    """The pair (a, b) encoding the characteristic xi = a*tau + b."""

    a: float = 0.0
    b: float = 0.0

    def value(self, t: Torus) -> complex:
        return self.a * t.tau + self.b


@dataclass(frozen=True)
class ThetaReport:
    """Outcome of a sampled functional equation check."""

    max_residual: float
    samples: int
    passed: bool

    def to_json_dict(self) -> dict:
        return {"max_residual": self.max_residual, "samples": self.samples, "pass": self.passed}


def theta_eval(t: Torus, xi: ThetaCharacteristic, z: complex, terms: int = 40) -> complex:
    """Truncated theta series, summing n from -terms to terms.

    The tail drops off like exp(-pi Im(tau) n^2), so the default 40 terms
    is far below double precision for any modulus of interest.
    """
    if terms < 1:
        raise ValueError(f"terms must be positive, got {terms}")
    a, b = xi.a, xi.b
    tau = t.tau
    zb = complex(z) + b
    total = 0j
    for n in range(-terms, terms + 1):
        na = n + a
        total += cmath.exp(1j * cmath.pi * na * na * tau + 2j * cmath.pi * na * zb)
    return total


def e_factor(t: Torus, xi: ThetaCharacteristic, p: int, n: int, z: complex) -> complex:
    """Automorphy factor of theta_xi for the lattice shift p*tau + n."""
    gamma = p * t.tau + n
    xival = xi.value(t)
    return cmath.exp(
        2j * cmath.pi * xi.a * gamma
        - 1j * cmath.pi * p * p * t.tau
        - 2j * cmath.pi * p * (complex(z) + xival)
    )


def theta_zero(t: Torus, xi: ThetaCharacteristic, m: int = 0, n: int = 0) -> complex:
    """The zero 1/2 + tau/2 - xi shifted by the lattice point m + n*tau.

    theta_xi(z) equals exp(pi i a^2 tau + 2 pi i a (z+b)) times
    theta_0(z + xi), so its zeros are the zeros of theta_0 moved by -xi.
    """
    return 0.5 + 0.5 * t.tau - xi.value(t) + m + n * t.tau


def verify_theta_function(
    t: Torus,
    f: Callable[[int, int, complex], complex],
    s: Callable[[complex], complex],
    samples: int,
    rng: Optional[np.random.Generator] = None,
    tolerance: float = 1e-9,
    p_range: int = 2,
) -> ThetaReport:
    """Sample the functional equation s(z + gamma) = f(p, n, z) s(z).

    Draws ``samples`` points z = alpha + beta*tau with alpha, beta
    uniform in [0.05, 0.95] and checks every lattice shift gamma =
    p*tau + n with |p|, |n| <= p_range.  Residuals are scaled by
    1 + the magnitude of the compared values, since the raw values vary
    over dozens of orders of magnitude with p.
    """
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}")
    if rng is None:
        rng = np.random.default_rng(0)
    worst = 0.0
    for _ in range(samples):
        alpha, beta = rng.uniform(0.05, 0.95, size=2)
        z = alpha + beta * t.tau
        for p in range(-p_range, p_range + 1):
            for n in range(-p_range, p_range + 1):
                lhs = s(z + p * t.tau + n)
                rhs = f(p, n, z) * s(z)
                scale = 1.0 + max(abs(lhs), abs(rhs))
                worst = max(worst, abs(lhs - rhs) / scale)
    return ThetaReport(max_residual=worst, samples=samples, passed=worst <= tolerance)
