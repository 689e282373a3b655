"""Normal forms and discrete invariants of bundles on C*/<q>.

Every indecomposable bundle of rank r and degree d is, up to a point of
the torus, a twist of a unipotent bundle: writing h = gcd(r, d), the
normal form is the block cyclic matrix built from the h x h Jordan block
A_h(a) scaled by the d/h-th power of the degree one line factor

    phi0(u) = s^(-1) u^(-1),        s = exp(pi i tau).

The degree of a factor is minus the winding number of its determinant
around the unit circle; for a monomial determinant c u^k that is -k, so
phi0 itself has degree one.  Parameters a live on the torus itself and
are stored as the canonical representative in the annulus |q| < |a| <= 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .laurent import (
    DetVanishesOnCstar,
    LaurentMatrix,
    LaurentPoly,
    Torus,
)
from .cocycle import FactorOfAutomorphy, _is_triangular, _partition_at
from .isogeny import IsogenyContext, companion_block, pushforward

__all__ = [
    "BundleDescriptor",
    "reduce_param",
    "jordan_factor_matrix",
    "phi0",
    "normal_form_deg0",
    "normal_form",
    "atiyah_construct",
    "degree",
    "rank",
    "recognize_deg0",
    "descriptor_to_json",
    "descriptor_from_json",
]


@dataclass(frozen=True)
class BundleDescriptor:
    """Discrete classification data: rank, degree, and the torus point
    parametrizing the determinant, stored as its canonical annulus
    representative."""

    rank: int
    degree: int
    param: complex

    def __post_init__(self) -> None:
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ValueError(f"rank must be a positive integer, got {self.rank!r}")
        if not isinstance(self.degree, int):
            raise ValueError(f"degree must be an integer, got {self.degree!r}")
        if complex(self.param) == 0:
            raise ValueError("param must be a nonzero complex number")
        object.__setattr__(self, "param", complex(self.param))


def descriptor_to_json(d: BundleDescriptor) -> dict:
    return {"rank": d.rank, "degree": d.degree, "param": [d.param.real, d.param.imag]}


def descriptor_from_json(data: dict) -> BundleDescriptor:
    re, im = data["param"]
    return BundleDescriptor(int(data["rank"]), int(data["degree"]), complex(float(re), float(im)))


def reduce_param(t: Torus, a: complex, max_power: Optional[int] = None) -> complex:
    """Canonical representative of a mod <q> in the annulus |q| < |a| <= 1.

    Points with |a| exactly on the boundary |q|^m are resolved upward, so
    |a| = |q| maps to modulus one.  The reduction is a group homomorphism
    C* -> annulus up to the identification by <q>.
    """
    a = complex(a)
    if a == 0:
        raise ValueError("param must be nonzero")
    q = t.q
    ratio = math.log(abs(a)) / math.log(abs(q))
    m = math.ceil(-ratio - 1e-9)
    out = a * q ** m
    while abs(out) > 1.0 + 1e-9:
        m += 1
        out = a * q ** m
    while abs(out) <= abs(q) * (1.0 + 1e-9):
        m -= 1
        out = a * q ** m
    if max_power is not None and abs(m) > max_power:
        raise ValueError(f"reduction exponent {m} exceeds the allowed range {max_power}")
    return out


def jordan_factor_matrix(r: int, a: complex) -> LaurentMatrix:
    """The constant Jordan block A_r(a): a on the diagonal, 1 above it."""
    if r < 1:
        raise ValueError(f"need r >= 1, got {r}")
    a = complex(a)
    rows = [
        [
            LaurentPoly.constant(a) if i == j else (LaurentPoly.one() if j == i + 1 else LaurentPoly.zero())
            for j in range(r)
        ]
        for i in range(r)
    ]
    return LaurentMatrix(rows, prune=False)


def phi0(t: Torus) -> LaurentPoly:
    """The degree one line bundle factor s^(-1) u^(-1)."""
    return LaurentPoly.monomial(-1, 1.0 / t.s)


def _phi0_power(t: Torus, d: int) -> LaurentPoly:
    return LaurentPoly.monomial(-d, t.s ** (-d))


def normal_form_deg0(t: Torus, r: int, a: complex) -> FactorOfAutomorphy:
    """Degree zero indecomposable of rank r and parameter a: the constant
    factor A_r(a)."""
    if complex(a) == 0:
        raise ValueError("param must be nonzero")
    return FactorOfAutomorphy(t, jordan_factor_matrix(r, a))


def normal_form(t: Torus, r: int, d: int, a: complex) -> FactorOfAutomorphy:
    """Indecomposable of rank r, degree d, parameter a != 0.

    With h = gcd(r, d) (h = r when d = 0), r' = r/h, d' = d/h the
    generator is the block cyclic matrix [[0, I], [G, 0]] on blocks of
    size h, with G = phi0^d' A_h(a); for r' = 1 it is G itself.
    """
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"rank must be a positive integer, got {r!r}")
    if not isinstance(d, int):
        raise ValueError(f"degree must be an integer, got {d!r}")
    if complex(a) == 0:
        raise ValueError("param must be nonzero")
    h = math.gcd(r, abs(d)) if d != 0 else r
    rp = r // h
    dp = d // h
    core = jordan_factor_matrix(h, a).scaled(_phi0_power(t, dp))
    return FactorOfAutomorphy(t, companion_block(core, rp))


def atiyah_construct(t: Torus, r: int, d: int, a: complex) -> FactorOfAutomorphy:
    """The same bundle as normal_form, built through the isogeny: the
    twisted Jordan factor lives on the degree r' cover and is pushed
    forward to the base."""
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"rank must be a positive integer, got {r!r}")
    if not isinstance(d, int):
        raise ValueError(f"degree must be an integer, got {d!r}")
    if complex(a) == 0:
        raise ValueError("param must be nonzero")
    h = math.gcd(r, abs(d)) if d != 0 else r
    rp = r // h
    dp = d // h
    ctx = IsogenyContext.for_degree(t, rp)
    core = jordan_factor_matrix(h, a).scaled(_phi0_power(t, dp))
    return pushforward(ctx, FactorOfAutomorphy(ctx.cover, core))


def rank(f: FactorOfAutomorphy) -> int:
    return f.A.n


def degree(f: FactorOfAutomorphy) -> int:
    """Minus the winding number of det A around the unit circle.

    A monomial determinant c u^k gives -k directly.  Otherwise the
    winding number is the count of roots inside the unit circle plus the
    order at zero; roots with modulus in [1e-6, 1e6] are treated as lying
    on C* and raise DetVanishesOnCstar, since then the degree is not
    defined.
    """
    det = f.A.det()
    if det.is_zero:
        raise DetVanishesOnCstar("determinant is identically zero")
    mono = det.is_monomial()
    if mono is not None:
        return -mono[0]
    lo, dense = det._dense()
    roots = np.roots(dense[::-1])
    bad = [z for z in roots if 1e-6 <= abs(z) <= 1e6]
    if bad:
        raise DetVanishesOnCstar(
            f"determinant has roots at modulus {[abs(z) for z in bad]} in the working annulus"
        )
    inside = sum(1 for z in roots if abs(z) < 1.0)
    return -(lo + inside)


def recognize_deg0(f: FactorOfAutomorphy, nu_range: int = 64) -> Optional[BundleDescriptor]:
    """Invert normal_form_deg0 up to the torus identification.

    Accepts constant triangular generators; returns the descriptor
    (rank, 0, canonical parameter) when the matrix is a single Jordan
    block at one eigenvalue, None when the Jordan type does not match.
    nu_range bounds the power of q allowed in the parameter reduction.
    """
    if not f.A.is_constant():
        raise ValueError("recognition needs a constant generator")
    m = f.A.constant_matrix()
    if not _is_triangular(m):
        raise ValueError("recognition needs a triangular generator")
    n = f.A.n
    diag = np.diag(m)
    lam = complex(diag[0])
    if any(abs(v - lam) > 1e-8 * (1.0 + abs(lam)) for v in diag):
        return None
    if _partition_at(m, lam) != (n,):
        return None
    return BundleDescriptor(n, 0, reduce_param(f.torus, lam, max_power=nu_range))
