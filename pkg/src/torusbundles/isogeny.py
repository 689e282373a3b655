"""Transport of factors along the degree r isogeny C*/<q> -> C*/<q^r>.

The covering torus has modulus r*tau.  Pulling a bundle back along the
quotient map multiplies r consecutive translates of the generator;
pushing forward stacks r copies into a block cyclic companion matrix.
The round trip pullback(pushforward(f)) splits into the block diagonal
of the translates f.A(q^i u), which is the computational content of the
classification of bundles of coprime rank and degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .laurent import LaurentMatrix, LaurentPoly, Torus, _require_same_torus
from .cocycle import FactorOfAutomorphy, iterate

__all__ = [
    "IsogenyContext",
    "pullback",
    "pushforward",
    "roundtrip_diag",
    "block_product_identity",
    "companion_block",
]


@dataclass(frozen=True)
class IsogenyContext:
    """Base and cover tori for the isogeny of multiplicative degree r."""

    base: Torus
    cover: Torus
    r: int

    def __post_init__(self) -> None:
        if not isinstance(self.r, int) or self.r < 1:
            raise ValueError(f"isogeny degree must be a positive integer, got {self.r!r}")
        want = self.r * self.base.tau
        if abs(self.cover.tau - want) > 1e-9 * (1.0 + abs(want)):
            raise ValueError(
                f"cover modulus {self.cover.tau!r} is not r * base modulus {want!r}"
            )

    @classmethod
    def for_degree(cls, base: Torus, r: int) -> "IsogenyContext":
        if not isinstance(r, int) or r < 1:
            raise ValueError(f"isogeny degree must be a positive integer, got {r!r}")
        return cls(base, Torus(r * base.tau), r)


def pullback(ctx: IsogenyContext, f: FactorOfAutomorphy) -> FactorOfAutomorphy:
    """Pull a factor on the base up to the cover: the generator becomes
    A(q^(r-1) u) ... A(q u) A(u), the r step iterate in the base nome."""
    _require_same_torus(f.torus, ctx.base)
    return FactorOfAutomorphy(ctx.cover, iterate(f, ctx.r))


def companion_block(a: LaurentMatrix, r: int) -> LaurentMatrix:
    """The block cyclic matrix [[0, I], [a, 0]] with I of size (r-1) * n.

    For r = 1 this is just ``a``.
    """
    if r < 1:
        raise ValueError(f"need r >= 1, got {r}")
    if r == 1:
        return a
    n = a.n
    total = r * n
    zero = LaurentPoly.zero()
    one = LaurentPoly.one()
    rows = [[zero] * total for _ in range(total)]
    for i in range((r - 1) * n):
        rows[i][n + i] = one
    for i in range(n):
        for j in range(n):
            rows[(r - 1) * n + i][j] = a.entry(i, j)
    return LaurentMatrix(rows, prune=False)


def pushforward(ctx: IsogenyContext, f: FactorOfAutomorphy) -> FactorOfAutomorphy:
    """Push a factor on the cover down to the base as a block companion.

    The rank multiplies by r; the determinant picks up the sign
    (-1)^((r-1) n) from the cyclic block structure.
    """
    _require_same_torus(f.torus, ctx.cover)
    return FactorOfAutomorphy(ctx.base, companion_block(f.A, ctx.r))


def roundtrip_diag(ctx: IsogenyContext, f: FactorOfAutomorphy) -> list[FactorOfAutomorphy]:
    """The diagonal blocks of pullback(pushforward(f)) on the cover:
    the translates with generator f.A(q^i u), i = 0 .. r-1, in the base
    nome q."""
    _require_same_torus(f.torus, ctx.cover)
    q = ctx.base.q
    return [
        FactorOfAutomorphy(ctx.cover, f.A.substitute_scaled(q ** i))
        for i in range(ctx.r)
    ]


def block_product_identity(blocks: Sequence[LaurentMatrix]) -> LaurentMatrix:
    """Product M_1 M_2 ... M_r of the companions M_i = [[0, I], [A_i, 0]].

    Multiplying the companions of A_1 .. A_r in this order gives the
    block diagonal matrix diag(A_r, ..., A_1); this helper computes the
    left hand side so the identity can be checked externally.
    """
    r = len(blocks)
    if r == 0:
        raise ValueError("need at least one block")
    n = blocks[0].n
    for b in blocks:
        if b.n != n:
            raise ValueError(f"blocks must share one size, got {b.n} and {n}")
    acc = companion_block(blocks[0], r)
    for b in blocks[1:]:
        acc = acc @ companion_block(b, r)
    return acc
