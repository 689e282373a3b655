"""Pullback, pushforward and the companion block identities."""

import numpy as np
import pytest

from torusbundles import (
    FactorOfAutomorphy,
    IsogenyContext,
    LaurentMatrix,
    LaurentPoly,
    Torus,
    block_diagonal,
    block_product_identity,
    companion_block,
    degree,
    iterate,
    matrices_close,
    pullback,
    pushforward,
    rank,
    roundtrip_diag,
)
from helpers import random_monomial_det_matrix, random_single_exponent_factor


@pytest.fixture
def ctx():
    base = Torus(0.3 + 1.1j)
    return IsogenyContext.for_degree(base, 3)


# ---------------------------------------------------------------------------
# context
# ---------------------------------------------------------------------------

def test_context_construction():
    base = Torus(1j)
    ctx = IsogenyContext.for_degree(base, 4)
    assert ctx.cover.tau == 4j
    assert ctx.r == 4
    # cover nome is the r-th power of the base nome
    assert abs(ctx.cover.q - base.q ** 4) <= 1e-12 * abs(ctx.cover.q)


def test_context_rejects_wrong_cover():
    with pytest.raises(ValueError):
        IsogenyContext(Torus(1j), Torus(2.5j), 2)
    with pytest.raises(ValueError):
        IsogenyContext.for_degree(Torus(1j), 0)
    with pytest.raises(ValueError):
        IsogenyContext.for_degree(Torus(1j), 2.0)


def test_degree_one_is_identity_transport(rng):
    base = Torus(1j)
    ctx = IsogenyContext.for_degree(base, 1)
    f = random_single_exponent_factor(rng, base, 2)
    assert matrices_close(pullback(ctx, f).A, f.A)
    assert matrices_close(pushforward(ctx, f).A, f.A)


# ---------------------------------------------------------------------------
# pullback
# ---------------------------------------------------------------------------

def test_pullback_is_iterate_in_base_nome(ctx, rng):
    f = random_single_exponent_factor(rng, ctx.base, 2)
    up = pullback(ctx, f)
    assert up.torus == ctx.cover
    assert matrices_close(up.A, iterate(f, 3), 1e-10)


def test_pullback_torus_mismatch(ctx, rng):
    f = random_single_exponent_factor(rng, ctx.cover, 2)
    with pytest.raises(ValueError):
        pullback(ctx, f)


def test_pullback_multiplies_degree(ctx):
    # det u^(-1) has degree 1 downstairs, r upstairs
    f = FactorOfAutomorphy(ctx.base, LaurentMatrix([[LaurentPoly.monomial(-1, 2.0)]]))
    assert degree(f) == 1
    assert degree(pullback(ctx, f)) == 3


# ---------------------------------------------------------------------------
# companion blocks and pushforward
# ---------------------------------------------------------------------------

def test_companion_block_layout(torus, rng):
    a = random_monomial_det_matrix(rng, 2)
    c = companion_block(a, 3)
    assert c.n == 6
    eye = np.eye(2)
    u0 = 0.7 + 0.2j
    m = c.eval_at(u0)
    assert np.allclose(m[0:2, 2:4], eye)
    assert np.allclose(m[2:4, 4:6], eye)
    assert np.allclose(m[4:6, 0:2], a.eval_at(u0))
    assert np.allclose(m[0:2, 0:2], 0)


def test_pushforward_shape_and_torus(ctx, rng):
    f = random_single_exponent_factor(rng, ctx.cover, 2)
    down = pushforward(ctx, f)
    assert down.torus == ctx.base
    assert rank(down) == 6


def test_pushforward_preserves_degree(ctx):
    f = FactorOfAutomorphy(ctx.cover, LaurentMatrix([[LaurentPoly.monomial(-2, 1.5)]]))
    assert degree(f) == 2
    assert degree(pushforward(ctx, f)) == 2


# ---------------------------------------------------------------------------
# the product identity for companions
# ---------------------------------------------------------------------------

def test_block_product_identity_by_hand(torus):
    # two 1x1 blocks a and b: [[0,1],[a,0]] @ [[0,1],[b,0]] = diag(b, a)
    a = LaurentMatrix([[LaurentPoly.monomial(1, 2.0)]])
    b = LaurentMatrix([[LaurentPoly.constant(3.0)]])
    got = block_product_identity([a, b])
    want = block_diagonal([b, a])
    assert matrices_close(got, want)


def test_block_product_identity_random(rng):
    for r in (2, 3, 5):
        blocks = [random_monomial_det_matrix(rng, 2) for _ in range(r)]
        got = block_product_identity(blocks)
        want = block_diagonal(list(reversed(blocks)))
        assert matrices_close(got, want, 1e-10)


def test_block_product_rejects_mixed_sizes(rng):
    with pytest.raises(ValueError):
        block_product_identity([
            random_monomial_det_matrix(rng, 2),
            random_monomial_det_matrix(rng, 3),
        ])


# ---------------------------------------------------------------------------
# round trip
# ---------------------------------------------------------------------------

def test_roundtrip_diagonalizes(ctx, rng):
    f = random_single_exponent_factor(rng, ctx.cover, 2)
    trip = pullback(ctx, pushforward(ctx, f))
    blocks = roundtrip_diag(ctx, f)
    assert len(blocks) == ctx.r
    assert all(b.torus == ctx.cover for b in blocks)
    want = block_diagonal([b.A for b in blocks])
    assert matrices_close(trip.A, want, 1e-9)


def test_roundtrip_first_block_is_f(ctx, rng):
    f = random_single_exponent_factor(rng, ctx.cover, 2)
    blocks = roundtrip_diag(ctx, f)
    assert matrices_close(blocks[0].A, f.A)
    # later blocks substitute the base nome, not the cover nome
    q = ctx.base.q
    assert matrices_close(blocks[1].A, f.A.substitute_scaled(q), 1e-12)


def test_pushforward_rank_times_degree_bookkeeping(ctx):
    # rank r * n and degree preserved combine to the slope dividing by r
    f = FactorOfAutomorphy(ctx.cover, LaurentMatrix([[LaurentPoly.monomial(-1, 1.0)]]))
    down = pushforward(ctx, f)
    assert (rank(f), degree(f)) == (1, 1)
    assert (rank(down), degree(down)) == (3, 1)
