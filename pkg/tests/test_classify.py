"""Normal forms, degree and recognition of the discrete invariants."""

import cmath
import math

import numpy as np
import pytest

from torusbundles import (
    BundleDescriptor,
    DetVanishesOnCstar,
    FactorOfAutomorphy,
    LaurentMatrix,
    LaurentPoly,
    Torus,
    atiyah_construct,
    degree,
    descriptor_from_json,
    descriptor_to_json,
    jordan_factor_matrix,
    matrices_close,
    normal_form,
    normal_form_deg0,
    phi0,
    rank,
    recognize_deg0,
    reduce_param,
    tensor,
)
from helpers import random_factor, winding_on_unit_circle


# ---------------------------------------------------------------------------
# parameter reduction
# ---------------------------------------------------------------------------

def test_reduce_param_fixed_points(any_torus):
    q = any_torus.q
    for a in (0.5, 1.0, -0.25 + 0.3j, cmath.exp(1j)):
        got = reduce_param(any_torus, a)
        assert abs(got - a) <= 1e-12 * abs(a)
    assert abs(q) < abs(reduce_param(any_torus, 0.5)) <= 1.0


def test_reduce_param_strips_powers_of_q(any_torus):
    q = any_torus.q
    a = 0.37 - 0.82j
    for m in (-3, -1, 1, 2, 5):
        got = reduce_param(any_torus, a * q ** m)
        assert abs(got - a) <= 1e-9 * abs(a)


def test_reduce_param_boundary_goes_up(torus):
    # |a| = |q| is identified with modulus one, not kept at the bottom
    q = torus.q
    a = q * cmath.exp(0.4j) / abs(q) * abs(q)  # modulus exactly |q|
    got = reduce_param(torus, a)
    assert abs(abs(got) - 1.0) <= 1e-9


def test_reduce_param_is_multiplicative(any_torus, rng):
    q = any_torus.q
    for _ in range(25):
        x = cmath.exp(2j * math.pi * rng.uniform()) * abs(q) ** rng.uniform(-2, 2)
        y = cmath.exp(2j * math.pi * rng.uniform()) * abs(q) ** rng.uniform(-2, 2)
        lhs = reduce_param(any_torus, x * y)
        rhs = reduce_param(any_torus, reduce_param(any_torus, x) * reduce_param(any_torus, y))
        assert abs(lhs - rhs) <= 1e-9 * abs(lhs)


def test_reduce_param_range_cap(torus):
    with pytest.raises(ValueError):
        reduce_param(torus, torus.q ** 12, max_power=5)
    with pytest.raises(ValueError):
        reduce_param(torus, 0.0)


# ---------------------------------------------------------------------------
# building blocks
# ---------------------------------------------------------------------------

def test_jordan_factor_matrix_shape():
    m = jordan_factor_matrix(3, 0.5j).eval_at(1.0)
    want = np.array([[0.5j, 1, 0], [0, 0.5j, 1], [0, 0, 0.5j]])
    assert np.allclose(m, want)
    with pytest.raises(ValueError):
        jordan_factor_matrix(0, 1.0)


def test_phi0_is_degree_one(any_torus):
    f = FactorOfAutomorphy(any_torus, LaurentMatrix([[phi0(any_torus)]]))
    assert degree(f) == 1
    # value check: phi0(u) = 1 / (s u)
    u = 0.3 - 0.9j
    assert abs(phi0(any_torus)(u) - 1.0 / (any_torus.s * u)) <= 1e-12


# ---------------------------------------------------------------------------
# normal forms
# ---------------------------------------------------------------------------

def test_normal_form_rank_one(torus):
    f = normal_form(torus, 1, 0, 0.7)
    assert matrices_close(f.A, LaurentMatrix([[LaurentPoly.constant(0.7)]]))
    g = normal_form(torus, 1, 2, 0.7)
    want = LaurentPoly.monomial(-2, 0.7 * torus.s ** -2)
    assert matrices_close(g.A, LaurentMatrix([[want]]))


def test_normal_form_deg0_is_jordan_block(torus):
    f = normal_form(torus, 3, 0, 0.7)
    assert matrices_close(f.A, jordan_factor_matrix(3, 0.7))
    assert matrices_close(normal_form_deg0(torus, 3, 0.7).A, f.A)


def test_normal_form_coprime_case(torus):
    # rank 2, degree 1: cyclic block over the degree one line factor
    f = normal_form(torus, 2, 1, 1.0)
    u = 0.8 + 0.1j
    m = f.A.eval_at(u)
    assert np.allclose(m[0], [0, 1])
    assert abs(m[1, 0] - 1.0 / (torus.s * u)) <= 1e-12
    assert abs(m[1, 1]) == 0


def test_normal_form_mixed_gcd(torus):
    # rank 4, degree 2: two cyclic blocks of the twisted 2x2 Jordan factor
    f = normal_form(torus, 4, 2, 0.6)
    assert rank(f) == 4
    assert degree(f) == 2
    m = f.A.eval_at(1.0)
    assert np.allclose(m[0:2, 2:4], np.eye(2))
    core = (jordan_factor_matrix(2, 0.6).scaled(phi0(torus))).eval_at(1.0)
    assert np.allclose(m[2:4, 0:2], core)


def test_normal_form_validation(torus):
    with pytest.raises(ValueError):
        normal_form(torus, 0, 1, 1.0)
    with pytest.raises(ValueError):
        normal_form(torus, 2, 1, 0.0)
    with pytest.raises(ValueError):
        normal_form(torus, 2, 1.5, 1.0)


def test_atiyah_construct_matches_normal_form(any_torus):
    for r, d in [(1, 0), (1, 3), (2, 1), (3, 2), (4, 2), (5, -3), (6, 4)]:
        lhs = normal_form(any_torus, r, d, 0.8j)
        rhs = atiyah_construct(any_torus, r, d, 0.8j)
        assert matrices_close(lhs.A, rhs.A, 1e-12)


# ---------------------------------------------------------------------------
# degree
# ---------------------------------------------------------------------------

def test_degree_of_monomials(torus):
    for k in (-3, -1, 0, 2):
        f = FactorOfAutomorphy(torus, LaurentMatrix([[LaurentPoly.monomial(k, 1.7)]]))
        assert degree(f) == -k


def test_degree_matches_winding_oracle(any_torus, rng):
    for _ in range(10):
        f = random_factor(rng, any_torus, 2)
        det = f.A.det()
        assert degree(f) == -winding_on_unit_circle(det)


def test_degree_of_normal_forms(any_torus):
    for r in range(1, 5):
        for d in range(-4, 5):
            f = normal_form(any_torus, r, d, 0.5 + 0.1j)
            assert rank(f) == r
            assert degree(f) == d


def test_degree_rejects_root_on_annulus(torus):
    f = FactorOfAutomorphy(torus, LaurentMatrix([[LaurentPoly({0: 1.0, 1: 0.5})]]))
    with pytest.raises(DetVanishesOnCstar):
        degree(f)


def test_degree_ignores_far_roots(torus):
    # det = u (u + 1e7): the huge root is outside the working annulus,
    # the factor u contributes winding one
    a = LaurentPoly({0: 1e7, 1: 1.0})
    f = FactorOfAutomorphy(torus, LaurentMatrix([[LaurentPoly.zero(), LaurentPoly.monomial(1)],
                                                 [a.__neg__(), LaurentPoly.zero()]]))
    det = f.A.det()
    assert det.is_monomial() is None
    assert degree(f) == -1
    assert degree(f) == -winding_on_unit_circle(det)


def test_degree_additive_under_tensor(torus):
    f = normal_form(torus, 2, 1, 0.9)
    g = normal_form(torus, 3, 2, 0.4)
    # det(A x B) = det A^rank(B) * det B^rank(A)
    assert degree(tensor(f, g)) == 3 * 1 + 2 * 2


# ---------------------------------------------------------------------------
# recognition
# ---------------------------------------------------------------------------

def test_recognize_round_trip(any_torus, rng):
    q = any_torus.q
    for r in (1, 2, 3, 5):
        for _ in range(5):
            a = cmath.exp(2j * math.pi * rng.uniform()) * abs(q) ** rng.uniform(0.0, 0.98)
            desc = recognize_deg0(normal_form_deg0(any_torus, r, a))
            assert desc is not None
            assert desc.rank == r
            assert desc.degree == 0
            assert abs(desc.param - a) <= 1e-8 * abs(a)


def test_recognize_reduces_parameter(torus):
    a = 0.3 + 0.4j
    desc = recognize_deg0(normal_form_deg0(torus, 2, a * torus.q ** 3))
    assert desc is not None
    assert abs(desc.param - a) <= 1e-8 * abs(a)


def test_recognize_rejects_decomposable(torus):
    # diagonal with equal entries is two line bundles, not one block
    f = FactorOfAutomorphy(torus, LaurentMatrix.from_constant(0.5 * np.eye(2)))
    assert recognize_deg0(f) is None
    # distinct eigenvalues are not a single Jordan block either
    g = FactorOfAutomorphy(torus, LaurentMatrix.from_constant(np.diag([0.5, 0.7])))
    assert recognize_deg0(g) is None


def test_recognize_input_contract(torus, rng):
    nonconst = FactorOfAutomorphy(torus, LaurentMatrix([[LaurentPoly.monomial(1)]]))
    with pytest.raises(ValueError):
        recognize_deg0(nonconst)
    full = FactorOfAutomorphy(torus, LaurentMatrix.from_constant(
        np.array([[1.0, 0.3], [0.2, 1.0]])))
    with pytest.raises(ValueError):
        recognize_deg0(full)


def test_recognize_nu_range_cap(torus):
    with pytest.raises(ValueError):
        recognize_deg0(normal_form_deg0(torus, 2, torus.q ** 40), nu_range=8)


# ---------------------------------------------------------------------------
# descriptors
# ---------------------------------------------------------------------------

def test_descriptor_json_round_trip():
    d = BundleDescriptor(3, -2, 0.25 - 0.75j)
    back = descriptor_from_json(descriptor_to_json(d))
    assert back == d


def test_descriptor_validation():
    with pytest.raises(ValueError):
        BundleDescriptor(0, 0, 1.0)
    with pytest.raises(ValueError):
        BundleDescriptor(2, 0, 0.0)
    with pytest.raises(ValueError):
        BundleDescriptor(2, 0.5, 1.0)
