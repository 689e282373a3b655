"""Vector bundles on complex tori C*/<q>, described by matrix factors of
automorphy with Laurent polynomial entries."""

from .laurent import (
    CLOSE_TOL,
    PRUNE_REL,
    DetVanishesOnCstar,
    LaurentMatrix,
    LaurentPoly,
    NotInvertibleInRing,
    NotNilpotent,
    Torus,
    TorusBundleError,
    block_diagonal,
    matrices_close,
    matrix_from_json,
    matrix_to_json,
    passes_sampled_invertibility,
    poly_close,
    same_torus,
    torus_from_json,
    torus_to_json,
)
from .cocycle import (
    EquivalenceWitness,
    FactorOfAutomorphy,
    check_witness,
    equivalent_constant,
    factor_from_json,
    factor_to_json,
    is_trivial_rank1_constant,
    is_trivial_unipotent2,
    iterate,
    jordan_type_unipotent,
)
from .functors import clebsch_gordan_F, dual, sym_power, tensor, wedge_power
from .isogeny import (
    IsogenyContext,
    block_product_identity,
    companion_block,
    pullback,
    pushforward,
    roundtrip_diag,
)
from .classify import (
    BundleDescriptor,
    atiyah_construct,
    degree,
    descriptor_from_json,
    descriptor_to_json,
    jordan_factor_matrix,
    normal_form,
    normal_form_deg0,
    phi0,
    rank,
    recognize_deg0,
    reduce_param,
)
from .theta import (
    ThetaCharacteristic,
    ThetaReport,
    e_factor,
    theta_eval,
    theta_zero,
    verify_theta_function,
)

__version__ = "0.1.0"
