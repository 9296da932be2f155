"""Exact-arithmetic toolkit for homotopes of finite-dimensional algebras
and trilinear tensors: structure-constant algebras, delta-homotopes and
unit augmentation, determinantal isotopy certificates, binary-quartic
invariants, and finite-field fingerprint censuses."""

from .algebra import (
    Algebra,
    SplitWitness,
    is_isomorphism_witness,
    probe_idempotent_split,
)
from .constructions import (
    Quiver,
    doubled_chain_quiver,
    ground_field_algebra,
    kronecker_quiver,
    matrix_algebra,
    matrix_element,
    path_algebra,
    pencil_tensor,
    quantum_exterior,
    two_dim_homotope,
    two_dim_nonassoc,
    well_tempered_embed,
    word16,
    word16_delta,
)
from .errors import BudgetExceeded, FieldMismatch
from .fingerprints import (
    SplittingReport,
    enumerate_idempotents,
    enumerate_square_zero,
    idempotent_commutator_fingerprint,
    mu_spectrum,
    verify_homotope_splitting,
)
from .linalg import LinearMap, Matrix, rank_normal_form
from .poly import (
    BinaryQuartic,
    Polynomial,
    QuarticInvariants,
    det_linear_matrix,
    proportional,
    quartic_invariants,
)
from .scalars import Field
from .tensor import (
    HomotopyTriple,
    Trilinear,
    act,
    cone_check,
    contract_slot,
    contract_slot_symbolic,
    det_poly,
    pencil_quartic,
    pihs_curve_criterion,
    rank_stratum_count,
    restrict,
)

__version__ = "0.1.0"
