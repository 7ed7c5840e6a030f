"""Qubit kinematics rebuilt from lattice probability vectors and
collision-entropy-conserving quasi-bistochastic dynamics."""

from entroqubit.core import (
    DEFAULT_TOLERANCES,
    PI3,
    R3,
    ProbVector,
    Tolerances,
    apply,
    is_orthogonal,
    is_quasi_bistochastic,
    permutation_matrix,
)
from entroqubit.entropy import collision_norm, conserves_renyi, renyi_entropy
from entroqubit.dynamics3 import (
    classify_orthogonal_qbistoch3,
    decompose_bvn,
    make_sminus,
    make_splus,
    q_coefficients,
)
from entroqubit.dynamics4 import factorize, make_composed, make_elementary
from entroqubit.states import bloch_to_state, default_frame, state_to_bloch
from entroqubit.effects import is_valid_effect, make_effect, probability
from entroqubit.geometry import complete_basis, simplex_sphere_point, sphere_point
from entroqubit.oracle import lift_to_lattice, reflection_lift

__version__ = "0.1.0"
