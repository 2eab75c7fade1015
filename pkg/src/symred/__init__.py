"""symred: exact and numerical verification of toric/Grassmannian
symplectic reduction data, weighted contact spheres and the quaternionic
frame geometry of Stiefel quotients."""

from .contact import (
    ConstantHamiltonian,
    FlowState,
    LinearHamiltonian,
    contact_hamiltonian_field,
    flow,
    g0_generators,
    infinitesimal_action,
    level_tangent_basis,
    liouville,
    reeb,
    reeb_period,
    strictly_coisotropic_check,
)
from .lattice import (
    KernelLattice,
    conormal_matrix,
    find_weight_vector,
    is_even,
    kernel_lattice,
    minus_identity_in_torus,
    monotone_level_check,
    smith_normal_form,
)
from .moment import (
    AmbientPoint,
    GrassmannFactor,
    MomentValue,
    ReductionSpec,
    ambient_point,
    in_level_set,
    moment_G,
    moment_S1,
    moment_toric,
    moment_unitary,
    reduction_spec,
    sample_level,
    target_level,
)
from .quatgrass import (
    bC_matrix,
    double_cover_witness,
    k1_membership,
    k2_membership,
    legendrian_check,
    projective_inclusion_check,
    projector,
    quat_to_frame_b,
    sample_L1,
    sample_L2,
    su2_matrix,
    su2_right_action,
    wedge,
)
from .report import (
    BUILTIN_SPECS,
    Report,
    RunConfig,
    Tolerances,
    builtin_spec,
    derived_data,
    load_spec,
    run_suites,
)
from .toric import (
    DelzantData,
    InteriorPoint,
    PolytopeSpec,
    build_delzant,
    find_interior_point,
    normalized_polytope_spec,
    polytope_spec,
    stage_torus_data,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
