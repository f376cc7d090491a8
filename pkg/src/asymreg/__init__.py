"""Certified rates of asymptotic regularity for averaged fixed-point
iterations in uniformly convex geodesic spaces, with numerical verification
of every bound at desk scale."""

from .config import (
    DEFAULT_MAX_STEPS,
    Caps,
    ConfigError,
    ExperimentConfig,
    config_from_dict,
    config_to_dict,
    load_config,
    loads_config,
    parse_angle,
    save_config,
    validate_config,
)
from .geometry import (
    EUCLIDEAN,
    POINCARE_DISK,
    DimensionMismatchError,
    GeometryError,
    ParameterRangeError,
    Point,
    PointOutsideModelError,
    SpaceModel,
    combine,
    dist,
    euclidean,
    make_point,
    poincare_disk,
    uc_modulus_eval,
)
from .iteration import (
    IterationError,
    Trajectory,
    ishikawa_step,
    partial_sums_alpha,
    run_trajectory,
    trajectory_to_csv,
)
from .mappings import (
    ApproxFixedPointSpec,
    DomainError,
    DomainSpec,
    MappingError,
    MappingSpec,
    WitnessError,
    apply_map,
    closed_ball,
    declared_fixed_point,
    derived_bound,
    euclidean_reflection_average,
    euclidean_rotation,
    identity,
    in_domain,
    metric_projection,
    poincare_rotation,
    validate_afp,
    whole_space,
    witness_point,
)
from .moduli import (
    DescriptorDomainError,
    DescriptorError,
    ModulusDescriptor,
    Schedule,
    ScheduleError,
    SequenceDescriptor,
    descriptor_from_dict,
    descriptor_to_dict,
    eta1_affine,
    eta1_to_eta,
    eta2_to_eta1,
    eta3_affine,
    eta3_k_plus_ceil,
    eta3_to_eta2,
    eta_constant,
    eta_hilbert,
    eta_quadratic,
    eta_to_eta1,
    eval_eta,
    eval_eta1,
    eval_eta3,
    eval_gamma,
    eval_nat,
    gamma_dyadic_shift,
    gamma_for_geometric_s,
    gamma_from_dyadic,
    gamma_geometric_tail,
    gamma_shifted,
    gamma_zero,
    omega_affine,
    omega_for_bounded_space,
    omega_for_lipschitz,
    omega_for_nonexpansive,
    omega_for_uniformly_continuous,
    seq_constant,
    seq_geometric,
    seq_tabulated,
    seq_value,
    seq_values_float,
    sequence_from_dict,
    sequence_to_dict,
    tabulated,
    theta_for_constant_lambda,
    theta_linear,
    validate_schedule,
    verify_gamma,
    verify_theta,
)
from .rates import (
    EtaDomainError,
    RateError,
    RateInputs,
    RateReport,
    compute_delta,
    compute_gamma0,
    compute_p,
    compute_phi,
    epsilon_shortcut,
    inputs_for,
)
from .report import FAIL, PASS, UNVERIFIED_AT_SCALE, CheckReport, Failure
from .verification import (
    HARD_STEP_CAP,
    check_delta_witness,
    check_dyadic_uc_implication,
    check_lemma_inequalities,
    check_nonexpansive,
    check_omega_majorization,
    check_phi_soundness,
    check_space_axioms,
    check_uc_implication,
    reference_point,
    sample_point,
    sample_point_near,
    trajectory_for,
)

__version__ = "0.1.0"
