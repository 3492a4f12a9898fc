"""Cucker-Smale flocking dynamics on the hyperboloid model of hyperbolic
space: Minkowski-form geometry, projected RK4 integration, hyperbolic
Kuramoto reduction, and emergence diagnostics.
"""

__version__ = "0.1.0"

from .minkowski import (
    ConstraintError,
    ProjectionError,
    check_point,
    check_tangent,
    from_chart,
    minkowski_inner,
    project_point,
    project_tangent,
    tangent_norm,
    to_chart,
)
from .geometry import (
    Geodesic,
    chart_geodesic_oracle,
    covariant_accel,
    distance,
    geodesic_eval,
    log_map,
    parallel_transport,
    transport_ode_oracle,
)
from .triangles import (
    DegenerateTriangleError,
    HTriangle,
    area_angle_deficit,
    area_lhuilier,
    holonomy_defect,
    interior_angle,
    law_of_sines_residual,
)
from .dynamics import (
    BlowUpError,
    CommWeight,
    FlockState,
    ReductionError,
    SimConfig,
    dissipation_residual,
    geodesic_residual,
    geodesic_state,
    hcs_rhs,
    hk_matched_frequencies,
    hk_rhs_first_order,
    hk_rhs_second_order,
    initial_state,
    reduce_to_geodesic,
    rk4_step,
    simulate,
    simulate_hk_first,
    simulate_hk_second,
)
from .diagnostics import (
    DiagRecord,
    compute_record,
    coplanarity_det,
    energy,
    lemma41_max,
    lemma43_residual,
    max_misalignment,
    misalignment,
    speed_consensus,
)
