"""convexmap: certify or refute convexity of maps on discretized spaces.

A space is a finite graph whose vertices carry values in R^n and whose
edges promise monotone-straight arcs in the underlying space; on top of
that model the package computes map distances, midpoints, straightened
paths, level-set structure, and the local-to-global verification
report, with brute-force oracles and example generators to match.
"""

from .geometry import (
    DimensionMismatchError,
    HullRepresentation,
    Tolerances,
    are_collinear_midpoint,
    convex_hull,
    hull_contains,
    is_monotone_straight,
    path_length,
)
from .space import (
    EmbeddedSpace,
    FiberComponent,
    SpaceValidationError,
    VertexRecord,
    fiber_components,
    induced_subspace,
    is_connected,
    load_space,
    load_space_file,
    neighborhood_component,
    saturation_epsilon,
    space_to_document,
    subspace_from_vertices,
)
from .metric import (
    NoPathError,
    PsiPathResult,
    dyadic_straighten,
    midpoint_between,
    psi_distance,
    shortest_psi_path,
    straight_path_between,
)
from .verify import (
    LevelSampling,
    Report,
    ReportConfig,
    Verdict,
    WitnessRecord,
    cover_chain,
    local_to_global_report,
    verify_convex_map,
    verify_fiber_connectivity,
    verify_image_convexity,
    verify_local_convexity,
    verify_openness,
)
from .gridsets import (
    GridSet,
    grid_from_cells,
    grid_from_raster,
    is_locally_convex,
    load_grid,
    segment_inside_oracle,
    tn_verdict,
    to_embedded_space,
    uniform_local_convexity_radius,
)
from .gallery import (
    GeneratorSpec,
    build_from_spec,
    cone_openness_epsilon,
    default_gallery,
    gen_cn_moment,
    gen_cylinder_map,
    gen_local_model,
    gen_parabola_map,
    gen_sphere,
    gen_weighted_moment,
)

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]
