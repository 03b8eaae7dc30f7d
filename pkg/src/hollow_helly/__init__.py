"""Exact Helly-type computations for hollow axis-aligned boxes."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    DimensionMismatch,
    EngineDisagreement,
    HellyError,
    InputError,
    PreconditionError,
    ResourceCapExceeded,
)
from .geometry import (  # noqa: E402
    Box,
    HollowBox,
    Interval,
    PointSet,
    Segment,
    box_contains,
    box_meet,
    facet,
    hollow_contains,
    hull,
    interior_contains,
    point,
    scalar,
    segment,
    vertex,
)
from .intersection import (  # noqa: E402
    Arrangement,
    Family,
    Kind,
    Member,
    build_grid,
    dfs_intersect,
    intersection_reps,
    oracle_intersect,
    subset_check,
)
from .extremal import (  # noqa: E402
    FacetFamilySpec,
    VertexFamilySpec,
    gen_facet_family,
    gen_vertex_family,
    pattern_of,
    recognize_facet_form,
    recognize_onedim_triple,
    recognize_vertex_form,
)
from .verify import (  # noqa: E402
    Lemma4Config,
    helly_defect,
    lemma4_trial,
    pi_k,
    verify_solid_helly,
    verify_theorem1,
    verify_theorem2,
)
