"""wonderfan: exact min-plus seminorms on compactified apartments and the
boundary combinatorics of wonderful group compactifications."""

from .apartment import (
    ApartmentPoint,
    BoundaryPoint,
    ChartError,
    FanCone,
    boundary_pair,
    boundary_point,
    classify_stratum,
    converges,
    glue_equal,
    interior_point,
    origin,
    pair,
)
from .bigcell import (
    LAURENT,
    MONOID,
    CellPolynomial,
    RingFlagError,
    Seminorm,
    SeminormDomainError,
    cell_polynomial,
    eval_seminorm,
    poly_add,
    poly_mul,
    reconstruct,
    translate,
    weyl_transport,
)
from .rootsys import (
    ParabolicType,
    RootSystem,
    RootSystemError,
    WeylCapError,
    WeylElement,
    WeylGroup,
    build_root_system,
    levi_and_radical_roots,
    opposite_type,
    parse_system_spec,
    type_poset,
    weyl_group,
)
from .valued import INF, PAdicField, TAdicField, Val, ValError, tropical_min_plus, val_of
from .verify import CheckReport, run_suite
from .wonder import (
    ClosurePoset,
    FlagPoint,
    StratumDescriptor,
    StratumError,
    base_point,
    closure_poset,
    one_ps_limit,
    project_pi_tau,
    stratum_membership,
)

__version__ = "0.1.0"
