"""Stable-graph moduli combinatorics, universal Schottky groups over exact
truncated q-series, free Lie algebra dimension counts, and a numerical
monodromy engine for the rational connection with logarithmic poles at 0 and 1.
"""

from .graphs import (
    StableGraph,
    ValidationReport,
    Rigidification,
    GroupoidWord,
    HalfDehn,
    Fusing,
    Simple,
    NotComposable,
    enumerate_trivalent,
    find_rigidification,
    coordinate_system,
    fusing_rewrite,
    compose_word,
    canonical_form,
    is_isomorphic,
)
from .qseries import QSeries, BElement, hensel_solve_quadratic
from .schottky import (
    SchottkyContext,
    ProjMat,
    INF,
    phi,
    word_to_element,
    fixed_point_data,
    verify_cross_ratio,
    free_generators,
)
from .freenc import (
    NCSeries,
    nc_exp,
    nc_log,
    magnus_embed,
    exp_embed,
    coproduct,
    is_grouplike,
    is_primitive,
    lyndon_words,
    witt_dim,
    polylog_dims,
    ideal_graded_dims,
    weight_graded_dims,
)
from .kz import (
    mzv,
    NilpotentPair,
    ConnectionMatrix,
    ode_connection_matrix,
    UniversalAssociator,
    universal_associator,
    specialize_associator,
    half_dehn_monodromy,
    FormPath,
    LineSegment,
    ArcSegment,
    OneForm,
    nilpotent_transport,
    homotopy_invariance_check,
    evaluate_groupoid_word,
)

__version__ = "0.1.0"
