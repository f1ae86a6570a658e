"""Labelled plane forests, their grafting operations, and counting tables."""

from .forest import (
    BothUnitsError,
    EMPTY_FOREST,
    ForestSyntaxError,
    OrderedForest,
    OrderedTree,
    PlaneTree,
    SINGLE_VERTEX,
    admissible_cuts,
    concat,
    cut_split,
    format_forest,
    lgraft_basis,
    nwarrow,
    parse_forest,
    parse_plane_tree,
    rgraft_basis,
    shape_of,
    standardize,
)
from .families import (
    NotInFamilyError,
    b_minus,
    b_plus,
    canonical_indexing,
    canonical_signature,
    count_indexings,
    generate_set,
    generate_words,
    is_basis_forest,
    ladders,
    membership,
    oracle_count_indexings,
    signature_of,
)
from .algebra import (
    AlgebraElement,
    COPRODUCT_VARIANTS,
    Tensor2Element,
    antipode,
    as_element,
    coproduct,
    counit,
    prim_tot_dimension,
    product,
)
from .grafts import (
    GRAFT_OPS,
    IDENTITY_NAMES,
    check_identity,
    generate_closure,
    lgraft,
    rgraft,
    tensor_graft,
)
from .series import (
    MAX_SERIES_DEGREE,
    SERIES_IDS,
    parse_series_id,
    series_coefficients,
    verify_against_enumeration,
)
from .checks import SUITES, resolve_degree, run_suite

__version__ = "0.1.0"
