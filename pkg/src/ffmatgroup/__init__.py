"""Exact-arithmetic finiteness decisions and orders for finitely generated
matrix groups over rational function fields of positive characteristic."""

from .gf import (
    FieldCtx,
    FieldElement,
    SubfieldSplit,
    element_degree,
    embed,
    embedding_image,
    extend_field,
    find_irreducible,
    frobenius,
    is_irreducible,
    to_subfield,
    trace_to_base,
)
from .funcfield import (
    FuncField,
    MultiPoly,
    NotAdmissible,
    RatFunc,
    denominator_lcm,
    extend_scalars,
    multivariate_gcd,
    poly_lcm,
)
from .linalg import (
    Mat,
    RrefResult,
    Subspace,
    coordinates,
    dedupe_matrices,
    induced_actions,
    intersect,
    mat_vec,
    nullspace,
    rref,
)
from .envalg import AlgebraBasis, EchelonSpan, PreImageCache, basis_env_algebra, pre_image
from .finiteness import (
    AdmissiblePoint,
    AdmissibleSearchError,
    ConstituentChain,
    DuplicateCollapse,
    IsoBasis,
    SpanDefect,
    Verdict,
    ZeroInvariantModule,
    find_admissible,
    is_finite,
    is_finite_cr,
    is_isomorphism_env_algebras,
    module_via_nullspace,
    radical_witness,
    specialize,
)
from .order import BudgetError, GroupOrder, group_order_ff, size_finite, stabilizer_chain_order
from .nilpotent import gamma, has_finite_order, is_finite_nilpotent
from .oracle import closure_elements, closure_order, element_order
from .groupfile import (
    GroupFileError,
    ParseError,
    ParsedGroup,
    parse_entry,
    parse_group_file,
    serialize_group,
)

__version__ = "0.1.0"
