"""Exact construction of group association schemes, enumeration of their
symmetric fusion schemes, and integer-spectrum certificates."""

from .desirability import (
    DesirabilityVerdict,
    WitnessReport,
    check_desirable,
    check_scheme_desirable,
    order_filter,
    verify_certificate,
    verify_witness,
)
from .errors import (
    BlockNotInPartition,
    CatalogMiss,
    FusionlabError,
    GroupTooLarge,
    InvalidFusion,
    SchemeAxiomError,
)
from .fusion import (
    EnumerationResult,
    FusionBudget,
    FusionPartition,
    canonical_form,
    enumerate_symmetric_fusions,
    fuse,
    is_symmetric_partition,
    is_valid_fusion,
    kernel_backend,
    lift_quotient_fusion,
    lift_subscheme_fusion,
    matrix_fusion_check,
    symmetrization,
)
from .groups import (
    FiniteGroup,
    GroupCatalogEntry,
    catalog,
    catalog_entries,
    direct_product,
    element_orders,
    exponent,
    from_permutation_generators,
)
from .integrality import (
    IntegralityCertificate,
    char_poly,
    integer_roots,
    is_integral,
    min_poly,
    min_poly_symmetric,
    scheme_integral,
)
from .polynomials import IntPolynomial
from .schemes import (
    AssociationScheme,
    ClosedSubset,
    NotClosed,
    adjacency,
    axiom_violations,
    is_closed,
    quotient,
    quotient_with_class_map,
    scheme_from_group,
    subscheme,
    validate,
)
from .suite import SuiteItem, paper_suite

__version__ = "0.1.0"
