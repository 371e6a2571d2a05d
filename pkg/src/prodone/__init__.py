"""Computing with product-one sequences over finite groups.

Sequences are unordered multisets of group elements. The package computes
their sets of products, enumerates the atoms of the product-one monoid,
derives Davenport constants and sets of lengths, and searches for
product-one-preserving bijections between groups, classifying each as a
group isomorphism or anti-isomorphism.
"""

from .errors import (BudgetExceededError, CatalogError, GroupTableError,
                     ParseError, ProdoneError)
from .factorization import (DEFAULT_SEARCH_BUDGET, AtomCatalog, Fingerprint,
                            LengthSystem, enumerate_atoms, factorizations,
                            fingerprint, is_atom, large_davenport, length_system,
                            product_one_vectors, set_of_lengths)
from .groups import (GroupMap, GroupTable, abelian_invariants,
                     abelian_structure_label, alternating, cyclic, dicyclic,
                     dihedral, direct_product, find_group_isomorphisms,
                     from_table, generating_sequence, order_profile,
                     parse_group_spec, symmetric)
from .isolab import (SMALL_GROUP_SPECS, AssertionOutcome, AssertionReport,
                     BasisBijection, ComparisonReport, InvariantComparison,
                     TheoremVerdict, check_assertions, compare_invariants,
                     opposite_transport, search_bijections, small_group_catalog,
                     verify_preserving, verify_theorem)
from .sequences import DEFAULT_STATE_BUDGET, Sequence, apply_map, parse_sequence

__version__ = "0.1.0"

__all__ = [
    "ProdoneError", "GroupTableError", "ParseError", "CatalogError",
    "BudgetExceededError",
    "GroupTable", "GroupMap", "cyclic", "dihedral", "dicyclic", "symmetric",
    "alternating", "direct_product", "from_table", "parse_group_spec",
    "order_profile", "generating_sequence", "find_group_isomorphisms",
    "abelian_invariants", "abelian_structure_label",
    "Sequence", "parse_sequence", "apply_map", "DEFAULT_STATE_BUDGET",
    "AtomCatalog", "Fingerprint", "LengthSystem", "is_atom", "enumerate_atoms",
    "large_davenport", "factorizations", "set_of_lengths", "length_system",
    "fingerprint", "product_one_vectors", "DEFAULT_SEARCH_BUDGET",
    "SMALL_GROUP_SPECS", "small_group_catalog", "BasisBijection",
    "AssertionOutcome", "AssertionReport", "TheoremVerdict",
    "InvariantComparison", "ComparisonReport", "verify_preserving",
    "search_bijections", "check_assertions", "verify_theorem",
    "opposite_transport", "compare_invariants",
    "__version__",
]
