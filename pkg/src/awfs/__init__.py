"""Algebraic weak factorization systems on internal groupoids in finite sets
and finite presheaves, with the type-theoretic layer built on top."""

from .base import Base, FiniteCategory, category_from_arrows
from .internal import InternalCategory, InternalFunctor, identity_functor, compose_functors, underline
from .factorization import Square, factorize_cof_trivfib, factorize_trivcof_fib
from .algebras import (AlgCompInclObj, AlgSplitEpiEq, AlgTrivCofibration, ClovenIsofibration, canonical_lift,
                       validate_structure)
from .model import (classify, find_filler, has_rlp, is_cofibration, is_isofibration, is_trivial_cofibration,
                    is_trivial_fibration, is_weak_equivalence)
from .type_theory import (frobenius, id_type, path_object, pi, pullback_cloven, sigma, stability_check,
                          verify_ttawfs)
from .document import dump_document, parse_document

__all__ = [
    "Base", "FiniteCategory", "category_from_arrows", "InternalCategory", "InternalFunctor",
    "identity_functor", "compose_functors", "underline", "Square", "factorize_cof_trivfib",
    "factorize_trivcof_fib", "AlgCompInclObj", "AlgSplitEpiEq", "AlgTrivCofibration", "ClovenIsofibration",
    "canonical_lift", "validate_structure", "classify", "find_filler", "has_rlp", "is_cofibration",
    "is_isofibration", "is_trivial_cofibration", "is_trivial_fibration", "is_weak_equivalence", "frobenius",
    "id_type", "path_object", "pi", "pullback_cloven", "sigma", "stability_check", "verify_ttawfs",
    "dump_document", "parse_document",
]
