"""sigmacolim: marked-arrow colimits of category-valued diagrams, computed
as explicit finite categories and verified by exhaustive search."""

from .fincat import (
    EquivalenceReport,
    FinCategory,
    Functor,
    InputError,
    NatTransf,
    equivalence_check,
    functor_category,
    is_isomorphism,
    product_category,
    pseudo_equalizer,
    validate_category,
)

__all__ = [
    "EquivalenceReport",
    "FinCategory",
    "Functor",
    "InputError",
    "NatTransf",
    "equivalence_check",
    "functor_category",
    "is_isomorphism",
    "product_category",
    "pseudo_equalizer",
    "validate_category",
]
