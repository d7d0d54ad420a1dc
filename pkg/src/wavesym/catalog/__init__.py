from .build import Catalog, CatalogCase, SubCase, TransformationFamily, load_catalog
from .verify import (
    CheckReport,
    all_check_ids,
    run_check,
    verify_additional_equivalence,
    verify_additional_equivalences,
    verify_case,
    verify_catalog,
    verify_family,
    verify_singular_witness,
    verify_special_subclass,
    verify_subalgebra_entry,
    verify_subalgebra_lists,
)

__all__ = [
    "Catalog",
    "CatalogCase",
    "SubCase",
    "TransformationFamily",
    "load_catalog",
    "CheckReport",
    "all_check_ids",
    "run_check",
    "verify_case",
    "verify_family",
    "verify_additional_equivalence",
    "verify_additional_equivalences",
    "verify_subalgebra_entry",
    "verify_subalgebra_lists",
    "verify_special_subclass",
    "verify_singular_witness",
    "verify_catalog",
]
