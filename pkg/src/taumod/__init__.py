"""Exact computer algebra for Drinfeld modules, abelian-sheaf ladders, and
shtukas over finite fields: restriction of coefficients along covers of the
projective line, exact enumeration of the fibers, and isomorphism solvers."""

from .drinfeld import (
    CoverMap,
    DrinfeldModule,
    aut_group,
    drinfeld_module,
    evaluate_at,
    iso_solver,
    restrict,
    twist_min_degree,
    verify_standard_form,
)
from .errors import TaumodError
from .extend import (
    ExtensionProblem,
    ExtensionSolution,
    brute_oracle,
    enumerate_extensions,
    extension_iso_classes,
    galois_merge_report,
)
from .ff import (
    FieldElement,
    FieldTower,
    embed,
    enumerate_field,
    extension_tower,
    field_arith,
    frobenius,
    solve_power_equation,
)
from .polys import Poly
from .sheaves import (
    AbelianSheafLadder,
    LadderIso,
    LadderLevel,
    enumerate_sheaf_module_structures,
    from_drinfeld,
    pushforward,
    semilinear_iso_solver,
    verify_abelian_sheaf,
)
from .shtuka import (
    Shtuka,
    from_abelian_sheaf,
    pushforward_shtuka,
    shtuka_iso_solver,
    verify_shtuka,
)
from .skew import SkewPoly, conjugate, evaluate_additive, skew_mul, substitute

__version__ = "0.1.0"

__all__ = [
    "AbelianSheafLadder",
    "CoverMap",
    "DrinfeldModule",
    "ExtensionProblem",
    "ExtensionSolution",
    "FieldElement",
    "FieldTower",
    "LadderIso",
    "LadderLevel",
    "Poly",
    "Shtuka",
    "SkewPoly",
    "TaumodError",
    "aut_group",
    "brute_oracle",
    "conjugate",
    "drinfeld_module",
    "embed",
    "enumerate_extensions",
    "enumerate_field",
    "enumerate_sheaf_module_structures",
    "evaluate_additive",
    "evaluate_at",
    "extension_iso_classes",
    "extension_tower",
    "field_arith",
    "from_abelian_sheaf",
    "from_drinfeld",
    "frobenius",
    "galois_merge_report",
    "iso_solver",
    "pushforward",
    "pushforward_shtuka",
    "restrict",
    "semilinear_iso_solver",
    "shtuka_iso_solver",
    "skew_mul",
    "solve_power_equation",
    "substitute",
    "twist_min_degree",
    "verify_abelian_sheaf",
    "verify_shtuka",
    "verify_standard_form",
]
