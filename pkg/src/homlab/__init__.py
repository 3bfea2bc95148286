"""Homomorphisms of finite relational structures and filter-tolerant powers."""

from .core import Homomorphism, Signature, Structure
from .errors import BudgetExceeded, HomlabError, InputError, TheoremGuardError
from .filters import FiniteFilter, filter_from_generators, principal, trivial_filter
from .power import quotient_by_agreement, tolerant_power, ultrafilter_hom
from .solver import arc_consistency, hom_count, hom_enumerate, hom_exists

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "FiniteFilter", "HomlabError", "Homomorphism", "InputError",
    "Signature", "Structure", "TheoremGuardError", "arc_consistency", "filter_from_generators",
    "hom_count", "hom_enumerate", "hom_exists", "principal", "quotient_by_agreement",
    "tolerant_power", "trivial_filter", "ultrafilter_hom",
]
