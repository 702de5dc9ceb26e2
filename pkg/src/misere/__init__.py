"""Analysis of partizan games under misère play."""

from .outcomes import Outcome, make_sum, misere_outcome, normal_outcome, outcome_cmp
from .positions import adjoint, alt_sum, build, conjugate, format_position, named, profile

__all__ = [
    "Outcome", "make_sum", "misere_outcome", "normal_outcome", "outcome_cmp",
    "adjoint", "alt_sum", "build", "conjugate", "format_position", "named", "profile",
]
