"""Chevalley groups over F_q(t): root systems, structure constants, word collection,
parabolic subgroups and rationality checks for complete reducibility over a
nonperfect field."""

from .fields import RationalFunctionField, gf, is_k_point, sqrt_char2
from .parabolic import Cocharacter, classify, in_parabolic, take_limit
from .rootsys import build_root_system, subsystem_type
from .words import ChevalleyGroup, GroupWord, collect

__all__ = [
    "ChevalleyGroup", "Cocharacter", "GroupWord", "RationalFunctionField",
    "build_root_system", "classify", "collect", "gf", "in_parabolic",
    "is_k_point", "sqrt_char2", "subsystem_type", "take_limit",
]
