"""Exact computations in topological full groups of minimal substitution subshifts."""
from .clopen import ClopenSet, Cylinder, are_3disjoint, bracket, is_subset, to_clopen
from .errors import TFGError
from .group import (GeneratorSymbol, GroupElement, commutator, compose, evaluate_word, identity,
                    inverse, membership_via_identity, sigma, sigma_cylinder, star, word_problem)
from .presentation import (Presentation, alt_presentation_check, enumerate_relators, export_presentation,
                           free_reduce, tietze_expand, verify_relators)
from .recoder import RecodedSubshift, find_n0, recode
from .subshift import Substitution, SubstitutionSubshift, fibonacci, thue_morse
from .towers import (SeedPoint, factor_product, kr_partition, level_embedding_check, return_words,
                     verify_kr)

__all__ = [
    "ClopenSet", "Cylinder", "GeneratorSymbol", "GroupElement", "Presentation", "RecodedSubshift",
    "SeedPoint", "Substitution", "SubstitutionSubshift", "TFGError", "alt_presentation_check",
    "are_3disjoint", "bracket", "commutator", "compose", "enumerate_relators", "evaluate_word",
    "export_presentation", "factor_product", "fibonacci", "find_n0", "free_reduce", "identity",
    "inverse", "is_subset", "kr_partition", "level_embedding_check", "membership_via_identity",
    "recode", "return_words", "sigma", "sigma_cylinder", "star", "tietze_expand", "thue_morse",
    "to_clopen", "verify_kr", "verify_relators", "word_problem",
]
