"""Synonym substitution analysis for interpreted languages.

A language is a set of strings over a finite alphabet, each mapped to a
meaning, examined up to a length horizon.  The package decides the
substitution (SST) and composition (IC) properties with minimal witnesses,
tracks how many meanings each generation of strings expresses, certifies
saturation after a plateau, and completes partial languages under
substitution.
"""
from .checkers import ALL_POSITIONS, EXISTS, RIGHT_EXTENSION, check_ic, check_sst, validate_witness
from .congruence import normalize, sst_closure, synonym_classes
from .expressivity import certify_saturation, expressivity_curve, generation, reduce_to_generation
from .kernels import BACKEND
from .model import Alphabet, mk_explicit, mk_oracle, mk_transform_semantics

__version__ = "0.1.0"

__all__ = [
    "ALL_POSITIONS",
    "Alphabet",
    "BACKEND",
    "EXISTS",
    "RIGHT_EXTENSION",
    "certify_saturation",
    "check_ic",
    "check_sst",
    "expressivity_curve",
    "generation",
    "mk_explicit",
    "mk_oracle",
    "mk_transform_semantics",
    "normalize",
    "reduce_to_generation",
    "sst_closure",
    "synonym_classes",
    "validate_witness",
]
