"""Finite ELKy models, their file format and random generation."""

from .generator import RandomModelSpec, random_formula, random_model
from .model import (
    Frame,
    Model,
    build_universe,
    equivalence_class,
    normalize_partition,
    partition_from_edges,
    universe_of,
)
from .modelfile import load_model, print_coverage, print_model, read_model_source

__all__ = [
    "Frame",
    "Model",
    "RandomModelSpec",
    "build_universe",
    "equivalence_class",
    "load_model",
    "normalize_partition",
    "partition_from_edges",
    "print_coverage",
    "print_model",
    "random_formula",
    "random_model",
    "read_model_source",
    "universe_of",
]
