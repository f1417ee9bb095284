"""Symmetric finite-state automata as equally small divide-and-conquer automata."""

from .core import Alphabet, Fsa, compose, eval_fsa, identity, run_word, step, validate, word_function
from .engine import (
    EquivalenceConfig,
    SplitStrategy,
    aggregate_neighborhood,
    check_well_defined,
    chi_enumerate,
    eval_dca,
    verify_equivalence,
)
from .errors import (
    AutomatonError,
    EmptyInputError,
    InvalidArgument,
    NotAccessibleError,
    NotSymmetricError,
    ResourceLimitError,
)
from .minimize import accessible_states, distinguishing_word, is_minimal, minimize, refine_partition
from .symmetry import brute_force_symmetric, find_symmetry_counterexample, is_symmetric, transitions_commute
from .synthesis import (
    Dca,
    FunctionalDca,
    materialize_reachable,
    representative_strings,
    synthesize_composition_dca,
    synthesize_symmetric_dca,
)

__version__ = "0.1.0"
