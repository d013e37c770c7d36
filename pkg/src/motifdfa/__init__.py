"""Minimal DFAs for sequence motifs via simple NFAs and the subset construction."""
from .automata import (
    Alphabet,
    Dfa,
    ForeignSymbolError,
    Nfa,
    Overlap,
    SimplicityReport,
    accessible_states,
    add_start_self_loops,
    coaccessible_states,
    dfa_accepts,
    enumerate_language,
    is_simple,
    languages_disjointness_report,
    nfa_accepts,
    subset_construction,
    trim,
)
from .genstring import (
    BOTTOM,
    GeneralizedString,
    LevelState,
    Mode,
    PatternSyntaxError,
    build_levels,
    matches,
    nfa_from_genstring,
    nfa_from_genstring_set,
    parent,
    parse_generalized_string,
)
from .hamming import GridState, hamming_distance, nfa_from_hamming
from .minimize import (
    StatePartition,
    coarsest_partition,
    equivalent,
    is_minimal,
    isomorphic,
    minimize,
)
from .search import CompiledMotif, Occurrence, read_fasta, stream_search

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "Dfa",
    "ForeignSymbolError",
    "Nfa",
    "Overlap",
    "SimplicityReport",
    "accessible_states",
    "add_start_self_loops",
    "coaccessible_states",
    "dfa_accepts",
    "enumerate_language",
    "is_simple",
    "languages_disjointness_report",
    "nfa_accepts",
    "subset_construction",
    "trim",
    "BOTTOM",
    "GeneralizedString",
    "LevelState",
    "Mode",
    "PatternSyntaxError",
    "build_levels",
    "matches",
    "nfa_from_genstring",
    "nfa_from_genstring_set",
    "parent",
    "parse_generalized_string",
    "GridState",
    "hamming_distance",
    "nfa_from_hamming",
    "StatePartition",
    "coarsest_partition",
    "equivalent",
    "is_minimal",
    "isomorphic",
    "minimize",
    "CompiledMotif",
    "Occurrence",
    "read_fasta",
    "stream_search",
]
