"""Graph sandwich solver for forbidden pairs of order-4 graphs."""

from .graphs import (Graph, SandwichInstance, Verdict, find_induced_pattern,
                     is_chain_graph, verify_sandwich)
from .quartets import (ForbiddenFamily, StatusEntry, canonical_pair,
                       closure_rule, pair_status, quartet, status_table)
from .exact import BudgetExceeded, compile_clauses, naive_enumerate, solve_exact
from .twosat import TwoSatFormula, solve_two_sat
from .poly import (UnsupportedFamilyError, closure_solve,
                   complete_bipartite_sandwich, preprocess_components, solve,
                   split_sandwich, strip_universal)
from .generate import PlantingError, generate_instance

__version__ = "0.1.0"
