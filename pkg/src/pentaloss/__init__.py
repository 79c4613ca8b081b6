"""Loss tolerance of the concatenated five-qubit ring (pentagon) graph code."""
from .analytics import find_threshold, iterate_levels, overhead_for_target, pre_failure
from .code import build_pentagon_code, graph_stabilizers, layout, minimal_representatives, ring_graph
from .pauli import PauliOperator, StabilizerGroup, commutes, conjugate_by_cz, coset_elements, in_span, multiply
from .poly import LossPolynomial
from .strategy import NonPreannouncedRecursion, optimal_policy, paper_tree, policy_failure, validate_policy

__version__ = "0.1.0"
