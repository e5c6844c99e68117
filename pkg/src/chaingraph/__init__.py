"""Chain graphs: Markov equivalence, largest chain graphs, separation and
discrete factorization."""

from .chordal import (
    CliqueOrdering,
    cliques,
    is_complete,
    is_decomposable,
    rip_ordering,
    separator_multiset,
)
from .equivalence import (
    Complex,
    ExpertBlock,
    compose_expert_model,
    complexes,
    covers,
    equivalent_to_bn,
    extract_equivalent_dag,
    is_largest,
    is_protected,
    largest_chain_graph,
    markov_equivalence_class,
    markov_equivalent,
    markov_equivalent_dags,
    protected_arrows,
)
from .exceptions import ChainGraphError, NotAChainGraph
from .graph import (
    ChainGraph,
    EdgeKind,
    HybridGraph,
    Triplet,
    UndirectedGraph,
    ancestors,
    closure_graph,
    components,
    induced_subgraph,
    moral_graph,
    parents,
    random_chain_graph,
    underlying_graph,
    validate_chain_graph,
)
from .io import format_distribution, format_graph, parse_distribution, parse_experts, parse_graph
from .separation import (
    ReachState,
    SeparationQuery,
    c_separated,
    maximal_separated_set,
    moralization_represented,
    reach,
)
from .tables import (
    ConditionalTable,
    DiscreteDistribution,
    Factor,
    FactorizationFormula,
    build_from_factors,
    ci_holds,
    conditional,
    conditional_formula,
    evaluate_conditional_formula,
    formula_evaluate,
    formula_simplify,
    graph_formula,
    is_markovian_check,
    marginal,
    memory_demand,
    random_distribution,
    random_markovian,
)

__all__ = [
    "CliqueOrdering",
    "cliques",
    "is_complete",
    "is_decomposable",
    "rip_ordering",
    "separator_multiset",
    "Complex",
    "ExpertBlock",
    "compose_expert_model",
    "complexes",
    "covers",
    "equivalent_to_bn",
    "extract_equivalent_dag",
    "is_largest",
    "is_protected",
    "largest_chain_graph",
    "markov_equivalence_class",
    "markov_equivalent",
    "markov_equivalent_dags",
    "protected_arrows",
    "ChainGraphError",
    "NotAChainGraph",
    "ChainGraph",
    "EdgeKind",
    "HybridGraph",
    "Triplet",
    "UndirectedGraph",
    "ancestors",
    "closure_graph",
    "components",
    "induced_subgraph",
    "moral_graph",
    "parents",
    "random_chain_graph",
    "underlying_graph",
    "validate_chain_graph",
    "format_distribution",
    "format_graph",
    "parse_distribution",
    "parse_experts",
    "parse_graph",
    "ReachState",
    "SeparationQuery",
    "c_separated",
    "maximal_separated_set",
    "moralization_represented",
    "reach",
    "ConditionalTable",
    "DiscreteDistribution",
    "Factor",
    "FactorizationFormula",
    "build_from_factors",
    "ci_holds",
    "conditional",
    "conditional_formula",
    "evaluate_conditional_formula",
    "formula_evaluate",
    "formula_simplify",
    "graph_formula",
    "is_markovian_check",
    "marginal",
    "memory_demand",
    "random_distribution",
    "random_markovian",
]

__version__ = "0.1.0"
