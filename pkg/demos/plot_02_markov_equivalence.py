"""
Markov equivalence and the largest chain graph
==============================================

Two chain graphs describe the same independences exactly when they have
the same underlying graph and the same complexes.  Among all equivalent
chain graphs there is one with the fewest arrows.
"""

from chaingraph import (
    ChainGraph,
    complexes,
    equivalent_to_bn,
    extract_equivalent_dag,
    format_graph,
    is_largest,
    largest_chain_graph,
    markov_equivalent,
    markov_equivalent_dags,
    protected_arrows,
)

# A directed graph: a and b both point into c, and c, d, e, f form a
# transitive tournament.
D = ChainGraph(
    arrows=[("a", "c"), ("b", "c"), ("c", "d"), ("c", "e"),
            ("c", "f"), ("d", "e"), ("d", "f"), ("e", "f")]
)
print("complexes:", [str(c) for c in complexes(D)])

###############################################################################
# Only the two arrows into c are forced; the rest can be turned into lines.

print("protected:", sorted(protected_arrows(D)))
L = largest_chain_graph(D)
print(format_graph(L))
print("equivalent:", markov_equivalent(D, L), "largest:", is_largest(L))

###############################################################################
# Directions inside the {c, d, e, f} block are free as long as no new
# collider appears, which leaves 3! orderings of d, e, f.

dags = markov_equivalent_dags(D)
print(len(dags), "equivalent DAGs")

###############################################################################
# Going the other way: when every closure graph is decomposable, a
# directed graph with the same independences can be read off.

G = ChainGraph(
    lines=[("a", "b"), ("b", "c"), ("d", "e"), ("f", "g")],
    arrows=[("a", "d"), ("b", "f"), ("d", "f"), ("e", "f")],
)
print("equivalent to a DAG:", equivalent_to_bn(G))
print(format_graph(extract_equivalent_dag(G)))

# A four-cycle of lines is the classic counterexample.
square = ChainGraph(lines=[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
print("four-cycle equivalent to a DAG:", equivalent_to_bn(square))
