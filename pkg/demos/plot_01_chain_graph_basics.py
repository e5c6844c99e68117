"""
Chain graphs: components, parents and the moral graph
=====================================================

A chain graph mixes undirected lines and directed arrows.  Its
components (what is left connected after deleting the arrows) can be
ordered so that every arrow points forward.
"""

from chaingraph import (
    ChainGraph,
    ancestors,
    closure_graph,
    format_graph,
    moral_graph,
    parents,
)
from chaingraph.exceptions import NotAChainGraph

# Seven variables in three blocks: a-b-c, then d-e, then f-g.
G = ChainGraph(
    lines=[("a", "b"), ("b", "c"), ("d", "e"), ("f", "g")],
    arrows=[("a", "d"), ("b", "f"), ("d", "f"), ("e", "f")],
)

# The chain of components, in an order compatible with every arrow.
for comp in G.chain:
    print("component", sorted(comp), "parents", sorted(parents(G, comp)))

# Ancestors follow arrows forwards and lines in either direction.
print("an({f}) =", sorted(ancestors(G, {"f"})))
print("an({e}) =", sorted(ancestors(G, {"e"})))

###############################################################################
# The moral graph joins the parents of each component and drops directions.

M = moral_graph(G)
print(format_graph(M))

###############################################################################
# A closure graph looks at one component together with its parents.
# Here the parents b, d, e of {f, g} end up pairwise joined.

H = closure_graph(G, {"f", "g"})
print(sorted(map(sorted, H.lines)))

###############################################################################
# Cycles that can be followed along lines and forward arrows, with at least
# one arrow, are not allowed.

try:
    ChainGraph(lines=[("b", "c"), ("c", "a")], arrows=[("a", "b")])
except NotAChainGraph as exc:
    print("rejected:", exc, "cycle", exc.cycle)
