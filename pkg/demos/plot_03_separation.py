"""
Reading independences off a chain graph
=======================================

Given a set A and a conditioning set C, a local propagation marks every
node that A can still influence.  Whatever stays unmarked is the
largest B with A independent of B given C.
"""

import random

from chaingraph import (
    ChainGraph,
    SeparationQuery,
    Triplet,
    c_separated,
    moralization_represented,
    reach,
)

G = ChainGraph(
    lines=[("a", "b"), ("b", "c"), ("d", "e"), ("f", "g")],
    arrows=[("a", "d"), ("b", "f"), ("d", "f"), ("e", "f")],
)

B, trace = reach(G, SeparationQuery({"b"}, {"f"}))
print("B =", sorted(B))
for name in "UVWZ":
    print(f"  {name}: {sorted(getattr(trace, name))}")

###############################################################################
# Conditioning on f opens the collider b -> f <- d, so d and e are linked
# to b; g is screened off by f.

for v in "deg":
    t = Triplet({"b"}, {v}, {"f"})
    print(v, c_separated(G, t), moralization_represented(G, t))

###############################################################################
# The fixpoint does not depend on the order in which insertions are
# processed.

results = {reach(G, SeparationQuery({"b"}, {"f"}), rng=random.Random(s))[0] for s in range(50)}
print("distinct results over 50 schedules:", len(results))

###############################################################################
# Without conditioning everything is connected, since b reaches f directly.

print(sorted(reach(G, SeparationQuery({"b"}))[0]))
