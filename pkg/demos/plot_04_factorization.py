"""
Factorizing a distribution along a chain graph
==============================================

When every closure graph is decomposable, a Markovian distribution is a
product of clique marginals divided by parent and separator marginals.
The same distribution can also be stored as a product of conditionals.
"""

import numpy as np

from chaingraph import (
    ChainGraph,
    Triplet,
    ci_holds,
    conditional_formula,
    evaluate_conditional_formula,
    formula_evaluate,
    formula_simplify,
    graph_formula,
    is_markovian_check,
    memory_demand,
    random_distribution,
    random_markovian,
)

G = ChainGraph(
    lines=[("a", "b"), ("b", "c"), ("d", "e"), ("f", "g")],
    arrows=[("a", "d"), ("b", "f"), ("d", "f"), ("e", "f")],
)
domain = {v: 2 for v in G.nodes}

# A strictly positive distribution built from random clique factors.
P = random_markovian(G, domain, seed=0)
print("Markovian:", is_markovian_check(P, G))
print("b indep g given f:", ci_holds(P, Triplet({"b"}, {"g"}, {"f"})))

###############################################################################
# The marginal-ratio formula and its numerical check.

f = graph_formula(G)
print(f)
err = np.max(np.abs(formula_evaluate(f, P).table - P.values))
print(f"max error {err:.1e}")

###############################################################################
# The conditional form: one table per term.

terms = conditional_formula(G)
print(" * ".join(map(str, terms)))
err = np.max(np.abs(evaluate_conditional_formula(terms, P).table - P.values))
print(f"max error {err:.1e}")

###############################################################################
# An arbitrary distribution is not Markovian, so the formula fails on it.

Q = random_distribution(domain, seed=0)
print("random P Markovian:", is_markovian_check(Q, G))
err = np.max(np.abs(formula_evaluate(f, Q).table - Q.values))
print(f"max error on random P {err:.2f}")

###############################################################################
# Storage cost.  The DAG and its largest chain graph store different
# numbers of values but have the same number of free parameters, and their
# formulas coincide after cancelling common factors.

D = ChainGraph(
    arrows=[("a", "c"), ("b", "c"), ("c", "d"), ("c", "e"),
            ("c", "f"), ("d", "e"), ("d", "f"), ("e", "f")]
)
L = ChainGraph(
    lines=[("c", "d"), ("c", "e"), ("c", "f"), ("d", "e"), ("d", "f"), ("e", "f")],
    arrows=[("a", "c"), ("b", "c")],
)
for name, g in (("DAG", D), ("largest", L)):
    print(name, memory_demand(g, {v: 2 for v in g.nodes}), formula_simplify(graph_formula(g)))
