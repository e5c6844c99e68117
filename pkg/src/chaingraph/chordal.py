"""Cliques, decomposability and running-intersection orderings."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

from .exceptions import NotAClique, NotDecomposable
from .graph import UndirectedGraph, node_key

__all__ = [
    "UndirectedGraph",
    "CliqueOrdering",
    "is_complete",
    "cliques",
    "is_decomposable",
    "mcs_order",
    "rip_ordering",
    "separator_multiset",
]


def is_complete(g, A) -> bool:
    """True iff every two distinct nodes of ``A`` are joined by a line."""
    A = list(A)
    return all(v in g.neighbours(u) for u, v in itertools.combinations(A, 2))


def cliques(g) -> list:
    """All maximal complete sets of ``g``, sorted lexicographically.

    Bron-Kerbosch with pivoting.  Only lines count, so an edgeless graph
    yields one singleton per node.
    """
    nbrs = {u: g.neighbours(u) for u in g.nodes}
    found = []

    def expand(R, P, X):
        if not P and not X:
            found.append(frozenset(R))
            return
        pivot = max(P | X, key=lambda u: len(nbrs[u] & P))
        for v in sorted(P - nbrs[pivot]):
            expand(R | {v}, P & nbrs[v], X & nbrs[v])
            P = P - {v}
            X = X | {v}

    expand(frozenset(), frozenset(g.nodes), frozenset())
    return sorted(found, key=node_key)


def mcs_order(g) -> list:
    """Maximum cardinality search visit order, ties to the least node."""
    weight = {u: 0 for u in g.nodes}
    order = []
    while weight:
        best = max(weight.values())
        u = min(n for n, w in weight.items() if w == best)
        del weight[u]
        order.append(u)
        for v in g.neighbours(u):
            if v in weight:
                weight[v] += 1
    return order


def is_decomposable(g) -> bool:
    """Chordality test: every node's earlier MCS neighbours must be complete."""
    position = {}
    for i, u in enumerate(mcs_order(g)):
        earlier = [v for v in g.neighbours(u) if v in position]
        if not is_complete(g, earlier):
            return False
        position[u] = i
    return True


@dataclass(frozen=True)
class CliqueOrdering:
    """A sequence of cliques with the running intersection property.

    ``separators[i]`` is the intersection of ``cliques[i + 1]`` with the
    union of all earlier cliques.
    """

    cliques: tuple

    def __post_init__(self):
        cl = tuple(frozenset(k) for k in self.cliques)
        object.__setattr__(self, "cliques", cl)
        if not cl:
            raise ValueError("a clique ordering needs at least one clique")
        for i, s in enumerate(self.separators, start=1):
            if not any(s <= cl[j] for j in range(i)):
                raise NotDecomposable(f"running intersection fails at position {i}")

    @property
    def separators(self) -> tuple:
        out = []
        union = set(self.cliques[0])
        for k in self.cliques[1:]:
            out.append(frozenset(k & union))
            union |= k
        return tuple(out)

    @property
    def nodes(self) -> frozenset:
        return frozenset().union(*self.cliques)


def rip_ordering(g, start) -> CliqueOrdering:
    """A running-intersection ordering of the cliques of ``g`` starting at ``start``.

    Cliques are added Prim-style: the next clique maximises its largest
    overlap with a single already placed clique, ties going to the
    lexicographically least clique.  For a chordal graph this always
    yields a valid ordering.

    Raises
    ------
    NotAClique
        If ``start`` is not a clique of ``g``.
    NotDecomposable
        If ``g`` is not chordal.
    """
    start = frozenset(start)
    all_cliques = cliques(g)
    if start not in all_cliques:
        raise NotAClique(f"{sorted(start)} is not a clique")
    if not is_decomposable(g):
        raise NotDecomposable("graph is not decomposable")
    placed = [start]
    rest = [k for k in all_cliques if k != start]
    while rest:
        # rest stays sorted and max() keeps the first maximum
        nxt = max(rest, key=lambda k: max(len(k & p) for p in placed))
        placed.append(nxt)
        rest.remove(nxt)
    return CliqueOrdering(tuple(placed))


def separator_multiset(ordering: CliqueOrdering) -> Counter:
    """Multiplicity of each separator along the ordering."""
    return Counter(ordering.separators)
