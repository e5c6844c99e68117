"""Reading conditional independences off a chain graph.

Two criteria are provided.  :func:`moralization_represented` separates in
the moral graph of the ancestral subgraph.  :func:`reach` is a local
propagation over four node sets; the nodes it marks in ``U`` or ``V`` are
exactly those joined to ``A`` by a route that is superactive with respect
to ``C`` (every head-to-head section meets ``C``, every other section
avoids it).  The two criteria agree on every chain graph.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from dataclasses import dataclass
from typing import NamedTuple

from .exceptions import InvalidQuery, InvalidTriplet
from .graph import Triplet, ancestors

__all__ = [
    "ReachState",
    "SeparationQuery",
    "NodeView",
    "moralization_represented",
    "reach",
    "c_separated",
    "maximal_separated_set",
]


@dataclass(frozen=True)
class SeparationQuery:
    A: frozenset
    C: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "A", frozenset(self.A))
        object.__setattr__(self, "C", frozenset(self.C))
        if not self.A:
            raise InvalidQuery("A must be non-empty")
        if self.A & self.C:
            raise InvalidQuery("A and C must be disjoint")


@dataclass(frozen=True)
class ReachState:
    """Final contents of the four propagation sets.

    ``U`` and ``V`` hold nodes reached from ``A`` by a superactive route
    (``V``: the last section is entered by an arrow).  ``W`` holds nodes at
    the end of some ``u -> t1 -- ... -- tr`` with ``u`` in ``U | V``, and
    ``Z`` those among them whose line part passes through ``C``.
    """

    U: frozenset
    V: frozenset
    W: frozenset
    Z: frozenset


class NodeView(NamedTuple):
    """Everything a rule may look at: one node, its incident edges, and
    whether it is conditioned on."""

    node: str
    lines: frozenset
    parents: frozenset
    children: frozenset
    in_C: bool


def _check_triplet(g, t):
    if not isinstance(t, Triplet):
        raise InvalidTriplet(f"expected a Triplet, got {type(t).__name__}")
    if not t.nodes <= g.nodes:
        raise InvalidTriplet(f"unknown nodes {sorted(t.nodes - g.nodes)}")


@lru_cache(maxsize=4096)
def _moral_adjacency(g, nodes):
    """Adjacency of the moral graph of the subgraph induced by ``nodes``."""
    adj = {u: set(g.adjacent_to(u) & nodes) for u in nodes}
    seen = set()
    for start in nodes:
        if start in seen:
            continue
        comp, stack = {start}, [start]
        while stack:
            u = stack.pop()
            for v in g.neighbours(u) & nodes:
                if v not in comp:
                    comp.add(v)
                    stack.append(v)
        seen |= comp
        pa = {p for u in comp for p in g.parents_of(u) & nodes}
        for p in pa:
            adj[p] |= pa - {p}
    return {u: frozenset(vs) for u, vs in adj.items()}


def moralization_represented(g, t: Triplet) -> bool:
    """True iff ``C`` separates ``A`` from ``B`` in the moral graph of the
    subgraph induced by the ancestors of ``A | B | C``."""
    _check_triplet(g, t)
    adj = _moral_adjacency(g, ancestors(g, t.nodes))
    seen = set(t.A)
    queue = deque(t.A)
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v in t.B:
                return False
            if v not in seen and v not in t.C:
                seen.add(v)
                queue.append(v)
    return True


def _fire(view: NodeView, tag: str, C) -> list:
    """Insertions produced when ``view.node`` has just joined set ``tag``.

    Implements the nine propagation rules; ``C`` is only consulted for the
    membership of the far endpoint of an incident edge.
    """
    out = []
    if tag in "UV":
        for v in view.children:
            if v not in C:
                out.append((v, "V"))  # 3
            out.append((v, "W"))  # 5
    if tag == "U":
        for v in view.lines:
            if v not in C:
                out.append((v, "U"))  # 1
        for v in view.parents:
            if v not in C:
                out.append((v, "U"))  # 2
    elif tag == "V":
        for v in view.lines:
            if v not in C:
                out.append((v, "V"))  # 4
    elif tag == "W":
        for v in view.lines:
            out.append((v, "W"))  # 6
        if view.in_C:
            out.append((view.node, "Z"))  # 7
    elif tag == "Z":
        for v in view.lines:
            out.append((v, "Z"))  # 8
        for v in view.parents:
            if v not in C:
                out.append((v, "U"))  # 9
    return out


def reach(g, query, rng=None):
    """Largest ``B`` with ``<A, B | C>`` represented, plus the final sets.

    Parameters
    ----------
    g : ChainGraph
    query : SeparationQuery or tuple ``(A, C)``
    rng : random.Random, optional
        If given, pending insertions are processed in random order instead
        of last-in first-out.  The fixpoint does not depend on the order.

    Returns
    -------
    B : frozenset
        ``N \\ (U | V | C)``.
    trace : ReachState
    """
    if not isinstance(query, SeparationQuery):
        query = SeparationQuery(*query)
    A, C = query.A, query.C
    if not (A | C) <= g.nodes:
        raise InvalidQuery(f"unknown nodes {sorted((A | C) - g.nodes)}")
    sets = {"U": set(), "V": set(), "W": set(), "Z": set()}
    pending = [(a, "U") for a in sorted(A)]
    while pending:
        if rng is None:
            u, tag = pending.pop()
        else:
            u, tag = pending.pop(rng.randrange(len(pending)))
        if u in sets[tag]:
            continue
        sets[tag].add(u)
        view = NodeView(u, g.neighbours(u), g.parents_of(u), g.children_of(u), u in C)
        for v, t in _fire(view, tag, C):
            if v not in sets[t]:
                pending.append((v, t))
    trace = ReachState(*(frozenset(sets[k]) for k in "UVWZ"))
    B = g.nodes - (trace.U | trace.V | C)
    return frozenset(B), trace


def maximal_separated_set(g, A, C=()) -> frozenset:
    """Shorthand for the ``B`` returned by :func:`reach`."""
    return reach(g, SeparationQuery(A, C))[0]


def c_separated(g, t: Triplet) -> bool:
    """Separation criterion: no superactive route between ``A`` and ``B``."""
    _check_triplet(g, t)
    _, trace = reach(g, SeparationQuery(t.A, t.C))
    return not (t.B & (trace.U | trace.V))
