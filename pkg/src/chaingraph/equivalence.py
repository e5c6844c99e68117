"""Markov equivalence of chain graphs and the largest chain graph of a class.

Two chain graphs are Markov equivalent exactly when they share the
underlying graph and the set of complexes.  A complex is an induced path
``x -> s1 -- ... -- sk <- y`` with ``x`` and ``y`` non-adjacent and no
other edges among its nodes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .chordal import cliques, is_complete, is_decomposable, rip_ordering
from .exceptions import (
    CompetenceDisconnected,
    ExpertModelError,
    InfluenceNotComplete,
    InfluenceNotEarlier,
    NodeSetMismatch,
    NotAChainGraph,
    NotBnEquivalent,
    OverlappingCompetence,
)
from .graph import (
    ChainGraph,
    UndirectedGraph,
    ancestors,
    closure_graph,
    parents,
    underlying_graph,
    validate_chain_graph,
)

__all__ = [
    "Complex",
    "ExpertBlock",
    "complexes",
    "markov_equivalent",
    "covers",
    "is_protected",
    "protected_arrows",
    "is_largest",
    "largest_chain_graph",
    "equivalent_to_bn",
    "clique_blocks",
    "extract_equivalent_dag",
    "markov_equivalence_class",
    "markov_equivalent_dags",
    "compose_expert_model",
]


@dataclass(frozen=True, order=True)
class Complex:
    """A complex in canonical form.

    ``parents`` is the sorted pair of outer nodes; ``section`` is the line
    path between them, read from the child of ``parents[0]`` to the child
    of ``parents[1]``.
    """

    parents: tuple
    section: tuple

    @classmethod
    def from_path(cls, x, section, y) -> "Complex":
        section = tuple(section)
        if y < x:
            x, y, section = y, x, section[::-1]
        return cls((x, y), section)

    @property
    def arrows(self) -> tuple:
        return ((self.parents[0], self.section[0]), (self.parents[1], self.section[-1]))

    @property
    def nodes(self) -> frozenset:
        return frozenset(self.parents) | frozenset(self.section)

    def __str__(self):
        return f"{','.join(self.parents)} -> {'-'.join(self.section)}"


def _induced_line_paths(g, comp):
    """All chordless line paths inside ``comp``, each in both directions."""
    for start in sorted(comp):
        stack = [(start,)]
        while stack:
            path = stack.pop()
            yield path
            last = path[-1]
            for v in sorted(g.neighbours(last)):
                if v in path:
                    continue
                if any(v in g.neighbours(w) for w in path[:-1]):
                    continue
                stack.append(path + (v,))


def complexes(g) -> list:
    """All complexes of a chain graph, sorted.

    Examples
    --------
    >>> g = ChainGraph(lines=[("a", "b")], arrows=[("x", "a"), ("y", "b")])
    >>> [str(c) for c in complexes(g)]
    ['x,y -> a-b']
    """
    g = validate_chain_graph(g)
    found = set()
    for comp in g.chain:
        if not parents(g, comp):
            continue
        for path in _induced_line_paths(g, comp):
            inner_head = set(path[1:])
            inner_tail = set(path[:-1])
            xs = [x for x in g.parents_of(path[0]) if not (g.adjacent_to(x) & inner_head)]
            ys = [y for y in g.parents_of(path[-1]) if not (g.adjacent_to(y) & inner_tail)]
            for x in xs:
                for y in ys:
                    if x != y and not g.adjacent(x, y):
                        found.add(Complex.from_path(x, path, y))
    return sorted(found)


def markov_equivalent(g1, g2) -> bool:
    """Same underlying graph and same complexes."""
    if g1.nodes != g2.nodes:
        raise NodeSetMismatch("graphs are over different node sets")
    if underlying_graph(g1) != underlying_graph(g2):
        return False
    return complexes(g1) == complexes(g2)


def _check_arrow(g, arrow):
    if tuple(arrow) not in g.arrows:
        raise ValueError(f"{arrow[0]} -> {arrow[1]} is not an arrow of the graph")


def covers(g, arrow, other) -> bool:
    """True iff arrow ``u -> v`` covers ``x -> y``.

    That is, ``u`` is an ancestor of ``x`` and ``y`` is an ancestor of ``v``.
    """
    _check_arrow(g, arrow)
    _check_arrow(g, other)
    (u, v), (x, y) = arrow, other
    return u in ancestors(g, {x}) and y in ancestors(g, {v})


def protected_arrows(g) -> frozenset:
    """Arrows of ``g`` that cover at least one complex arrow."""
    g = validate_chain_graph(g)
    targets = {a for c in complexes(g) for a in c.arrows}
    an = {n: ancestors(g, {n}) for n in g.nodes}
    return frozenset(
        (u, v) for u, v in g.arrows if any(u in an[x] and y in an[v] for x, y in targets)
    )


def is_protected(g, arrow) -> bool:
    _check_arrow(g, arrow)
    return tuple(arrow) in protected_arrows(g)


def is_largest(g) -> bool:
    """A chain graph is largest in its class iff all its arrows are protected."""
    return len(protected_arrows(g)) == len(g.arrows)


def _with_lines(g, converted):
    """``g`` with the arrows in ``converted`` turned into lines, or None."""
    lines = [tuple(l) for l in g.lines] + list(converted)
    arrows = [a for a in g.arrows if a not in converted]
    try:
        return ChainGraph(g.nodes, lines, arrows)
    except NotAChainGraph:
        return None


def _conversion_candidates(g, unprotected):
    for arrow in unprotected:
        yield frozenset([arrow])
    # Some steps must merge two components at once: every arrow between
    # them becomes a line together.
    seen = set()
    for u, v in unprotected:
        upper, lower = g.component_of(u), g.component_of(v)
        batch = frozenset(a for a in g.arrows if a[0] in upper and a[1] in lower)
        if batch not in seen:
            seen.add(batch)
            yield batch


def largest_chain_graph(g) -> ChainGraph:
    """The largest chain graph Markov equivalent to ``g``.

    Unprotected arrows are turned into lines one at a time as long as the
    result stays a chain graph with unchanged complexes; when no single
    arrow can be converted, all arrows between the two components of an
    unprotected arrow are converted together.  The loop stops once every
    arrow is protected.
    """
    g = validate_chain_graph(g)
    target = complexes(g)
    while True:
        protected = protected_arrows(g)
        unprotected = sorted(a for a in g.arrows if a not in protected)
        if not unprotected:
            return g
        for batch in _conversion_candidates(g, unprotected):
            h = _with_lines(g, batch)
            if h is not None and complexes(h) == target:
                g = h
                break
        else:
            raise RuntimeError(f"no equivalence-preserving conversion for {unprotected}")


def equivalent_to_bn(g) -> bool:
    """True iff every closure graph of ``g`` is decomposable."""
    g = validate_chain_graph(g)
    return all(is_decomposable(closure_graph(g, comp)) for comp in g.chain)


def _default_start(H, pa):
    for k in cliques(H):
        if pa <= k:
            return k
    raise NotBnEquivalent("no clique contains the parent set")


def clique_blocks(g, comp, start=None) -> list:
    """Blocks of ``comp`` induced by a running-intersection clique ordering.

    The first block is the start clique minus the parents; each later block
    holds the nodes of the component that first appear in that clique.
    """
    H = closure_graph(g, comp)
    pa = parents(g, comp)
    if not is_decomposable(H):
        raise NotBnEquivalent(f"closure graph of {sorted(comp)} is not decomposable")
    if start is None:
        start = _default_start(H, pa)
    ordering = rip_ordering(H, start)
    blocks, used = [], set(pa)
    for k in ordering.cliques:
        block = k - used
        used |= block
        if block:
            blocks.append(frozenset(block))
    return blocks


def extract_equivalent_dag(g) -> ChainGraph:
    """Direct every line of a BN-equivalent chain graph into a Markov equivalent DAG.

    Nodes are ordered component by component along the chain, and inside a
    component block by block (:func:`clique_blocks`), alphabetically within a
    block.  Lines are directed along that order.
    """
    g = validate_chain_graph(g)
    position = {}
    for comp in g.chain:
        for block in clique_blocks(g, comp):
            for n in sorted(block):
                position[n] = len(position)
    arrows = list(g.arrows)
    for line in g.lines:
        u, v = sorted(line, key=position.__getitem__)
        arrows.append((u, v))
    return ChainGraph(g.nodes, (), arrows)


def markov_equivalence_class(g, directed_only=False) -> list:
    """Every chain graph Markov equivalent to ``g``, by exhaustive enumeration.

    Exponential in the number of edges; meant for small graphs.
    """
    g = validate_chain_graph(g)
    target = complexes(g)
    pairs = sorted(tuple(sorted(l)) for l in underlying_graph(g).lines)
    kinds = ("fwd", "bwd") if directed_only else ("line", "fwd", "bwd")
    out = []
    for choice in itertools.product(kinds, repeat=len(pairs)):
        lines, arrows = [], []
        for (u, v), kind in zip(pairs, choice):
            if kind == "line":
                lines.append((u, v))
            elif kind == "fwd":
                arrows.append((u, v))
            else:
                arrows.append((v, u))
        try:
            h = ChainGraph(g.nodes, lines, arrows)
        except NotAChainGraph:
            continue
        if complexes(h) == target:
            out.append(h)
    return out


def markov_equivalent_dags(g) -> list:
    """All acyclic directed graphs Markov equivalent to ``g``."""
    return markov_equivalence_class(g, directed_only=True)


@dataclass(frozen=True)
class ExpertBlock:
    """One expert's contribution: an area of competence, the influencing
    nodes from earlier areas, and an undirected structure over both."""

    competence: frozenset
    influence: frozenset
    local_structure: UndirectedGraph

    def __post_init__(self):
        object.__setattr__(self, "competence", frozenset(self.competence))
        object.__setattr__(self, "influence", frozenset(self.influence))
        if not self.competence:
            raise ExpertModelError("empty area of competence")
        if self.local_structure.nodes != self.competence | self.influence:
            raise ExpertModelError(
                f"local structure of {sorted(self.competence)} must cover exactly "
                "the competence and influence nodes"
            )


def _connected(H, nodes):
    nodes = set(nodes)
    start = min(nodes)
    seen, stack = {start}, [start]
    while stack:
        u = stack.pop()
        for v in H.neighbours(u) & nodes:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen == nodes


def compose_expert_model(blocks) -> ChainGraph:
    """Glue expert blocks into a chain graph whose components are the competences.

    Lines inside each competence are kept; a line between an influence node
    and a competence node becomes an arrow into the competence; lines among
    influence nodes are dropped.
    """
    lines, arrows = [], []
    earlier = set()
    for i, block in enumerate(blocks):
        C, pa, H = block.competence, block.influence, block.local_structure
        if C & earlier:
            raise OverlappingCompetence(f"block {i}: {sorted(C & earlier)} already assigned")
        if not pa <= earlier:
            raise InfluenceNotEarlier(f"block {i}: {sorted(pa - earlier)} not in an earlier area")
        if not is_complete(H, pa):
            raise InfluenceNotComplete(f"block {i}: influence set is not complete")
        if not _connected(H, C):
            raise CompetenceDisconnected(f"block {i}: competence is not connected")
        idle = {p for p in pa if not H.neighbours(p) & C}
        if idle:
            raise ExpertModelError(f"block {i}: {sorted(idle)} influence nothing in the area")
        for line in H.lines:
            u, v = sorted(line)
            if u in C and v in C:
                lines.append((u, v))
            elif u in C or v in C:
                p, c = (u, v) if v in C else (v, u)
                arrows.append((p, c))
        earlier |= C
    return ChainGraph(earlier, lines, arrows)
