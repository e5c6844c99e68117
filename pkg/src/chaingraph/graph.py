"""Hybrid graphs, chain graphs and the structural primitives built on them.

A hybrid graph has at most one edge per pair of nodes and every edge is
either a *line* ``u -- v`` or an *arrow* ``u -> v``.  A chain graph is a
hybrid graph whose components (connectivity components of the line-only
subgraph) can be ordered so that every arrow points from an earlier
component to a strictly later one.

Graphs are immutable.  All functions in this module are pure.
"""

from __future__ import annotations

import enum
import heapq
import itertools
import random
import re
from collections import deque
from typing import Iterable

from .exceptions import (
    EmptyNodeSet,
    InvalidGraph,
    NotAChainGraph,
    NotAComponent,
)

__all__ = [
    "EdgeKind",
    "HybridGraph",
    "ChainGraph",
    "UndirectedGraph",
    "Triplet",
    "validate_chain_graph",
    "components",
    "parents",
    "ancestors",
    "induced_subgraph",
    "underlying_graph",
    "moral_graph",
    "closure_graph",
    "random_chain_graph",
    "node_key",
    "set_key",
]

_NODE_RE = re.compile(r"[^\s#\->|,/]+\Z")


def node_key(nodes: Iterable[str]) -> tuple:
    """Sort key giving the lexicographic order on node sets."""
    return tuple(sorted(nodes))


set_key = node_key


class EdgeKind(enum.Enum):
    """Edge kind relative to the canonical (sorted) orientation of a pair."""

    LINE = "--"
    FORWARD = "->"
    BACKWARD = "<-"


def _check_node(name):
    if not isinstance(name, str) or not _NODE_RE.match(name):
        raise InvalidGraph(f"invalid node identifier {name!r}")


class HybridGraph:
    """A graph whose edges are lines or arrows, at most one per node pair.

    Parameters
    ----------
    nodes : iterable of str
        Node identifiers.  Endpoints of the given edges are added
        automatically, so this only needs to list isolated nodes.
    lines : iterable of pairs
        Undirected edges ``{u, v}``.
    arrows : iterable of pairs
        Directed edges ``(u, v)`` meaning ``u -> v``.

    Examples
    --------
    >>> g = HybridGraph(lines=[("a", "b")], arrows=[("b", "c")])
    >>> sorted(g.nodes)
    ['a', 'b', 'c']
    >>> g.edge_kind("c", "b")
    <EdgeKind.BACKWARD: '<-'>
    """

    __slots__ = ("_nodes", "_lines", "_arrows", "_nbrs", "_pa", "_ch", "_hash")

    def __init__(self, nodes=(), lines=(), arrows=()):
        node_set = set(nodes)
        nbrs, pa, ch = {}, {}, {}
        seen = set()
        line_set, arrow_set = set(), set()
        for kind, edges in (("line", lines), ("arrow", arrows)):
            for edge in edges:
                u, v = edge
                if u == v:
                    raise InvalidGraph(f"self-loop at {u!r}")
                pair = frozenset((u, v))
                if pair in seen:
                    raise InvalidGraph(f"more than one edge between {u!r} and {v!r}")
                seen.add(pair)
                node_set.add(u)
                node_set.add(v)
                if kind == "line":
                    line_set.add(pair)
                    nbrs.setdefault(u, set()).add(v)
                    nbrs.setdefault(v, set()).add(u)
                else:
                    arrow_set.add((u, v))
                    ch.setdefault(u, set()).add(v)
                    pa.setdefault(v, set()).add(u)
        for name in node_set:
            _check_node(name)
        empty = frozenset()
        self._nodes = frozenset(node_set)
        self._lines = frozenset(line_set)
        self._arrows = frozenset(arrow_set)
        self._nbrs = {n: frozenset(nbrs.get(n, empty)) for n in node_set}
        self._pa = {n: frozenset(pa.get(n, empty)) for n in node_set}
        self._ch = {n: frozenset(ch.get(n, empty)) for n in node_set}
        self._hash = None

    # -- accessors ---------------------------------------------------------

    @property
    def nodes(self) -> frozenset:
        return self._nodes

    @property
    def lines(self) -> frozenset:
        """Set of lines as two-element frozensets."""
        return self._lines

    @property
    def arrows(self) -> frozenset:
        """Set of arrows as ``(tail, head)`` tuples."""
        return self._arrows

    @property
    def edges(self) -> dict:
        """Mapping from canonical pair ``(u, v)`` with ``u < v`` to :class:`EdgeKind`."""
        out = {}
        for line in self._lines:
            out[tuple(sorted(line))] = EdgeKind.LINE
        for u, v in self._arrows:
            out[(u, v) if u < v else (v, u)] = EdgeKind.FORWARD if u < v else EdgeKind.BACKWARD
        return out

    def neighbours(self, u) -> frozenset:
        """Nodes joined to ``u`` by a line."""
        return self._nbrs[u]

    def parents_of(self, u) -> frozenset:
        return self._pa[u]

    def children_of(self, u) -> frozenset:
        return self._ch[u]

    def adjacent_to(self, u) -> frozenset:
        return self._nbrs[u] | self._pa[u] | self._ch[u]

    def adjacent(self, u, v) -> bool:
        return v in self._nbrs[u] or v in self._pa[u] or v in self._ch[u]

    def edge_kind(self, u, v):
        """Kind of the edge between ``u`` and ``v`` read in the direction ``u, v``.

        Returns ``None`` when the nodes are not adjacent.
        """
        if v in self._nbrs[u]:
            return EdgeKind.LINE
        if v in self._ch[u]:
            return EdgeKind.FORWARD
        if v in self._pa[u]:
            return EdgeKind.BACKWARD
        return None

    @property
    def is_undirected(self) -> bool:
        return not self._arrows

    @property
    def is_directed(self) -> bool:
        return not self._lines

    # -- dunder ------------------------------------------------------------

    def _key(self):
        return (self._nodes, self._lines, self._arrows)

    def __eq__(self, other):
        if not isinstance(other, HybridGraph):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._key())
        return self._hash

    def __repr__(self):
        parts = [f"{u} -- {v}" for u, v in sorted(tuple(sorted(l)) for l in self._lines)]
        parts += [f"{u} -> {v}" for u, v in sorted(self._arrows)]
        touched = {n for l in self._lines for n in l} | {n for a in self._arrows for n in a}
        parts += [f"node {n}" for n in sorted(self._nodes - touched)]
        return f"{type(self).__name__}({'; '.join(parts)!r})"


class ChainGraph(HybridGraph):
    """A hybrid graph whose components admit a chain ordering.

    Construction fails with :class:`NotAChainGraph` when the graph has a
    semi-directed cycle.  The ``chain`` attribute is the topological order
    of the component condensation, ties broken by least member node.
    """

    __slots__ = ("chain", "_comp_of")

    def __init__(self, nodes=(), lines=(), arrows=()):
        super().__init__(nodes, lines, arrows)
        self.chain = _chain_order(self)
        self._comp_of = {n: comp for comp in self.chain for n in comp}

    def component_of(self, u) -> frozenset:
        return self._comp_of[u]


class UndirectedGraph(ChainGraph):
    """A hybrid graph without arrows."""

    __slots__ = ()

    def __init__(self, nodes=(), lines=(), arrows=()):
        if arrows:
            raise InvalidGraph("an undirected graph cannot have arrows")
        super().__init__(nodes, lines)


class Triplet:
    """Disjoint node sets ``<A, B | C>`` with ``A`` and ``B`` non-empty."""

    __slots__ = ("A", "B", "C")

    def __init__(self, A, B, C=()):
        self.A, self.B, self.C = frozenset(A), frozenset(B), frozenset(C)
        if not self.A or not self.B:
            raise ValueError("A and B must be non-empty")
        if self.A & self.B or self.A & self.C or self.B & self.C:
            raise ValueError("A, B and C must be pairwise disjoint")

    def swapped(self) -> "Triplet":
        return Triplet(self.B, self.A, self.C)

    @property
    def nodes(self) -> frozenset:
        return self.A | self.B | self.C

    def __eq__(self, other):
        if not isinstance(other, Triplet):
            return NotImplemented
        return (self.A, self.B, self.C) == (other.A, other.B, other.C)

    def __hash__(self):
        return hash((self.A, self.B, self.C))

    def __repr__(self):
        fmt = lambda s: ",".join(sorted(s))  # noqa: E731
        return f"Triplet({fmt(self.A)} / {fmt(self.B)} | {fmt(self.C)})"


# -- components and chain ordering --------------------------------------------


def _line_components(g: HybridGraph) -> list:
    seen = set()
    out = []
    for start in sorted(g.nodes):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in g.neighbours(u):
                if v not in comp:
                    comp.add(v)
                    queue.append(v)
        seen |= comp
        out.append(frozenset(comp))
    return out


def _line_path(g, source, target):
    """Shortest line-only path from ``source`` to ``target``."""
    prev = {source: None}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if u == target:
            break
        for v in sorted(g.neighbours(u)):
            if v not in prev:
                prev[v] = u
                queue.append(v)
    path = [target]
    while path[-1] != source:
        path.append(prev[path[-1]])
    return path[::-1]


def _chain_order(g: HybridGraph) -> tuple:
    comps = _line_components(g)
    comp_of = {n: i for i, comp in enumerate(comps) for n in comp}
    succ = [set() for _ in comps]
    link = {}
    for u, v in sorted(g.arrows):
        cu, cv = comp_of[u], comp_of[v]
        if cu == cv:
            raise NotAChainGraph([u] + _line_path(g, v, u))
        if cv not in succ[cu]:
            succ[cu].add(cv)
            link[cu, cv] = (u, v)
    indeg = [0] * len(comps)
    for s in succ:
        for j in s:
            indeg[j] += 1
    heap = [(min(comps[i]), i) for i in range(len(comps)) if indeg[i] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, i = heapq.heappop(heap)
        order.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, (min(comps[j]), j))
    if len(order) < len(comps):
        remaining = set(range(len(comps))) - set(order)
        raise NotAChainGraph(_cycle_witness(g, comps, succ, link, remaining))
    return tuple(comps[i] for i in order)


def _cycle_witness(g, comps, succ, link, remaining):
    # Every leftover component has a predecessor among the leftovers, so
    # walking predecessors must revisit one.
    pred = {j: [i for i in remaining if j in succ[i]] for j in remaining}
    walk = [min(remaining)]
    while walk[-1] not in walk[:-1]:
        walk.append(min(pred[walk[-1]]))
    start = walk.index(walk[-1])
    comp_cycle = walk[start:][::-1]
    nodes = []
    for k in range(len(comp_cycle) - 1):
        x, y = link[comp_cycle[k], comp_cycle[k + 1]]
        nxt = comp_cycle[(k + 2) % (len(comp_cycle) - 1)] if len(comp_cycle) > 2 else comp_cycle[0]
        x_next, _ = link[comp_cycle[k + 1], nxt]
        if not nodes:
            nodes.append(x)
        nodes.extend(_line_path(g, y, x_next))
    return nodes


def validate_chain_graph(g: HybridGraph) -> ChainGraph:
    """Return ``g`` as a :class:`ChainGraph` or raise :class:`NotAChainGraph`.

    The exception carries a witness semi-directed cycle as a node sequence
    whose first and last entries coincide.
    """
    if isinstance(g, ChainGraph):
        return g
    return ChainGraph(g.nodes, g.lines, g.arrows)


def components(g: HybridGraph) -> list:
    """Connectivity components of the line-only subgraph, sorted."""
    return sorted(_line_components(g), key=node_key)


# -- parents, ancestors, subgraphs ----------------------------------------------


def parents(g: HybridGraph, A) -> frozenset:
    """Nodes outside ``A`` with an arrow into ``A``."""
    A = frozenset(A)
    out = set()
    for u in A:
        out |= g.parents_of(u)
    return frozenset(out - A)


def ancestors(g: HybridGraph, A) -> frozenset:
    """Nodes reaching ``A`` by a path of forward arrows and lines.

    Always contains ``A`` itself.
    """
    result = set(A)
    queue = deque(result)
    while queue:
        u = queue.popleft()
        for v in itertools.chain(g.parents_of(u), g.neighbours(u)):
            if v not in result:
                result.add(v)
                queue.append(v)
    return frozenset(result)


def induced_subgraph(g: HybridGraph, A) -> HybridGraph:
    """Subgraph over ``A`` with exactly the edges of ``g`` inside ``A``.

    The result has the same class as ``g``; induced subgraphs of chain
    graphs are chain graphs.
    """
    A = frozenset(A)
    if not A:
        raise EmptyNodeSet("induced subgraph needs a non-empty node set")
    if not A <= g.nodes:
        raise InvalidGraph(f"unknown nodes {sorted(A - g.nodes)}")
    lines = [tuple(l) for l in g.lines if l <= A]
    arrows = [a for a in g.arrows if a[0] in A and a[1] in A]
    return type(g)(A, lines, arrows)


def underlying_graph(g: HybridGraph) -> UndirectedGraph:
    lines = [tuple(l) for l in g.lines] + list(g.arrows)
    return UndirectedGraph(g.nodes, lines)


def moral_graph(g: HybridGraph) -> UndirectedGraph:
    """Underlying graph plus a line between every two parents of a component."""
    pairs = {frozenset(l) for l in g.lines} | {frozenset(a) for a in g.arrows}
    for comp in _line_components(g):
        for u, v in itertools.combinations(sorted(parents(g, comp)), 2):
            pairs.add(frozenset((u, v)))
    return UndirectedGraph(g.nodes, [tuple(p) for p in pairs])


def closure_graph(g: HybridGraph, C) -> UndirectedGraph:
    """Closure graph of component ``C``.

    The underlying graph of the subgraph induced by ``C`` and its parents,
    with the parent set made complete.
    """
    C = frozenset(C)
    if C not in _line_components(g):
        raise NotAComponent(f"{sorted(C)} is not a component")
    pa = parents(g, C)
    scope = C | pa
    pairs = {frozenset(l) for l in g.lines if l <= scope}
    pairs |= {frozenset(a) for a in g.arrows if a[0] in scope and a[1] in scope}
    pairs |= {frozenset(p) for p in itertools.combinations(pa, 2)}
    return UndirectedGraph(scope, [tuple(p) for p in pairs])


def random_chain_graph(n: int, seed=None, *, edge_prob=0.5, line_prob=0.5, names=None) -> ChainGraph:
    """Draw a random chain graph on ``n`` nodes.

    Nodes are shuffled and cut into consecutive blocks; each block is made
    line-connected by a random spanning tree plus extra lines, and pairs in
    different blocks get an arrow (earlier to later) with ``edge_prob``.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if names is None:
        names = [chr(ord("a") + i) for i in range(n)] if n <= 26 else [f"v{i}" for i in range(n)]
    order = list(names)
    rng.shuffle(order)
    blocks, current = [], [order[0]]
    for name in order[1:]:
        if rng.random() < line_prob:
            current.append(name)
        else:
            blocks.append(current)
            current = [name]
    blocks.append(current)
    lines, arrows = [], []
    for block in blocks:
        for i in range(1, len(block)):
            lines.append((block[rng.randrange(i)], block[i]))
        present = {frozenset(l) for l in lines}
        for u, v in itertools.combinations(block, 2):
            if frozenset((u, v)) not in present and rng.random() < edge_prob:
                lines.append((u, v))
    for i, j in itertools.combinations(range(len(blocks)), 2):
        for u in blocks[i]:
            for v in blocks[j]:
                if rng.random() < edge_prob:
                    arrows.append((u, v))
    return ChainGraph(names, lines, arrows)
