"""Text formats for graphs, distributions and expert blocks.

Graph files hold one statement per line::

    # comment
    a -- b        line
    a -> d        arrow
    node h        isolated node

Distribution files start with ``vars a:2 b:2 c:3`` followed by one
probability per line, in row-major order of the sorted variables.

Expert files hold one block per line::

    expert: C = d,e ; pa = a ; lines = a-d, d-e
"""

from __future__ import annotations

import re
from pathlib import Path

import numpy as np

from .equivalence import ExpertBlock
from .exceptions import ChainGraphError, ConflictingEdge, ParseError
from .graph import EdgeKind, HybridGraph, UndirectedGraph
from .tables import DiscreteDistribution

__all__ = [
    "parse_graph",
    "format_graph",
    "parse_distribution",
    "format_distribution",
    "parse_experts",
    "format_experts",
    "read_graph",
    "read_distribution",
    "read_experts",
    "round_trip",
]

_NAME = r"[^\s#\->|,/]+"
_EDGE_RE = re.compile(rf"({_NAME})\s*(--|->)\s*({_NAME})\Z")
_NODE_RE = re.compile(rf"node\s+({_NAME})\Z")
_CARD_RE = re.compile(rf"({_NAME}):(\d+)\Z")


def _statements(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def parse_graph(text: str) -> HybridGraph:
    """Parse the graph text format.

    Raises
    ------
    ParseError
        On a malformed statement (with its line number).
    ConflictingEdge
        When a pair of nodes is declared more than once.
    """
    nodes, lines, arrows = set(), [], []
    declared = {}
    for lineno, line in _statements(text):
        m = _NODE_RE.match(line)
        if m:
            nodes.add(m.group(1))
            continue
        m = _EDGE_RE.match(line)
        if not m:
            raise ParseError(f"cannot parse {line!r}", lineno)
        u, op, v = m.groups()
        if u == v:
            raise ParseError(f"self-loop at {u}", lineno)
        pair = frozenset((u, v))
        if pair in declared:
            raise ConflictingEdge(
                f"{u} and {v} already joined on line {declared[pair]}", lineno
            )
        declared[pair] = lineno
        (lines if op == "--" else arrows).append((u, v))
    return HybridGraph(nodes, lines, arrows)


def format_graph(g: HybridGraph) -> str:
    """Canonical text: every node, then every edge by sorted pair."""
    out = [f"node {n}" for n in sorted(g.nodes)]
    for (u, v), kind in sorted(g.edges.items()):
        if kind is EdgeKind.LINE:
            out.append(f"{u} -- {v}")
        elif kind is EdgeKind.FORWARD:
            out.append(f"{u} -> {v}")
        else:
            out.append(f"{v} -> {u}")
    return "\n".join(out) + "\n"


def parse_distribution(text: str) -> DiscreteDistribution:
    stmts = list(_statements(text))
    if not stmts or not stmts[0][1].startswith("vars"):
        raise ParseError("missing 'vars' header", stmts[0][0] if stmts else None)
    lineno, header = stmts[0]
    domain = {}
    for tok in header.split()[1:]:
        m = _CARD_RE.match(tok)
        if not m:
            raise ParseError(f"bad variable declaration {tok!r}", lineno)
        name, card = m.group(1), int(m.group(2))
        if name in domain:
            raise ParseError(f"variable {name} declared twice", lineno)
        domain[name] = card
    values = []
    for lineno, line in stmts[1:]:
        try:
            values.append(float(line))
        except ValueError:
            raise ParseError(f"not a number: {line!r}", lineno) from None
    expected = int(np.prod([domain[v] for v in domain], dtype=np.int64))
    if len(values) != expected:
        raise ParseError(f"expected {expected} values, found {len(values)}")
    return DiscreteDistribution(domain, values)


def format_distribution(P: DiscreteDistribution) -> str:
    header = "vars " + " ".join(f"{v}:{c}" for v, c in zip(P.variables, P.cards))
    body = [format(float(x), ".17g") for x in P.values.ravel()]
    return "\n".join([header.rstrip()] + body) + "\n"


def _names(field, lineno):
    names = [n.strip() for n in field.split(",") if n.strip()]
    for n in names:
        if not re.fullmatch(_NAME, n):
            raise ParseError(f"bad node name {n!r}", lineno)
    return names


def parse_experts(text: str) -> list:
    """Parse expert blocks, one ``expert:`` statement per line."""
    blocks = []
    for lineno, line in _statements(text):
        if not line.startswith("expert:"):
            raise ParseError(f"expected 'expert:', got {line!r}", lineno)
        fields = {}
        for part in line[len("expert:"):].split(";"):
            key, sep, value = part.partition("=")
            key = key.strip()
            if not sep or key not in ("C", "pa", "lines") or key in fields:
                raise ParseError(f"bad field {part.strip()!r}", lineno)
            fields[key] = value
        if "C" not in fields:
            raise ParseError("missing 'C =' field", lineno)
        C = _names(fields["C"], lineno)
        pa = _names(fields.get("pa", ""), lineno)
        edges = []
        for item in fields.get("lines", "").split(","):
            item = item.strip()
            if not item:
                continue
            u, dash, v = item.partition("-")
            if not dash:
                raise ParseError(f"bad line {item!r}", lineno)
            edges.append(tuple(_names(f"{u},{v}", lineno)))
        try:
            H = UndirectedGraph(set(C) | set(pa), edges)
            blocks.append(ExpertBlock(frozenset(C), frozenset(pa), H))
        except ChainGraphError as exc:
            raise ParseError(str(exc), lineno) from None
    return blocks


def format_experts(blocks) -> str:
    out = []
    for b in blocks:
        lines = ", ".join(f"{u}-{v}" for u, v in sorted(tuple(sorted(l)) for l in b.local_structure.lines))
        out.append(
            f"expert: C = {','.join(sorted(b.competence))} ; "
            f"pa = {','.join(sorted(b.influence))} ; lines = {lines}"
        )
    return "\n".join(out) + "\n"


def read_graph(path) -> HybridGraph:
    return parse_graph(Path(path).read_text())


def read_distribution(path) -> DiscreteDistribution:
    return parse_distribution(Path(path).read_text())


def read_experts(path) -> list:
    return parse_experts(Path(path).read_text())


def _sniff(text):
    for _, line in _statements(text):
        if line.startswith("vars"):
            return parse_distribution, format_distribution
        if line.startswith("expert:"):
            return parse_experts, format_experts
        break
    return parse_graph, format_graph


def round_trip(path) -> bool:
    """True iff parse, serialize, parse reproduces the file's content."""
    text = Path(path).read_text()
    parse, fmt = _sniff(text)
    first = parse(text)
    return parse(fmt(first)) == first
