"""Command-line front end.

Exit status is 0 on success, 1 on a domain error (bad file content, a graph
that is not a chain graph, ...) and 2 on a usage error.  Output is built
completely before anything is printed, so a failing command prints only
its one-line diagnostic on stderr.
"""

from __future__ import annotations

import argparse
import sys

from . import equivalence as eq
from . import graph as gc
from . import io, separation, tables
from .exceptions import ChainGraphError

__all__ = ["main", "build_parser", "run"]


def _fmt(nodes) -> str:
    return ",".join(sorted(nodes))


def _node_list(text):
    return frozenset(n.strip() for n in text.split(",") if n.strip())


def _chain(path):
    return gc.validate_chain_graph(io.read_graph(path))


def _domain(nodes, cards, default):
    domain = {n: default for n in nodes}
    for item in filter(None, (s.strip() for s in (cards or "").split(","))):
        name, _, card = item.partition(":")
        if name not in domain or not card.isdigit():
            raise ChainGraphError(f"bad cardinality {item!r}")
        domain[name] = int(card)
    return domain


def _check_nodes(g, nodes):
    unknown = set(nodes) - g.nodes
    if unknown:
        raise ChainGraphError(f"unknown nodes {_fmt(unknown)}")


def cmd_validate(args):
    g = _chain(args.graph)
    return [_fmt(comp) for comp in g.chain]


def cmd_components(args):
    return [_fmt(comp) for comp in gc.components(io.read_graph(args.graph))]


def cmd_moralize(args):
    return [io.format_graph(gc.moral_graph(_chain(args.graph))).rstrip("\n")]


def cmd_closure(args):
    g = _chain(args.graph)
    return [io.format_graph(gc.closure_graph(g, _node_list(args.component))).rstrip("\n")]


def cmd_complexes(args):
    return [str(c) for c in eq.complexes(_chain(args.graph))]


def cmd_equiv(args):
    same = eq.markov_equivalent(_chain(args.first), _chain(args.second))
    return ["equivalent" if same else "not-equivalent"]


def cmd_largest(args):
    return [io.format_graph(eq.largest_chain_graph(_chain(args.graph))).rstrip("\n")]


def cmd_is_largest(args):
    return ["largest" if eq.is_largest(_chain(args.graph)) else "not-largest"]


def cmd_to_dag(args):
    g = _chain(args.graph)
    if not eq.equivalent_to_bn(g):
        raise ChainGraphError("graph is not Markov equivalent to a Bayesian network")
    return [io.format_graph(eq.extract_equivalent_dag(g)).rstrip("\n")]


def cmd_bn_equiv(args):
    return ["bn-equivalent" if eq.equivalent_to_bn(_chain(args.graph)) else "not-bn-equivalent"]


def cmd_compose(args):
    return [io.format_graph(eq.compose_expert_model(io.read_experts(args.experts))).rstrip("\n")]


def cmd_sep(args):
    g = _chain(args.graph)
    A, C = _node_list(args.from_), _node_list(args.given)
    _check_nodes(g, A | C)
    B, trace = separation.reach(g, separation.SeparationQuery(A, C))
    out = sorted(B)
    if args.trace:
        out += [f"{k}: {_fmt(getattr(trace, k))}" for k in "UVWZ"]
    return out


def cmd_ci(args):
    g = _chain(args.graph)
    parts = args.triplet.split("/")
    if len(parts) != 3:
        raise ChainGraphError("triplet must look like 'A / B / C'")
    A, B, C = (_node_list(p) for p in parts)
    _check_nodes(g, A | B | C)
    try:
        t = gc.Triplet(A, B, C)
    except ValueError as exc:
        raise ChainGraphError(str(exc)) from None
    return ["represented" if separation.c_separated(g, t) else "not-represented"]


def cmd_formula(args):
    g = _chain(args.graph)
    if args.conditional:
        return [str(t) for t in tables.conditional_formula(g, form=args.form)]
    f = tables.graph_formula(g)
    if args.simplify:
        f = tables.formula_simplify(f)
    return [str(f)]


def cmd_memsize(args):
    g = _chain(args.graph)
    demand = tables.memory_demand(g, _domain(g.nodes, args.card, args.default_card), form=args.form)
    return [f"naive: {demand.naive}", f"algebraic: {demand.algebraic}"]


def cmd_check_markov(args):
    g = _chain(args.graph)
    P = io.read_distribution(args.dist)
    ok = tables.is_markovian_check(P, g, tol=args.tol)
    return ["markovian" if ok else "not-markovian"]


def cmd_random_dist(args):
    g = _chain(args.graph)
    P = tables.random_markovian(g, _domain(g.nodes, args.card, args.default_card), args.seed)
    return [io.format_distribution(P).rstrip("\n")]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chaingraph", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help, *graph_args):
        p = sub.add_parser(name, help=help)
        for a in graph_args:
            p.add_argument(a)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "print the chain of components", "graph")
    add("components", cmd_components, "print the components", "graph")
    add("moralize", cmd_moralize, "print the moral graph", "graph")
    add("closure", cmd_closure, "print the closure graph of a component", "graph").add_argument(
        "--component", required=True
    )
    add("complexes", cmd_complexes, "list the complexes", "graph")
    add("equiv", cmd_equiv, "test Markov equivalence", "first", "second")
    add("largest", cmd_largest, "print the largest equivalent chain graph", "graph")
    add("is-largest", cmd_is_largest, "test whether every arrow is protected", "graph")
    add("to-dag", cmd_to_dag, "print an equivalent acyclic directed graph", "graph")
    add("bn-equiv", cmd_bn_equiv, "test equivalence to some Bayesian network", "graph")
    add("compose", cmd_compose, "build a chain graph from expert blocks", "experts")

    p = add("sep", cmd_sep, "largest set separated from --from given --given")
    p.add_argument("--graph", required=True)
    p.add_argument("--from", dest="from_", required=True)
    p.add_argument("--given", default="")
    p.add_argument("--trace", action="store_true")

    p = add("ci", cmd_ci, "test whether a triplet 'A / B / C' is represented")
    p.add_argument("--graph", required=True)
    p.add_argument("--triplet", required=True)

    p = add("formula", cmd_formula, "print the factorization formula", "graph")
    p.add_argument("--simplify", action="store_true")
    p.add_argument("--conditional", action="store_true")
    p.add_argument("--form", choices=("chain", "ratio"), default="chain")

    for name, func, help in (
        ("memsize", cmd_memsize, "count stored values of the conditional formula"),
        ("random-dist", cmd_random_dist, "sample a Markovian distribution"),
    ):
        p = add(name, func, help, "graph")
        p.add_argument("--card", default="", help="overrides like a:3,b:2")
        p.add_argument("--default-card", type=int, default=2)
    sub.choices["memsize"].add_argument("--form", choices=("chain", "ratio"), default="chain")
    sub.choices["random-dist"].add_argument("--seed", type=int, required=True)

    p = add("check-markov", cmd_check_markov, "test a distribution against a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--dist", required=True)
    p.add_argument("--tol", type=float, default=1e-9)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        lines = args.func(args)
    except (ChainGraphError, OSError) as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    for line in lines:
        print(line, file=stdout)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
