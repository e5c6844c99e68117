"""Discrete distributions as dense tables, and factorization formulas.

Variables are always kept in lexicographic order, so every table over a
set of variables ``S`` has one axis per member of ``sorted(S)``.  Because
sub-scopes keep that relative order, aligning a table with a larger scope
is a plain reshape that inserts singleton axes.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, NamedTuple

import numpy as np

from .chordal import CliqueOrdering, cliques, is_decomposable, rip_ordering
from .exceptions import (
    BadStartClique,
    DivisionByZeroWithNonzeroNumerator,
    InvalidDistribution,
    NodeSetMismatch,
    NotAClique,
    NotBnEquivalent,
    ScopeMismatch,
    ZeroNormalizer,
)
from .graph import Triplet, closure_graph, node_key, parents, validate_chain_graph
from .separation import SeparationQuery, reach

__all__ = [
    "DiscreteDistribution",
    "Factor",
    "ConditionalTable",
    "FactorizationFormula",
    "ConditionalTerm",
    "MemoryDemand",
    "marginal",
    "conditional",
    "ci_holds",
    "build_from_factors",
    "random_markovian",
    "random_distribution",
    "is_markovian_check",
    "decomposable_formula_marginal",
    "decomposable_formula_conditional",
    "graph_formula",
    "formula_simplify",
    "formula_evaluate",
    "conditional_formula",
    "evaluate_conditional_formula",
    "memory_demand",
]

NORMALIZATION_TOL = 1e-12


def _align(table, scope, target):
    """Reshape ``table`` over sorted ``scope`` so it broadcasts over sorted ``target``."""
    scope = set(scope)
    shape = []
    it = iter(table.shape)
    for v in target:
        shape.append(next(it) if v in scope else 1)
    return table.reshape(shape)


class DiscreteDistribution:
    """A probability table over finitely many discrete variables.

    Parameters
    ----------
    domain : mapping
        Variable name to number of states.  States are ``0 .. card - 1``.
    values : array_like
        Probabilities in row-major order of the sorted variables.  Any shape
        with the right number of entries is accepted.

    Notes
    -----
    The distribution over no variables is the constant 1.
    """

    __slots__ = ("variables", "cards", "values")

    def __init__(self, domain: Mapping[str, int], values):
        self.variables = tuple(sorted(domain))
        self.cards = tuple(int(domain[v]) for v in self.variables)
        if any(c < 1 for c in self.cards):
            raise InvalidDistribution("every variable needs at least one state")
        values = np.array(values, dtype=float).reshape(self.cards)
        if not np.all(np.isfinite(values)) or np.any(values < 0):
            raise InvalidDistribution("probabilities must be finite and non-negative")
        total = values.sum()
        if abs(total - 1.0) > NORMALIZATION_TOL:
            raise InvalidDistribution(f"probabilities sum to {total!r}, not 1")
        values.flags.writeable = False
        self.values = values

    @property
    def domain(self) -> dict:
        return dict(zip(self.variables, self.cards))

    @property
    def nodes(self) -> frozenset:
        return frozenset(self.variables)

    def __eq__(self, other):
        if not isinstance(other, DiscreteDistribution):
            return NotImplemented
        return self.variables == other.variables and self.cards == other.cards and np.array_equal(
            self.values, other.values
        )

    def __repr__(self):
        dom = " ".join(f"{v}:{c}" for v, c in zip(self.variables, self.cards))
        return f"DiscreteDistribution({dom})"


class Factor:
    """A non-negative table over ``sorted(scope)``; no normalization implied."""

    __slots__ = ("scope", "table")

    def __init__(self, scope, table):
        self.scope = tuple(sorted(scope))
        table = np.asarray(table, dtype=float)
        if table.ndim != len(self.scope):
            raise ScopeMismatch(f"table has {table.ndim} axes for scope {self.scope}")
        if np.any(table < 0):
            raise ValueError("factor values must be non-negative")
        self.table = table

    @property
    def domain(self) -> dict:
        return dict(zip(self.scope, self.table.shape))

    def __repr__(self):
        return f"Factor({','.join(self.scope)})"


class ConditionalTable:
    """Conditional probabilities of ``head`` given ``tail``.

    ``table`` has one axis per variable of ``sorted(head | tail)``.
    """

    __slots__ = ("head", "tail", "table")

    def __init__(self, head, tail, table):
        self.head = frozenset(head)
        self.tail = frozenset(tail)
        self.table = np.asarray(table, dtype=float)

    @property
    def variables(self) -> tuple:
        return tuple(sorted(self.head | self.tail))

    def __repr__(self):
        return f"ConditionalTable({','.join(sorted(self.head))} | {','.join(sorted(self.tail))})"


# -- marginals and conditionals -----------------------------------------------


def _check_vars(P, A):
    missing = set(A) - set(P.variables)
    if missing:
        raise NodeSetMismatch(f"variables {sorted(missing)} not in the distribution")


def marginal(P: DiscreteDistribution, A) -> DiscreteDistribution:
    """Sum out every variable outside ``A``."""
    _check_vars(P, A)
    axes = tuple(i for i, v in enumerate(P.variables) if v not in A)
    values = P.values.sum(axis=axes) if axes else P.values
    return DiscreteDistribution({v: P.domain[v] for v in A}, values)


def _divide(num, den):
    out = np.zeros(np.broadcast_shapes(num.shape, den.shape))
    np.divide(num, den, out=out, where=np.broadcast_to(den > 0, out.shape))
    return out


def conditional(P: DiscreteDistribution, A, B) -> ConditionalTable:
    """``P(A | B)``, zero wherever the conditioning state has zero mass."""
    A, B = frozenset(A), frozenset(B)
    if A & B:
        raise ValueError("A and B must be disjoint")
    scope = tuple(sorted(A | B))
    joint = marginal(P, A | B).values
    den = _align(marginal(P, B).values, sorted(B), scope)
    return ConditionalTable(A, B, _divide(joint, den))


def ci_holds(P: DiscreteDistribution, t: Triplet, tol: float = 1e-9) -> bool:
    """Check ``A`` independent of ``B`` given ``C`` under ``P``.

    Compares ``P(A | B, C)`` with ``P(A | C)`` on every state whose
    ``(B, C)`` marginal is positive.
    """
    A, B, C = t.A, t.B, t.C
    scope = tuple(sorted(A | B | C))
    p_abc = marginal(P, A | B | C).values
    p_bc = _align(marginal(P, B | C).values, sorted(B | C), scope)
    p_ac = _align(marginal(P, A | C).values, sorted(A | C), scope)
    p_c = _align(marginal(P, C).values, sorted(C), scope)
    mask = np.broadcast_to(p_bc > 0, p_abc.shape)
    diff = _divide(p_abc, p_bc) - _divide(p_ac, p_c)
    return bool(np.all(np.abs(diff[mask]) <= tol))


# -- building Markovian distributions -------------------------------------------


def build_from_factors(g, factors: Mapping) -> DiscreteDistribution:
    """Distribution factorizing along a chain graph.

    Parameters
    ----------
    g : ChainGraph
    factors : mapping
        For every component, one :class:`Factor` per clique of its closure
        graph.

    For each component the clique factors are multiplied, normalized over
    the component's states for each parent state, and the resulting
    conditionals are multiplied across components.
    """
    g = validate_chain_graph(g)
    domain = {}
    for comp in g.chain:
        for f in factors.get(comp, ()):
            for v, c in f.domain.items():
                if domain.setdefault(v, c) != c:
                    raise ScopeMismatch(f"variable {v} has inconsistent cardinalities")
    if set(domain) != g.nodes:
        raise ScopeMismatch("factors do not cover every node")
    variables = tuple(sorted(g.nodes))
    P = np.ones([domain[v] for v in variables])
    for comp in g.chain:
        fs = list(factors.get(comp, ()))
        want = sorted(map(node_key, cliques(closure_graph(g, comp))))
        have = sorted(f.scope for f in fs)
        if have != want:
            raise ScopeMismatch(f"component {sorted(comp)}: factor scopes {have} != cliques {want}")
        local = tuple(sorted(comp | parents(g, comp)))
        Q = np.ones([domain[v] for v in local])
        for f in fs:
            Q = Q * _align(f.table, f.scope, local)
        axes = tuple(i for i, v in enumerate(local) if v in comp)
        norm = Q.sum(axis=axes, keepdims=True)
        if np.any(norm <= 0):
            raise ZeroNormalizer(f"component {sorted(comp)} has a parent state with zero mass")
        P = P * _align(Q / norm, local, variables)
    return DiscreteDistribution(domain, P)


def random_markovian(g, domain: Mapping[str, int], seed, *, low=0.1, high=1.0) -> DiscreteDistribution:
    """Strictly positive distribution factorizing along ``g``.

    Clique factor entries are drawn uniformly from ``[low, high]``.
    """
    g = validate_chain_graph(g)
    rng = np.random.default_rng(seed)
    factors = {}
    for comp in g.chain:
        fs = []
        for k in cliques(closure_graph(g, comp)):
            shape = [domain[v] for v in sorted(k)]
            fs.append(Factor(k, rng.uniform(low, high, size=shape)))
        factors[comp] = fs
    return build_from_factors(g, factors)


def random_distribution(domain: Mapping[str, int], seed) -> DiscreteDistribution:
    """Arbitrary strictly positive distribution, uniform on the simplex."""
    rng = np.random.default_rng(seed)
    size = math.prod(domain.values())
    return DiscreteDistribution(domain, rng.dirichlet(np.ones(size)))


def is_markovian_check(P: DiscreteDistribution, g, tol: float = 1e-9) -> bool:
    """Does every triplet represented in ``g`` hold as an independence under ``P``?

    For each disjoint ``(A, C)`` only the largest separated ``B`` is
    checked: every represented ``<A, B' | C>`` has ``B'`` inside it and
    independence passes to subsets.
    """
    g = validate_chain_graph(g)
    if P.nodes != g.nodes:
        raise NodeSetMismatch("distribution and graph have different variables")
    nodes = sorted(g.nodes)
    for labels in itertools.product((0, 1, 2), repeat=len(nodes)):
        A = frozenset(n for n, l in zip(nodes, labels) if l == 1)
        if not A:
            continue
        C = frozenset(n for n, l in zip(nodes, labels) if l == 2)
        B, _ = reach(g, SeparationQuery(A, C))
        if B and not ci_holds(P, Triplet(A, B, C), tol):
            return False
    return True


# -- factorization formulas --------------------------------------------------


@dataclass(frozen=True)
class FactorizationFormula:
    """A product of marginals divided by a product of marginals.

    Both sides are multisets of scopes; they are stored sorted so that
    ``==`` is multiset equality.  Empty scopes are dropped since the
    marginal over no variables is 1.
    """

    numerator: tuple = ()
    denominator: tuple = ()

    def __post_init__(self):
        for name in ("numerator", "denominator"):
            scopes = [frozenset(s) for s in getattr(self, name)]
            scopes = sorted((s for s in scopes if s), key=node_key)
            object.__setattr__(self, name, tuple(scopes))

    def __str__(self):
        fmt = lambda side: " ".join("{" + ",".join(sorted(s)) + "}" for s in side) or "1"  # noqa: E731
        return f"num: {fmt(self.numerator)} den: {fmt(self.denominator)}"


class ConditionalTerm(NamedTuple):
    head: frozenset
    tail: frozenset
    exponent: int

    def __str__(self):
        tail = "|" + ",".join(sorted(self.tail)) if self.tail else ""
        text = f"P({','.join(sorted(self.head))}{tail})"
        return text if self.exponent > 0 else f"1/{text}"


def decomposable_formula_marginal(scope, ordering: CliqueOrdering) -> FactorizationFormula:
    """Clique marginals over separator marginals for a running-intersection ordering."""
    if ordering.nodes != frozenset(scope):
        raise ScopeMismatch("the cliques do not cover the scope")
    return FactorizationFormula(ordering.cliques, ordering.separators)


def decomposable_formula_conditional(ordering: CliqueOrdering) -> list:
    """``Q = prod Q(K_i \\ S_i | S_i)`` with ``S_1`` empty."""
    terms = [ConditionalTerm(ordering.cliques[0], frozenset(), 1)]
    for k, s in zip(ordering.cliques[1:], ordering.separators):
        terms.append(ConditionalTerm(k - s, s, 1))
    return terms


def _component_orderings(g, start_cliques):
    g = validate_chain_graph(g)
    start_cliques = {frozenset(c): frozenset(k) for c, k in (start_cliques or {}).items()}
    out = []
    for comp in g.chain:
        H = closure_graph(g, comp)
        pa = parents(g, comp)
        if not is_decomposable(H):
            raise NotBnEquivalent(f"closure graph of {sorted(comp)} is not decomposable")
        start = start_cliques.get(comp)
        if start is None:
            start = next(k for k in cliques(H) if pa <= k)
        elif not pa <= start:
            raise BadStartClique(f"start clique {sorted(start)} misses parents of {sorted(comp)}")
        try:
            ordering = rip_ordering(H, start)
        except NotAClique as exc:
            raise BadStartClique(str(exc)) from None
        out.append((comp, pa, ordering))
    return out


def graph_formula(g, start_cliques=None) -> FactorizationFormula:
    """Marginal-ratio formula of a chain graph equivalent to a Bayesian network.

    Per component: the cliques of its closure graph over the parent set and
    the separators (with multiplicity) of a running-intersection ordering
    that starts with a clique containing the parents.

    Parameters
    ----------
    g : ChainGraph
    start_cliques : mapping, optional
        Component to start clique.  Defaults to the lexicographically
        least clique containing the component's parents.
    """
    num, den = [], []
    for _, pa, ordering in _component_orderings(g, start_cliques):
        num.extend(ordering.cliques)
        den.append(pa)
        den.extend(ordering.separators)
    return FactorizationFormula(num, den)


def formula_simplify(f: FactorizationFormula) -> FactorizationFormula:
    """Cancel scopes occurring in both numerator and denominator."""
    num, den = Counter(f.numerator), Counter(f.denominator)
    common = num & den
    return FactorizationFormula(list((num - common).elements()), list((den - common).elements()))


def _ratio(num, den):
    bad = (den == 0) & (num != 0)
    if np.any(bad):
        raise DivisionByZeroWithNonzeroNumerator("nonzero value over a zero denominator")
    return _divide(num, den)


def formula_evaluate(f: FactorizationFormula, P: DiscreteDistribution) -> Factor:
    """Evaluate a marginal-ratio formula pointwise on ``P``, with ``0/0 = 0``.

    The result is a :class:`Factor` over the union of the numerator scopes;
    for a Markovian ``P`` and a formula of its graph it equals ``P``.
    """
    scope = tuple(sorted(frozenset().union(*f.numerator))) if f.numerator else ()
    if not set().union(*f.denominator) <= set(scope):
        raise ScopeMismatch("denominator mentions variables absent from the numerator")
    shape = [P.domain[v] for v in scope]
    num, den = np.ones(shape), np.ones(shape)
    for s in f.numerator:
        num = num * _align(marginal(P, s).values, sorted(s), scope)
    for s in f.denominator:
        den = den * _align(marginal(P, s).values, sorted(s), scope)
    return Factor(scope, _ratio(num, den))


def conditional_formula(g, start_cliques=None, form: str = "chain") -> list:
    """Factorization of ``P`` into conditional probabilities.

    ``form="chain"`` gives, per component, ``P(K_1 \\ pa | pa)`` followed by
    ``P(K_i \\ S_i | S_i)`` for the later cliques.  ``form="ratio"`` gives
    ``P(K \\ pa | K & pa)`` for every clique and ``1 / P(S \\ pa | S & pa)``
    for every separator occurrence.
    """
    if form not in ("chain", "ratio"):
        raise ValueError(f"unknown form {form!r}")
    terms = []
    for _, pa, ordering in _component_orderings(g, start_cliques):
        if form == "chain":
            pieces = [(ordering.cliques[0] - pa, pa, 1)]
            pieces += [(k - s, s, 1) for k, s in zip(ordering.cliques[1:], ordering.separators)]
        else:
            pieces = [(k - pa, k & pa, 1) for k in ordering.cliques]
            pieces += [(s - pa, s & pa, -1) for s in ordering.separators]
        terms.extend(ConditionalTerm(h, t, e) for h, t, e in pieces if h)
    return terms


def evaluate_conditional_formula(terms, P: DiscreteDistribution) -> Factor:
    """Multiply (or divide by) the conditional tables of ``P`` named in ``terms``."""
    scope = tuple(sorted(frozenset().union(*(t.head | t.tail for t in terms))))
    shape = [P.domain[v] for v in scope]
    num, den = np.ones(shape), np.ones(shape)
    for term in terms:
        table = conditional(P, term.head, term.tail)
        aligned = _align(table.table, table.variables, scope)
        if term.exponent > 0:
            num = num * aligned
        else:
            den = den * aligned
    return Factor(scope, _ratio(num, den))


class MemoryDemand(NamedTuple):
    naive: int
    algebraic: int


def memory_demand(g, domain: Mapping[str, int], form: str = "chain") -> MemoryDemand:
    """Table sizes needed to store a distribution through :func:`conditional_formula`.

    ``naive`` counts every entry of each numerator table, plus each distinct
    denominator table once.  ``algebraic`` counts free parameters:
    ``|X_tail| * (|X_head| - 1)`` per numerator term, minus the same for
    each denominator occurrence.
    """
    size = lambda S: math.prod(domain[v] for v in S)  # noqa: E731
    terms = conditional_formula(g, form=form)
    naive = sum(size(t.head | t.tail) for t in terms if t.exponent > 0)
    naive += sum(size(h | t) for h, t in {(t.head, t.tail) for t in terms if t.exponent < 0})
    algebraic = sum(t.exponent * size(t.tail) * (size(t.head) - 1) for t in terms)
    return MemoryDemand(naive, algebraic)
