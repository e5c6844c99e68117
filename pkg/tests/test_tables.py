import itertools
import random
from collections import defaultdict

import numpy as np
import pytest

from chaingraph import (
    ChainGraph,
    DiscreteDistribution,
    Factor,
    FactorizationFormula,
    Triplet,
    UndirectedGraph,
    build_from_factors,
    ci_holds,
    cliques,
    closure_graph,
    conditional,
    conditional_formula,
    equivalent_to_bn,
    evaluate_conditional_formula,
    extract_equivalent_dag,
    formula_evaluate,
    formula_simplify,
    graph_formula,
    is_decomposable,
    is_markovian_check,
    marginal,
    memory_demand,
    parents,
    random_chain_graph,
    random_distribution,
    random_markovian,
    rip_ordering,
)
from chaingraph.chordal import CliqueOrdering
from chaingraph.exceptions import (
    BadStartClique,
    DivisionByZeroWithNonzeroNumerator,
    InvalidDistribution,
    NotBnEquivalent,
    ScopeMismatch,
    ZeroNormalizer,
)
from chaingraph.tables import (
    ConditionalTerm,
    decomposable_formula_conditional,
    decomposable_formula_marginal,
)
from graphs import D3, G1, L3, SQUARE
from oracles import all_chain_graphs, equivalence_classes, rip_permutations, small_undirected_graphs

TOL = 1e-10


def binary(nodes):
    return {v: 2 for v in nodes}


def scopes(side):
    return sorted("".join(sorted(s)) for s in side)


def table_of(P):
    """Dictionary ``state tuple -> probability`` by explicit iteration."""
    return {
        state: float(P.values[state])
        for state in itertools.product(*(range(c) for c in P.cards))
    }


def naive_marginal(P, A):
    keep = [i for i, v in enumerate(P.variables) if v in A]
    out = defaultdict(float)
    for state, p in table_of(P).items():
        out[tuple(state[i] for i in keep)] += p
    return dict(out)


def copy_distribution():
    """``a`` a fair coin and ``b`` an exact copy of it."""
    return DiscreteDistribution({"a": 2, "b": 2}, [0.5, 0, 0, 0.5])


def close(factor, P):
    assert factor.scope == P.variables
    return np.max(np.abs(factor.table - P.values))


class TestDistribution:
    def test_validation(self):
        with pytest.raises(InvalidDistribution):
            DiscreteDistribution({"a": 2}, [0.7, 0.7])
        with pytest.raises(InvalidDistribution):
            DiscreteDistribution({"a": 2}, [1.5, -0.5])
        with pytest.raises(ValueError):
            DiscreteDistribution({"a": 2}, [1.0])

    def test_read_only(self):
        P = copy_distribution()
        with pytest.raises(ValueError):
            P.values[0, 0] = 1.0

    def test_axis_order_is_sorted(self):
        P = DiscreteDistribution({"b": 2, "a": 3}, np.arange(6) / 15)
        assert P.variables == ("a", "b")
        assert P.values.shape == (3, 2)


class TestMarginal:
    def test_identity(self):
        P = random_distribution(binary("abc"), 1)
        assert marginal(P, "abc") == P

    def test_uniform(self):
        P = DiscreteDistribution(binary("ab"), np.full(4, 0.25))
        assert np.allclose(marginal(P, "a").values, [0.5, 0.5])

    def test_empty_scope_is_one(self):
        assert float(marginal(random_distribution(binary("ab"), 0), ()).values) == pytest.approx(1.0)

    def test_against_summation(self):
        P = random_distribution({"a": 2, "b": 3, "c": 2}, 42)
        for r in range(4):
            for A in itertools.combinations("abc", r):
                got = marginal(P, A)
                for state, p in naive_marginal(P, A).items():
                    assert abs(got.values[state] - p) <= 1e-12


class TestConditional:
    def test_empty_tail_is_marginal(self):
        P = random_distribution(binary("abc"), 3)
        assert np.array_equal(conditional(P, "ab", ()).table, marginal(P, "ab").values)

    def test_copy_is_identity(self):
        assert np.array_equal(conditional(copy_distribution(), "b", "a").table, np.eye(2))

    def test_zero_mass_state(self):
        P = DiscreteDistribution(binary("ab"), [0.5, 0.5, 0, 0])
        assert np.array_equal(conditional(P, "b", "a").table, [[0.5, 0.5], [0, 0]])

    def test_against_ratio(self):
        P = random_distribution({"a": 2, "b": 3, "c": 2}, 5)
        joint = naive_marginal(P, "abc")
        tail = naive_marginal(P, "c")
        got = conditional(P, "ab", "c")
        for (x, y, z), p in joint.items():
            assert abs(got.table[x, y, z] - p / tail[(z,)]) <= 1e-12

    def test_overlap_rejected(self):
        with pytest.raises(ValueError):
            conditional(copy_distribution(), "a", "ab")


class TestCiHolds:
    def test_product_distribution(self):
        rng = np.random.default_rng(0)
        parts = [rng.dirichlet(np.ones(2)) for _ in range(3)]
        P = DiscreteDistribution(binary("abc"), np.einsum("i,j,k->ijk", *parts))
        for A, B, C in [("a", "b", ""), ("a", "bc", ""), ("a", "b", "c"), ("c", "ab", "")]:
            assert ci_holds(P, Triplet(A, B, C))

    def test_copy(self):
        assert not ci_holds(copy_distribution(), Triplet("a", "b"))

    def test_markov_chain_copy(self):
        # a fair, b := a, c := b
        values = np.zeros((2, 2, 2))
        values[0, 0, 0] = values[1, 1, 1] = 0.5
        P = DiscreteDistribution(binary("abc"), values)
        assert ci_holds(P, Triplet("a", "c", "b"))
        assert not ci_holds(P, Triplet("a", "c"))

    def test_against_definition(self):
        P = random_markovian(G1, binary(G1.nodes), 11)
        assert ci_holds(P, Triplet("b", "g", "f"))
        # definition-level: P(b,g,f) P(f) == P(b,f) P(g,f)
        bgf, f = naive_marginal(P, "bfg"), naive_marginal(P, "f")
        bf, fg = naive_marginal(P, "bf"), naive_marginal(P, "fg")
        for (b, ff, g), p in bgf.items():
            assert abs(p * f[(ff,)] - bf[(b, ff)] * fg[(ff, g)]) <= 1e-12
        assert not ci_holds(P, Triplet("b", "d", "f"))


class TestBuildFromFactors:
    def factors(self, g, fill):
        return {
            comp: [Factor(k, np.full([2] * len(k), fill)) for k in cliques(closure_graph(g, comp))]
            for comp in g.chain
        }

    def test_all_ones_is_uniform(self):
        P = build_from_factors(G1, self.factors(G1, 1.0))
        assert np.allclose(P.values, 1 / 2**7)

    def test_single_complete_component(self):
        g = UndirectedGraph(lines=[("a", "b"), ("b", "c"), ("a", "c")])
        table = np.arange(1, 9, dtype=float).reshape(2, 2, 2)
        P = build_from_factors(g, {frozenset("abc"): [Factor("abc", table)]})
        assert np.allclose(P.values, table / table.sum())

    def test_scope_mismatch(self):
        bad = self.factors(G1, 1.0)
        bad[frozenset("fg")] = [Factor("fg", np.ones((2, 2)))]
        with pytest.raises(ScopeMismatch):
            build_from_factors(G1, bad)
        with pytest.raises(ScopeMismatch):
            build_from_factors(G1, {})

    def test_zero_normalizer(self):
        with pytest.raises(ZeroNormalizer):
            build_from_factors(G1, self.factors(G1, 0.0))

    def test_seeded_g1_is_markovian(self):
        assert is_markovian_check(random_markovian(G1, binary(G1.nodes), 7), G1)

    def test_random_markovian_deterministic(self):
        dom = binary(G1.nodes)
        assert random_markovian(G1, dom, 3) == random_markovian(G1, dom, 3)
        assert random_markovian(G1, dom, 3) != random_markovian(G1, dom, 4)
        assert np.all(random_markovian(G1, dom, 3).values > 0)

    def test_forced_ones(self):
        P = random_markovian(G1, binary(G1.nodes), 3, low=1.0, high=1.0)
        assert np.allclose(P.values, 1 / 2**7)


class TestIsMarkovian:
    def test_uniform(self):
        for g in (G1, D3, SQUARE):
            P = DiscreteDistribution(binary(g.nodes), np.full(2 ** len(g.nodes), 0.5 ** len(g.nodes)))
            assert is_markovian_check(P, g)

    def test_copy_on_empty_graph(self):
        assert not is_markovian_check(copy_distribution(), ChainGraph("ab"))
        assert is_markovian_check(copy_distribution(), ChainGraph(arrows=[("a", "b")]))

    def test_random_distribution_fails(self):
        assert not is_markovian_check(random_distribution(binary(G1.nodes), 0), G1)

    def test_factorizable_is_markovian(self):
        rng = random.Random(9)
        for seed in range(15):
            g = random_chain_graph(rng.randint(2, 6), rng)
            assert is_markovian_check(random_markovian(g, binary(g.nodes), seed), g)

    def test_non_binary(self):
        dom = {v: 2 + i % 2 for i, v in enumerate(sorted(G1.nodes))}
        assert is_markovian_check(random_markovian(G1, dom, 1), G1)


class TestFormulas:
    def test_marginal_form(self):
        ordering = rip_ordering(closure_graph(G1, "fg"), frozenset("bdef"))
        f = decomposable_formula_marginal("bdefg", ordering)
        assert scopes(f.numerator) == ["bdef", "fg"]
        assert scopes(f.denominator) == ["f"]
        single = CliqueOrdering([frozenset("abc")])
        assert decomposable_formula_marginal("abc", single) == FactorizationFormula(["abc"])
        path = CliqueOrdering([frozenset("ab"), frozenset("bc")])
        assert scopes(decomposable_formula_marginal("abc", path).denominator) == ["b"]

    def test_marginal_form_scope(self):
        with pytest.raises(ScopeMismatch):
            decomposable_formula_marginal("abcd", CliqueOrdering([frozenset("abc")]))

    def test_g1(self):
        f = graph_formula(G1)
        assert scopes(f.numerator) == ["ab", "ad", "bc", "bdef", "de", "fg"]
        assert scopes(f.denominator) == ["a", "b", "bde", "d", "f"]
        assert str(f) == "num: {a,b} {a,d} {b,c} {b,d,e,f} {d,e} {f,g} den: {a} {b} {b,d,e} {d} {f}"

    def test_dag(self):
        f = graph_formula(D3)
        assert scopes(f.numerator) == ["a", "abc", "b", "cd", "cde", "cdef"]
        assert scopes(f.denominator) == ["ab", "c", "cd", "cde"]

    def test_l3(self):
        f = graph_formula(L3)
        assert scopes(f.numerator) == ["a", "abc", "b", "cdef"]
        assert scopes(f.denominator) == ["ab", "c"]

    def test_not_bn_equivalent(self):
        with pytest.raises(NotBnEquivalent):
            graph_formula(SQUARE)
        with pytest.raises(NotBnEquivalent):
            conditional_formula(SQUARE)

    def test_start_cliques(self):
        f = graph_formula(G1, {frozenset("abc"): frozenset("bc")})
        assert scopes(f.denominator) == ["a", "b", "bde", "d", "f"]
        with pytest.raises(BadStartClique):
            graph_formula(G1, {frozenset("fg"): frozenset("fg")})
        with pytest.raises(BadStartClique):
            graph_formula(G1, {frozenset("fg"): frozenset("bdefg")})

    def test_simplify(self):
        f = formula_simplify(FactorizationFormula(["ab", "ab"], ["ab"]))
        assert f == FactorizationFormula(["ab"])
        assert str(FactorizationFormula()) == "num: 1 den: 1"
        for g in (G1, D3, L3):
            once = formula_simplify(graph_formula(g))
            assert formula_simplify(once) == once

    def test_d3_and_l3_simplify_alike(self):
        expected = FactorizationFormula(["a", "b", "abc", "cdef"], ["ab", "c"])
        assert formula_simplify(graph_formula(D3)) == expected
        assert formula_simplify(graph_formula(L3)) == expected


class TestEvaluate:
    def test_trivial_formula(self):
        P = random_distribution(binary("abc"), 2)
        assert close(formula_evaluate(FactorizationFormula(["abc"]), P), P) == 0

    def test_reproduces_markovian(self):
        for g in (G1, D3, L3):
            P = random_markovian(g, binary(g.nodes), 5)
            assert close(formula_evaluate(graph_formula(g), P), P) <= TOL
            for form in ("chain", "ratio"):
                assert close(evaluate_conditional_formula(conditional_formula(g, form=form), P), P) <= TOL

    def test_d3_and_l3_agree(self):
        P = random_markovian(D3, binary(D3.nodes), 6)
        a = formula_evaluate(graph_formula(D3), P).table
        b = formula_evaluate(graph_formula(L3), P).table
        assert np.max(np.abs(a - b)) <= TOL

    def test_zero_over_zero(self):
        P = copy_distribution()
        got = formula_evaluate(FactorizationFormula(["ab"], ["a"]), P)
        assert np.array_equal(got.table, np.eye(2))

    def test_nonzero_over_zero(self):
        # c copies a, b is a fair coin: P(a=0, c=1) = 0 while P(a=0, b) P(c=1) > 0
        values = np.zeros((2, 2, 2))
        values[0, :, 0] = values[1, :, 1] = 0.25
        P = DiscreteDistribution(binary("abc"), values)
        with pytest.raises(DivisionByZeroWithNonzeroNumerator):
            formula_evaluate(FactorizationFormula(["ab", "c"], ["ac"]), P)

    def test_denominator_scope(self):
        with pytest.raises(ScopeMismatch):
            formula_evaluate(FactorizationFormula(["a"], ["b"]), copy_distribution())


class TestConditionalFormula:
    def test_g1(self):
        terms = [str(t) for t in conditional_formula(G1)]
        assert terms == ["P(a,b)", "P(c|b)", "P(d|a)", "P(e|d)", "P(f|b,d,e)", "P(g|f)"]

    def test_ratio_form(self):
        terms = [str(t) for t in conditional_formula(G1, form="ratio")]
        assert terms[-3:] == ["P(f|b,d,e)", "P(f,g)", "1/P(f)"]
        with pytest.raises(ValueError):
            conditional_formula(G1, form="other")

    def test_dag(self):
        terms = conditional_formula(D3)
        assert {(t.head, t.tail) for t in terms} == {
            (frozenset(v), parents(D3, {v})) for v in D3.nodes
        }

    def test_decomposable_chain_terms(self):
        ordering = CliqueOrdering([frozenset("ab"), frozenset("bc")])
        assert decomposable_formula_conditional(ordering) == [
            ConditionalTerm(frozenset("ab"), frozenset(), 1),
            ConditionalTerm(frozenset("c"), frozenset("b"), 1),
        ]


class TestMemoryDemand:
    def test_example(self):
        assert memory_demand(D3, binary(D3.nodes)) == (40, 20)
        assert memory_demand(L3, binary(L3.nodes)) == (28, 20)

    def test_ratio_form_counts_denominators(self):
        assert memory_demand(L3, binary(L3.nodes), form="ratio") == (30, 20)

    def test_larger_domains(self):
        dom = binary(L3.nodes) | {"c": 3}
        # P(a), P(b): 1 + 1; P(c|a,b): 4 * 2; P(d,e,f|c): 3 * 7
        assert memory_demand(L3, dom).algebraic == 1 + 1 + 8 + 21


def decomposable_graphs(max_nodes):
    return [g for g in small_undirected_graphs(max_nodes) if is_decomposable(g)]


def decomposable_form_errors(g, seed):
    """Largest error of both decomposable forms over every running-intersection ordering."""
    P = random_markovian(g, binary(g.nodes), seed)
    worst = 0.0
    for order in rip_permutations(g):
        ordering = CliqueOrdering(order)
        first = formula_evaluate(decomposable_formula_marginal(g.nodes, ordering), P)
        second = evaluate_conditional_formula(decomposable_formula_conditional(ordering), P)
        worst = max(worst, close(first, P), close(second, P))
    return worst


def test_decomposable_forms_small():
    for i, g in enumerate(decomposable_graphs(4)):
        assert decomposable_form_errors(g, i) <= TOL


def test_construction_from_equivalent_dag():
    rng = random.Random(12)
    graphs = [G1, L3] + [random_chain_graph(rng.randint(3, 6), rng) for _ in range(30)]
    for seed, g in enumerate(graphs):
        if not equivalent_to_bn(g):
            continue
        D = extract_equivalent_dag(g)
        P = random_markovian(D, binary(D.nodes), seed)
        # (a): P is the product of P(C | pa C) over the components of g
        terms = [ConditionalTerm(c, parents(g, c), 1) for c in g.chain]
        assert close(evaluate_conditional_formula(terms, P), P) <= TOL
        # (b): each P(C, pa C) satisfies the clique formula of the closure graph
        for comp in g.chain:
            H = closure_graph(g, comp)
            local = marginal(P, H.nodes)
            f = decomposable_formula_marginal(H.nodes, rip_ordering(H, cliques(H)[0]))
            assert close(formula_evaluate(f, P), local) <= TOL


def test_invariance_experiments(capsys):
    """Report, without asserting, how often equivalent graphs share a
    simplified formula and an algebraic memory demand."""
    same_formula = same_memory = total = 0
    for members in equivalence_classes(all_chain_graphs(4)).values():
        members = [m for m in members if equivalent_to_bn(m)]
        if len(members) < 2:
            continue
        total += 1
        dom = binary(members[0].nodes)
        same_formula += len({formula_simplify(graph_formula(m)) for m in members}) == 1
        same_memory += len({memory_demand(m, dom).algebraic for m in members}) == 1
    with capsys.disabled():
        print(f"\n  classes with >1 member: {total}; "
              f"one simplified formula: {same_formula}; one algebraic demand: {same_memory}")
