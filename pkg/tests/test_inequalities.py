"""Scenario definitions, exclusivity graphs, exhaustive noncontextual bounds."""

import itertools
from fractions import Fraction

import pytest

from contextuality.graphs import (
    cycle,
    independence_number,
    is_clique,
    is_isomorphic,
    johnson_5_2,
    set_vertices,
    vertex_set,
)
from contextuality.inequalities import (
    Inequality,
    evaluate_assignment,
    format_inequality,
    inequality_graph,
    kcbs,
    named_inequality,
    nchv_max,
    parse_inequality,
    twin,
)


def test_kcbs_definition():
    k = kcbs()
    assert k.n_tests == 5
    assert k.context_sets() == [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]
    assert k.weights == (Fraction(1, 2),) * 5
    assert k.bound_nchv == 2
    assert k.bound_gp == Fraction(5, 2)
    assert abs(k.bound_qm - 5 ** 0.5) < 1e-12


def test_twin_definition():
    t = twin()
    assert t.n_tests == 10
    expected = [
        (0, 1, 5, 7),
        (1, 2, 6, 8),
        (2, 3, 7, 9),
        (3, 4, 5, 8),
        (0, 4, 6, 9),
    ]
    assert t.context_sets() == expected
    assert vertex_set((3, 4, 8, 5)) in t.contexts
    assert t.bound_nchv == 2
    assert t.bound_qm == 2.5
    assert t.bound_gp == Fraction(5, 2)


@pytest.mark.parametrize("ineq", [kcbs(), twin()])
def test_each_test_in_exactly_two_contexts(ineq):
    for t in range(ineq.n_tests):
        assert sum(1 for c in ineq.contexts if (c >> t) & 1) == 2


def test_inequality_validation():
    with pytest.raises(ValueError):
        Inequality(2, (vertex_set((0, 1)),), (), Fraction(1), 1.0, Fraction(1))
    with pytest.raises(ValueError):  # test 2 never appears
        Inequality(
            3, (vertex_set((0, 1)),), (Fraction(1),), Fraction(1), 1.0, Fraction(1)
        )
    with pytest.raises(ValueError):  # context out of range
        Inequality(
            2, (vertex_set((0, 3)),), (Fraction(1),), Fraction(1), 1.0, Fraction(1)
        )


def test_inequality_graph_kcbs_is_pentagon():
    g, cover = inequality_graph(kcbs())
    assert g.n == 5 and g.num_edges() == 5
    assert is_isomorphic(g, cycle(5)) is not None
    assert cover == list(kcbs().contexts)


def test_inequality_graph_twin_is_johnson():
    g, cover = inequality_graph(twin())
    assert g.n == 10 and g.num_edges() == 30
    assert is_isomorphic(g, johnson_5_2()) is not None
    for c in cover:
        assert is_clique(g, c)


def test_inequality_graph_single_context_triangle():
    ineq = Inequality(
        3, (vertex_set((0, 1, 2)),), (Fraction(1),), Fraction(1), 1.0, Fraction(1)
    )
    g, _ = inequality_graph(ineq)
    assert g.num_edges() == 3
    assert is_clique(g, vertex_set((0, 1, 2)))


def test_inequality_graph_rejects_bad_weight_sums():
    # both contexts contain test 1, so its weights sum to 2
    ineq = Inequality(
        3,
        (vertex_set((0, 1)), vertex_set((1, 2))),
        (Fraction(1), Fraction(1)),
        Fraction(1),
        1.0,
        Fraction(2),
    )
    with pytest.raises(ValueError, match="sum to 1"):
        inequality_graph(ineq)


def test_twin_contexts_partition_the_edges():
    t = twin()
    seen = set()
    for c in t.contexts:
        inside = set(itertools.combinations(set_vertices(c), 2))
        assert not (seen & inside)
        seen |= inside
    assert len(seen) == 30


def test_evaluate_assignment_examples():
    t = twin()
    assert evaluate_assignment(t, 0) == 0
    assert evaluate_assignment(t, 1) == 1  # only test 0 fires: two contexts hit
    k = kcbs()
    # tests 0 and 2 set: four of the five cyclic pairs see exactly one
    assert evaluate_assignment(k, 0b00101) == 2
    with pytest.raises(ValueError):
        evaluate_assignment(k, 1 << 5)


def test_evaluate_assignment_never_exceeds_weight_sum():
    t = twin()
    assert max(evaluate_assignment(t, a) for a in range(1 << 10)) <= Fraction(5, 2)


def test_nchv_max_matches_declared_bounds_and_alpha():
    for ineq in (kcbs(), twin()):
        best, witness = nchv_max(ineq)
        assert best == ineq.bound_nchv == 2
        assert evaluate_assignment(ineq, witness) == best
        g, _ = inequality_graph(ineq)
        assert independence_number(g)[0] == best


def test_nchv_max_single_context():
    ineq = Inequality(
        2, (vertex_set((0, 1)),), (Fraction(1),), Fraction(1), 1.0, Fraction(1)
    )
    best, witness = nchv_max(ineq)
    assert best == 1
    assert witness == 1  # smallest maximiser


def test_nchv_max_ties_break_to_smallest_assignment():
    k = kcbs()
    best, witness = nchv_max(k)
    candidates = [a for a in range(1 << 5) if evaluate_assignment(k, a) == best]
    assert witness == min(candidates)


def test_nchv_max_enumeration_guard():
    contexts = tuple(vertex_set((i, (i + 1) % 25)) for i in range(25))
    ineq = Inequality(
        25, contexts, (Fraction(1, 2),) * 25, Fraction(12), 12.0, Fraction(25, 2)
    )
    with pytest.raises(ValueError, match="guard"):
        nchv_max(ineq)


def test_named_inequality():
    assert named_inequality("kcbs").n_tests == 5
    assert named_inequality("twin").n_tests == 10
    with pytest.raises(ValueError):
        named_inequality("chsh")


def test_inequality_text_round_trip():
    for ineq in (kcbs(), twin()):
        parsed = parse_inequality(format_inequality(ineq))
        assert parsed.n_tests == ineq.n_tests
        assert parsed.contexts == ineq.contexts
        assert parsed.weights == ineq.weights
        assert parsed.bound_nchv == ineq.bound_nchv


@pytest.mark.parametrize(
    "text,lineno",
    [
        ("contexts 5\n", 1),
        ("tests 3\nrow 1/2: 0 1\n", 2),
        ("tests 3\ncontext 1/0: 0 1\n", 2),
        ("tests 3\ncontext 1/2: zero\n", 2),
    ],
)
def test_inequality_parse_errors(text, lineno):
    with pytest.raises(ValueError, match=f"line {lineno}"):
        parse_inequality(text)
