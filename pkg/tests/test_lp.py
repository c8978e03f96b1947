"""Exact simplex and fractional packing numbers."""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from contextuality.graphs import (
    Graph,
    complete_graph,
    cycle,
    empty_graph,
    independence_number,
    is_clique,
    maximal_cliques,
    set_vertices,
    vertex_set,
)
from contextuality.inequalities import inequality_graph, twin
from contextuality.lp import (
    LinearProgram,
    LpInfeasibleError,
    fractional_packing_number,
    make_lp,
    simplex_solve,
)


def random_graph(n, p, rng):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def test_single_variable():
    opt, w = simplex_solve(make_lp([1], [[1]], [1]))
    assert opt == 1 and w == (Fraction(1),)


def test_two_variables_shared_budget():
    opt, w = simplex_solve(make_lp([1, 1], [[1, 1]], [1]))
    assert opt == 1
    assert sum(w) == 1


def test_box_bound_is_active_without_rows():
    opt, w = simplex_solve(make_lp([1, 2], [], []))
    assert opt == 3 and w == (Fraction(1), Fraction(1))


def test_negative_rhs_goes_through_phase_one():
    # -w0 <= -1/2 forces w0 >= 1/2; minimise w0 by maximising -w0
    opt, w = simplex_solve(make_lp([-1], [[-1]], [Fraction(-1, 2)]))
    assert opt == Fraction(-1, 2)
    assert w == (Fraction(1, 2),)


def test_infeasible_is_reported():
    with pytest.raises(LpInfeasibleError):
        simplex_solve(make_lp([1], [[1]], [-1]))


def test_dimension_validation():
    with pytest.raises(ValueError):
        LinearProgram((Fraction(1),), ((Fraction(1), Fraction(1)),), (Fraction(1),))
    with pytest.raises(ValueError):
        LinearProgram((Fraction(1),), ((Fraction(1),),), ())


def test_pentagon_packing_number():
    opt, w = fractional_packing_number(cycle(5))
    assert opt == Fraction(5, 2)
    assert w == (Fraction(1, 2),) * 5


def test_twin_packing_number():
    g, _ = inequality_graph(twin())
    opt, _ = fractional_packing_number(g)
    assert opt == Fraction(5, 2)


def test_complete_graph_packing_number():
    for n in (1, 3, 6):
        opt, w = fractional_packing_number(complete_graph(n))
        assert opt == 1
        assert sum(w) == 1


def test_edgeless_graph_packing_number():
    opt, w = fractional_packing_number(empty_graph(4))
    assert opt == 4 and w == (Fraction(1),) * 4


def test_packing_witness_satisfies_all_clique_constraints_exactly():
    rng = np.random.default_rng(3)
    for _ in range(10):
        g = random_graph(8, rng.uniform(0.2, 0.8), rng)
        opt, w = fractional_packing_number(g)
        assert all(isinstance(x, Fraction) and 0 <= x <= 1 for x in w)
        assert sum(w) == opt
        for c in maximal_cliques(g):
            assert sum(w[v] for v in set_vertices(c)) <= 1


def test_alpha_below_alpha_star():
    rng = np.random.default_rng(17)
    for _ in range(10):
        g = random_graph(9, rng.uniform(0.2, 0.8), rng)
        alpha, _ = independence_number(g)
        astar, _ = fractional_packing_number(g)
        assert Fraction(alpha) <= astar


def test_maximal_cliques_suffice_as_constraints():
    # brute force: one constraint for EVERY clique gives the same optimum
    rng = np.random.default_rng(29)
    for _ in range(6):
        n = 7
        g = random_graph(n, rng.uniform(0.3, 0.7), rng)
        astar, _ = fractional_packing_number(g)
        rows = []
        for size in range(1, n + 1):
            for comb in itertools.combinations(range(n), size):
                if is_clique(g, vertex_set(comb)):
                    row = [Fraction(0)] * n
                    for v in comb:
                        row[v] = Fraction(1)
                    rows.append(row)
        opt, _ = simplex_solve(make_lp([1] * n, rows, [1] * len(rows)))
        assert opt == astar


def test_row_shuffle_keeps_the_optimum():
    g, _ = inequality_graph(twin())
    cliques = maximal_cliques(g)
    rows = []
    for c in cliques:
        row = [Fraction(0)] * g.n
        for v in set_vertices(c):
            row[v] = Fraction(1)
        rows.append(row)
    base, _ = simplex_solve(make_lp([1] * g.n, rows, [1] * len(rows)))
    rng = np.random.default_rng(41)
    for _ in range(5):
        order = rng.permutation(len(rows))
        shuffled = [rows[i] for i in order]
        opt, _ = simplex_solve(make_lp([1] * g.n, shuffled, [1] * len(rows)))
        assert opt == base
