"""Symmetric eigensolver contract and the Lovász number SDP."""

import math

import numpy as np
import pytest

from contextuality.graphs import (
    Graph,
    complete_graph,
    cycle,
    empty_graph,
    independence_number,
    petersen,
)
from contextuality.inequalities import inequality_graph, twin
from contextuality.lp import fractional_packing_number
from contextuality.theta import eig_sym, lovasz_theta, sym_matrix


def random_graph(n, p, rng):
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def odd_cycle_theta(k):
    # closed form for C_{2k+1}
    n = 2 * k + 1
    c = math.cos(math.pi / n)
    return n * c / (1.0 + c)


def adjacency_matrix(g):
    a = np.zeros((g.n, g.n))
    for u, v in g.edge_list():
        a[u, v] = a[v, u] = 1.0
    return a


def test_sym_matrix_validation():
    with pytest.raises(ValueError):
        sym_matrix([[0.0, 1.0], [0.5, 0.0]])
    with pytest.raises(ValueError):
        sym_matrix([[np.inf]])
    with pytest.raises(ValueError):
        sym_matrix(np.zeros((2, 3)))
    m = sym_matrix([[1.0, 2.0], [2.0, 3.0]])
    assert np.array_equal(m, m.T)


def test_eig_identity_and_diagonal():
    w, _ = eig_sym(np.eye(3))
    assert np.allclose(w, [1.0, 1.0, 1.0], atol=1e-14)
    w, _ = eig_sym(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(w, [1.0, 2.0, 3.0], atol=1e-14)


def test_eig_pentagon_adjacency_extremes():
    # circulant oracle: eigenvalues are 2 cos(2 pi k / 5)
    w, _ = eig_sym(adjacency_matrix(cycle(5)))
    oracle = sorted(2.0 * math.cos(2.0 * math.pi * k / 5.0) for k in range(5))
    assert np.allclose(w, oracle, atol=1e-12)
    assert abs(w[-1] - 2.0) < 1e-12
    assert abs(w[0] - (-(1.0 + math.sqrt(5.0)) / 2.0)) < 1e-12


def test_eig_reconstruction_contract():
    rng = np.random.default_rng(13)
    for n in (2, 5, 12):
        a = rng.standard_normal((n, n))
        m = (a + a.T) / 2.0
        w, q = eig_sym(m)
        scale = max(1.0, np.abs(m).max())
        assert np.abs(q @ np.diag(w) @ q.T - m).max() <= 1e-10 * scale
        assert np.abs(q.T @ q - np.eye(n)).max() <= 1e-10
        assert np.all(np.diff(w) >= -1e-14)


def test_theta_pentagon():
    r = lovasz_theta(cycle(5))
    assert r.converged and r.gap <= 1e-8
    assert abs(r.value - math.sqrt(5.0)) < 1e-6


def test_theta_twin():
    g, _ = inequality_graph(twin())
    r = lovasz_theta(g)
    assert r.converged
    assert abs(r.value - 2.5) < 1e-6


def test_theta_complete_graphs():
    for n in (1, 2, 5, 9):
        r = lovasz_theta(complete_graph(n))
        assert abs(r.value - 1.0) < 1e-6


def test_theta_edgeless_and_petersen():
    assert abs(lovasz_theta(empty_graph(7)).value - 7.0) < 1e-6
    assert abs(lovasz_theta(petersen()).value - 4.0) < 1e-6


@pytest.mark.parametrize("k", [2, 3, 4])
def test_theta_odd_cycles_closed_form(k):
    r = lovasz_theta(cycle(2 * k + 1))
    assert abs(r.value - odd_cycle_theta(k)) < 1e-8


def test_theta_witness_contract():
    tol = 1e-8
    for g in (cycle(5), cycle(7), petersen()):
        r = lovasz_theta(g, tol=tol)
        x = r.witness
        assert np.linalg.eigvalsh(x).min() >= -10.0 * tol
        assert abs(np.trace(x) - 1.0) <= 10.0 * tol
        for u, v in g.edge_list():
            assert abs(x[u, v]) <= 10.0 * tol
        assert abs(x.sum() - r.value) < 1e-12


def test_sandwich_on_random_panel():
    rng = np.random.default_rng(37)
    for _ in range(10):
        g = random_graph(int(rng.integers(4, 10)), rng.uniform(0.2, 0.8), rng)
        alpha, _ = independence_number(g)
        theta = lovasz_theta(g)
        astar, _ = fractional_packing_number(g)
        assert theta.converged and theta.gap <= 1e-8
        assert alpha <= theta.value + 1e-6
        assert theta.value <= float(astar) + 1e-6


def test_fullness_criterion_separates_twin_from_pentagon():
    tol = 1e-8
    g, _ = inequality_graph(twin())
    alpha, _ = independence_number(g)
    theta = lovasz_theta(g, tol=tol)
    astar, _ = fractional_packing_number(g)
    assert alpha + tol < theta.value
    assert abs(theta.value - float(astar)) <= 10.0 * tol

    p = cycle(5)
    alpha, _ = independence_number(p)
    theta = lovasz_theta(p, tol=tol)
    astar, _ = fractional_packing_number(p)
    assert alpha + tol < theta.value
    assert abs(theta.value - float(astar)) > 10.0 * tol


def test_theta_rejects_bad_tolerance():
    with pytest.raises(ValueError):
        lovasz_theta(cycle(5), tol=0.0)
