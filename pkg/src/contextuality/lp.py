"""Exact rational linear programming for fractional packing numbers.

A small two-phase simplex over ``fractions.Fraction`` with Bland's rule, so
every pivot is exact and termination is guaranteed.  Problems are of the
fixed shape needed here: maximise a linear objective over 0 <= w_i <= 1
subject to <= rows (one per clique for the packing number).  No floating
point enters at any stage.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graphs import Graph, maximal_cliques, set_vertices


class LpInfeasibleError(ValueError):
    """The constraint rows admit no point inside the unit box."""


class LpUnboundedError(ValueError):
    """The objective is unbounded (cannot happen with the unit box intact)."""


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class LinearProgram:
    """max objective . w  s.t.  rows[k] . w <= rhs[k],  0 <= w_i <= 1."""

    objective: tuple[Fraction, ...]
    rows: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    def __post_init__(self):
        n = len(self.objective)
        if len(self.rows) != len(self.rhs):
            raise ValueError("one rhs per constraint row required")
        for row in self.rows:
            if len(row) != n:
                raise ValueError("constraint row length must match the objective")


def make_lp(objective: Sequence, rows: Sequence[Sequence], rhs: Sequence) -> LinearProgram:
    """Build a LinearProgram, coercing all entries to exact fractions."""
    return LinearProgram(
        objective=tuple(_frac(c) for c in objective),
        rows=tuple(tuple(_frac(a) for a in row) for row in rows),
        rhs=tuple(_frac(b) for b in rhs),
    )


def _pivot(tab: list[list[Fraction]], basis: list[int], row: int, col: int) -> None:
    piv = tab[row][col]
    tab[row] = [a / piv for a in tab[row]]
    for r in range(len(tab)):
        if r != row and tab[r][col] != 0:
            factor = tab[r][col]
            tab[r] = [a - factor * b for a, b in zip(tab[r], tab[row])]
    basis[row] = col


def _run_simplex(tab: list[list[Fraction]], basis: list[int], cost: list[Fraction]) -> None:
    """Maximise over the tableau in place; Bland's rule throughout.

    ``tab`` rows are the m constraint rows (last entry = rhs) with an
    identity on the basis columns; ``cost`` is the objective over all
    columns (rhs slot unused).
    """
    m = len(tab)
    ncols = len(tab[0]) - 1
    while True:
        # reduced costs under the current basis
        reduced = list(cost[:ncols])
        for r in range(m):
            cb = cost[basis[r]]
            if cb != 0:
                for j in range(ncols):
                    if tab[r][j] != 0:
                        reduced[j] -= cb * tab[r][j]
        enter = -1
        for j in range(ncols):
            if reduced[j] > 0:
                enter = j
                break
        if enter < 0:
            return
        leave = -1
        best = None
        for r in range(m):
            a = tab[r][enter]
            if a > 0:
                ratio = tab[r][-1] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave < 0:
            raise LpUnboundedError("no leaving variable: objective unbounded")
        _pivot(tab, basis, leave, enter)


def simplex_solve(lp: LinearProgram) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Exact optimum and one optimal vertex of the unit-box LP.

    Standard form adds one slack per row and one per upper bound; rows with
    negative right-hand side go through a phase-1 feasibility solve with
    artificial variables.  Raises LpInfeasibleError when no feasible point
    exists.
    """
    n = len(lp.objective)
    m = len(lp.rows)
    # columns: w (n) | row slacks (m) | bound slacks (n) | artificials
    base_cols = n + m + n
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    negated: list[bool] = []
    for k in range(m):
        row = list(lp.rows[k])
        b = lp.rhs[k]
        if b < 0:
            row = [-a for a in row]
            b = -b
            negated.append(True)
        else:
            negated.append(False)
        rows.append(row)
        rhs.append(b)
    art_cols = sum(negated)
    ncols = base_cols + art_cols
    tab: list[list[Fraction]] = []
    basis: list[int] = []
    art_seen = 0
    zero = Fraction(0)
    for k in range(m):
        line = [zero] * (ncols + 1)
        for j, a in enumerate(rows[k]):
            line[j] = a
        # slack enters with -1 on negated (>=) rows, +1 otherwise
        line[n + k] = Fraction(-1) if negated[k] else Fraction(1)
        if negated[k]:
            line[base_cols + art_seen] = Fraction(1)
            basis.append(base_cols + art_seen)
            art_seen += 1
        else:
            basis.append(n + k)
        line[-1] = rhs[k]
        tab.append(line)
    for i in range(n):
        line = [zero] * (ncols + 1)
        line[i] = Fraction(1)
        line[n + m + i] = Fraction(1)
        line[-1] = Fraction(1)
        tab.append(line)
        basis.append(n + m + i)

    if art_cols:
        cost1 = [zero] * (ncols + 1)
        for j in range(base_cols, ncols):
            cost1[j] = Fraction(-1)
        _run_simplex(tab, basis, cost1)
        value = sum(tab[r][-1] for r in range(len(tab)) if basis[r] >= base_cols)
        if value != 0:
            raise LpInfeasibleError("constraints admit no feasible point")
        # pivot any degenerate artificials out of the basis; an all-zero row
        # is redundant and gets dropped with its artificial
        keep = []
        for r in range(len(tab)):
            if basis[r] >= base_cols:
                col = next((j for j in range(base_cols) if tab[r][j] != 0), None)
                if col is None:
                    continue
                _pivot(tab, basis, r, col)
            keep.append(r)
        tab = [tab[r][:base_cols] + [tab[r][-1]] for r in keep]
        basis = [basis[r] for r in keep]
        ncols = base_cols

    cost = [zero] * (ncols + 1)
    for j in range(n):
        cost[j] = lp.objective[j]
    _run_simplex(tab, basis, cost)

    w = [zero] * n
    for r, bv in enumerate(basis):
        if bv < n:
            w[bv] = tab[r][-1]
    opt = sum(c * x for c, x in zip(lp.objective, w))
    return opt, tuple(w)


def fractional_packing_number(g: Graph) -> tuple[Fraction, tuple[Fraction, ...]]:
    """Exact fractional packing number of a graph with an optimal weighting.

    Maximises the total vertex weight subject to a unit budget on every
    clique.  Constraining the maximal cliques only is enough: any clique
    constraint is dominated by a maximal one containing it.
    """
    one = Fraction(1)
    cliques = maximal_cliques(g)
    rows = []
    for c in cliques:
        row = [Fraction(0)] * g.n
        for v in set_vertices(c):
            row[v] = one
        rows.append(tuple(row))
    lp = LinearProgram(
        objective=(one,) * g.n,
        rows=tuple(rows),
        rhs=(one,) * len(rows),
    )
    return simplex_solve(lp)
