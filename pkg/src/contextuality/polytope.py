"""The noncontextual behavior polytope and exact facet certification.

A behavior assigns each (context, outcome pattern) pair a probability; the
noncontextual polytope is the convex hull of the behaviors induced by
deterministic assignments to all tests.  Certifying that an inequality is
tight means showing that the vertices saturating its noncontextual bound
span a face of dimension exactly one less than the polytope itself.  All
ranks here are computed in exact integer arithmetic (fraction-free Gaussian
elimination), so the verdicts carry no numerical tolerance at all.

Coordinate layout: contexts in declaration order; within a context with
tests t_0 < t_1 < ... the patterns run through 0..2^k-1 with bit ``pos``
holding the outcome of t_pos.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .inequalities import MAX_ENUM_TESTS, Inequality
from .graphs import set_vertices


def behavior_layout(ineq: Inequality) -> tuple[list[int], int]:
    """Coordinate offsets of each context block and the total length."""
    offsets = []
    total = 0
    for c in ineq.contexts:
        offsets.append(total)
        total += 1 << c.bit_count()
    return offsets, total


def deterministic_behavior(ineq: Inequality, assignment: int) -> tuple[int, ...]:
    """Behavior of a deterministic assignment: unit mass per context block."""
    if not 0 <= assignment < (1 << ineq.n_tests):
        raise ValueError(
            f"assignment must encode exactly {ineq.n_tests} binary values"
        )
    offsets, total = behavior_layout(ineq)
    coords = [0] * total
    for off, c in zip(offsets, ineq.contexts):
        pattern = 0
        for pos, t in enumerate(set_vertices(c)):
            pattern |= ((assignment >> t) & 1) << pos
        coords[off + pattern] = 1
    return tuple(coords)


def inequality_functional(ineq: Inequality) -> tuple[Fraction, ...]:
    """The inequality as a rational linear functional on behavior coordinates.

    Coefficient w_c on every pattern of context c with exactly one firing
    test, zero elsewhere; applying it to a deterministic behavior reproduces
    the assignment value of the inequality.
    """
    offsets, total = behavior_layout(ineq)
    coeffs = [Fraction(0)] * total
    for off, c, w in zip(offsets, ineq.contexts, ineq.weights):
        k = c.bit_count()
        for pattern in range(1 << k):
            if pattern.bit_count() == 1:
                coeffs[off + pattern] = w
    return tuple(coeffs)


def apply_functional(coeffs, behavior) -> Fraction:
    return sum(
        (a * b for a, b in zip(coeffs, behavior) if a and b), start=Fraction(0)
    )


def _integer_rank(rows: list[list[int]]) -> int:
    """Exact rank by Bareiss fraction-free elimination (integer entries)."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    m = len(rows)
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, m) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pivot_row = rows[rank]
        pv = pivot_row[col]
        for r in range(rank + 1, m):
            row = rows[r]
            f = row[col]
            if f:
                for c in range(col, ncols):
                    row[c] = (pv * row[c] - f * pivot_row[c]) // prev
            elif pv != prev:
                for c in range(col, ncols):
                    row[c] = pv * row[c] // prev
        prev = pv
        rank += 1
        if rank == m:
            break
    return rank


def _affine_dimension(points: list[tuple[int, ...]]) -> int:
    """Affine dimension of a set of integer points (exact)."""
    if not points:
        raise ValueError("affine dimension of an empty point set")
    base = points[0]
    diffs = [
        [a - b for a, b in zip(p, base)]
        for p in points[1:]
    ]
    return _integer_rank(diffs)


def all_deterministic_behaviors(ineq: Inequality) -> list[tuple[int, ...]]:
    """Deduplicated behaviors of every deterministic assignment."""
    if ineq.n_tests > MAX_ENUM_TESTS:
        raise ValueError(
            f"enumeration over 2^{ineq.n_tests} assignments exceeds the "
            f"2^{MAX_ENUM_TESTS} guard"
        )
    seen = set()
    out = []
    for a in range(1 << ineq.n_tests):
        b = deterministic_behavior(ineq, a)
        if b not in seen:
            seen.add(b)
            out.append(b)
    return out


def polytope_dimension(ineq: Inequality) -> int:
    """Exact affine dimension of the noncontextual polytope."""
    return _affine_dimension(all_deterministic_behaviors(ineq))


@dataclass(frozen=True)
class AffineCertificate:
    """Outcome of a tightness check.

    ``facet`` is True exactly when the saturating vertices span a face of
    dimension ``polytope_dim - 1``; both dimensions are exact integers.
    """

    polytope_dim: int
    face_dim: int
    facet: bool
    saturating_count: int


def facet_check(ineq: Inequality) -> AffineCertificate:
    """Certify whether the inequality's noncontextual bound is a facet.

    Collects every polytope vertex whose functional value equals the
    declared noncontextual bound and compares the affine dimension of that
    set with the polytope dimension.  Raises when no vertex saturates the
    bound, or when some vertex exceeds it (either way the declared bound is
    wrong for the scenario).
    """
    vertices = all_deterministic_behaviors(ineq)
    coeffs = inequality_functional(ineq)
    bound = ineq.bound_nchv
    saturating = []
    for v in vertices:
        val = apply_functional(coeffs, v)
        if val > bound:
            raise ValueError(
                f"vertex exceeds the declared noncontextual bound: {val} > {bound}"
            )
        if val == bound:
            saturating.append(v)
    if not saturating:
        raise ValueError("no vertex saturates the declared noncontextual bound")
    poly_dim = _affine_dimension(vertices)
    face_dim = _affine_dimension(saturating)
    return AffineCertificate(
        polytope_dim=poly_dim,
        face_dim=face_dim,
        facet=face_dim == poly_dim - 1,
        saturating_count=len(saturating),
    )


def exclusive_deterministic_behaviors(ineq: Inequality) -> list[tuple[int, ...]]:
    """Deterministic behaviors whose assignments fire at most one test per context.

    This is the deterministic model class of the event-level picture, where
    each context is a single measurement with one firing test or none; its
    assignments are exactly the independent sets of the exclusivity graph.
    """
    if ineq.n_tests > MAX_ENUM_TESTS:
        raise ValueError(
            f"enumeration over 2^{ineq.n_tests} assignments exceeds the "
            f"2^{MAX_ENUM_TESTS} guard"
        )
    seen = set()
    out = []
    for a in range(1 << ineq.n_tests):
        if any((a & c).bit_count() > 1 for c in ineq.contexts):
            continue
        b = deterministic_behavior(ineq, a)
        if b not in seen:
            seen.add(b)
            out.append(b)
    return out


def facet_check_exclusive(ineq: Inequality) -> AffineCertificate:
    """Tightness of the bound over the exclusive-outcomes polytope.

    Same functional and the same exact rank machinery as
    :func:`facet_check`, but the vertex set is restricted to deterministic
    models that respect exclusiveness inside every context.  This is the
    polytope in which the built-in scenarios' bounds are facets; over the
    unrestricted behavior polytope of :func:`facet_check` the four-test
    scenario has too few saturating vertices for that (see the certificate
    counts).
    """
    vertices = exclusive_deterministic_behaviors(ineq)
    coeffs = inequality_functional(ineq)
    bound = max(apply_functional(coeffs, v) for v in vertices)
    saturating = [v for v in vertices if apply_functional(coeffs, v) == bound]
    poly_dim = _affine_dimension(vertices)
    face_dim = _affine_dimension(saturating)
    return AffineCertificate(
        polytope_dim=poly_dim,
        face_dim=face_dim,
        facet=face_dim == poly_dim - 1,
        saturating_count=len(saturating),
    )
