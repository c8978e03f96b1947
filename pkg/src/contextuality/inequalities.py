"""Noncontextuality inequalities as weighted families of measurement contexts.

An inequality is a set of yes-no tests together with contexts: groups of
mutually compatible, mutually exclusive tests measured together.  Each
context carries an exact rational weight, and the inequality value of a
deterministic assignment is the weighted count of contexts in which exactly
one test fires.  The two built-in scenarios share the same pentagonal
structure: five two-test contexts (``kcbs``) and five four-test contexts
(``twin``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import sqrt

from .graphs import Graph, set_vertices, vertex_set

# exhaustive assignment enumeration is capped at 2**MAX_ENUM_TESTS
MAX_ENUM_TESTS = 24


@dataclass(frozen=True)
class Inequality:
    """A measurement scenario with declared NCHV / QM / GP bounds.

    ``contexts`` holds one bit mask of test indices per context and
    ``weights`` the matching rational context weights.  The bounds are
    annotations (what the scenario is claimed to obey), not computed
    values.
    """

    n_tests: int
    contexts: tuple[int, ...]
    weights: tuple[Fraction, ...]
    bound_nchv: Fraction
    bound_qm: float
    bound_gp: Fraction
    name: str = ""

    def __post_init__(self):
        if self.n_tests < 1:
            raise ValueError("inequality needs at least one test")
        if len(self.contexts) != len(self.weights):
            raise ValueError("one weight per context required")
        seen = 0
        for c, w in zip(self.contexts, self.weights):
            if c == 0:
                raise ValueError("empty context")
            if c >> self.n_tests:
                raise ValueError("context uses a test index >= n_tests")
            if w <= 0:
                raise ValueError("context weights must be positive")
            seen |= c
        if seen != (1 << self.n_tests) - 1:
            raise ValueError("every test must appear in at least one context")

    def context_sets(self) -> list[tuple[int, ...]]:
        return [set_vertices(c) for c in self.contexts]


def kcbs() -> Inequality:
    """Five cyclic two-test contexts {i, i+1 mod 5}, weight 1/2 each."""
    contexts = tuple(vertex_set((i, (i + 1) % 5)) for i in range(5))
    return Inequality(
        n_tests=5,
        contexts=contexts,
        weights=(Fraction(1, 2),) * 5,
        bound_nchv=Fraction(2),
        bound_qm=sqrt(5.0),
        bound_gp=Fraction(5, 2),
        name="kcbs",
    )


def twin() -> Inequality:
    """Five four-test contexts {i, i+1 mod 5, i+5, 5+(i+2 mod 5)}, weight 1/2.

    Ten tests; the first five indices wrap modulo 5 among themselves and the
    last five wrap modulo 5 among 5..9.
    """
    contexts = tuple(
        vertex_set((i, (i + 1) % 5, 5 + i, 5 + (i + 2) % 5)) for i in range(5)
    )
    return Inequality(
        n_tests=10,
        contexts=contexts,
        weights=(Fraction(1, 2),) * 5,
        bound_nchv=Fraction(2),
        bound_qm=2.5,
        bound_gp=Fraction(5, 2),
        name="twin",
    )


def named_inequality(name: str) -> Inequality:
    if name == "kcbs":
        return kcbs()
    if name == "twin":
        return twin()
    raise ValueError(f"unknown inequality id {name!r} (known: kcbs, twin)")


def inequality_graph(ineq: Inequality) -> tuple[Graph, list[int]]:
    """Exclusivity graph of a scenario plus its context clique cover.

    One vertex per test; two tests are adjacent iff they share a context.
    The contexts themselves are returned as a clique cover of that graph.
    Rejects scenarios whose per-test context weights do not sum to one,
    since then the inequality value does not reduce to a plain sum of
    single-test firing probabilities.
    """
    totals = [Fraction(0)] * ineq.n_tests
    for c, w in zip(ineq.contexts, ineq.weights):
        for t in set_vertices(c):
            totals[t] += w
    bad = [t for t, s in enumerate(totals) if s != 1]
    if bad:
        raise ValueError(
            f"per-test context weights must sum to 1; violated at tests {bad}"
        )
    edges = []
    for c in ineq.contexts:
        vs = set_vertices(c)
        for i, u in enumerate(vs):
            for v in vs[i + 1:]:
                edges.append((u, v))
    return Graph(ineq.n_tests, edges), list(ineq.contexts)


def evaluate_assignment(ineq: Inequality, assignment: int) -> Fraction:
    """Weighted count of contexts where exactly one assigned test is 1.

    ``assignment`` packs the n_tests binary outcomes as a bit mask.
    """
    if not 0 <= assignment < (1 << ineq.n_tests):
        raise ValueError(
            f"assignment must encode exactly {ineq.n_tests} binary values"
        )
    total = Fraction(0)
    for c, w in zip(ineq.contexts, ineq.weights):
        if (assignment & c).bit_count() == 1:
            total += w
    return total


def nchv_max(ineq: Inequality) -> tuple[Fraction, int]:
    """Exact noncontextual maximum by enumerating all deterministic assignments.

    Returns the maximum inequality value and the smallest assignment (as an
    integer) attaining it.
    """
    if ineq.n_tests > MAX_ENUM_TESTS:
        raise ValueError(
            f"enumeration over 2^{ineq.n_tests} assignments exceeds the "
            f"2^{MAX_ENUM_TESTS} guard"
        )
    masks = ineq.contexts
    weights = ineq.weights
    best = Fraction(-1)
    best_a = 0
    for a in range(1 << ineq.n_tests):
        val = Fraction(0)
        for c, w in zip(masks, weights):
            if (a & c).bit_count() == 1:
                val += w
        if val > best:
            best, best_a = val, a
    return best, best_a


# ---------------------------------------------------------------------------
# text format

def format_inequality(ineq: Inequality) -> str:
    lines = [f"tests {ineq.n_tests}"]
    for c, w in zip(ineq.contexts, ineq.weights):
        members = " ".join(str(t) for t in set_vertices(c))
        lines.append(f"context {w.numerator}/{w.denominator}: {members}")
    return "\n".join(lines) + "\n"


def parse_inequality(text: str) -> Inequality:
    """Parse the inequality text format; errors carry 1-based line numbers.

    Declared bounds are not part of the format; parsed scenarios get their
    NCHV bound from exhaustive enumeration and GP bound from the weight sum.
    """
    n = None
    contexts: list[int] = []
    weights: list[Fraction] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 2 or fields[0] != "tests":
                raise ValueError(f"line {lineno}: expected 'tests <n>', got {raw!r}")
            n = int(fields[1])
            continue
        if fields[0] != "context" or ":" not in line:
            raise ValueError(f"line {lineno}: expected 'context p/q: i j ...', got {raw!r}")
        head, _, tail = line.partition(":")
        try:
            w = Fraction(head.split()[1])
        except (ValueError, ZeroDivisionError, IndexError):
            raise ValueError(f"line {lineno}: bad context weight in {raw!r}") from None
        try:
            members = [int(t) for t in tail.split()]
        except ValueError:
            raise ValueError(f"line {lineno}: test indices must be integers") from None
        if not members:
            raise ValueError(f"line {lineno}: empty context")
        contexts.append(vertex_set(members))
        weights.append(w)
    if n is None:
        raise ValueError("line 1: missing 'tests <n>' header")
    gp = sum(weights, Fraction(0))
    ineq = Inequality(
        n_tests=n,
        contexts=tuple(contexts),
        weights=tuple(weights),
        bound_nchv=Fraction(0),
        bound_qm=float(gp),
        bound_gp=gp,
    )
    nchv, _ = nchv_max(ineq)
    return Inequality(
        n_tests=n,
        contexts=tuple(contexts),
        weights=tuple(weights),
        bound_nchv=nchv,
        bound_qm=float(gp),
        bound_gp=gp,
    )
