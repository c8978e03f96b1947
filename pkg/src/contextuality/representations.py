"""Orthogonal graph representations, quantum values and measurement simulation.

A representation assigns one real unit vector to every vertex of a graph so
that adjacent vertices get orthogonal vectors; together with a handle state
it realises the yes-no tests of a scenario as rank-one projectors.  The
module ships the explicit dimension-6 representation that saturates the
twin inequality's general-probabilistic bound and the optimal dimension-3
pentagon representation, searches for representations numerically, and
simulates sequential projective measurements under the Lüders update rule.

Real vectors only: the shipped constructions are real and the graph
quantities they certify are attained by real representations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .graphs import Graph, is_clique, set_vertices
from .inequalities import Inequality, inequality_graph, kcbs, twin

_UNIT_TOL = 1e-12
# local search: restarts whose final edge residual exceeds this are not
# ranked by value (the reported value would overstate a genuine quantum value)
REJECT_RESIDUAL = 1e-6


def state_vector(components) -> np.ndarray:
    """Validate a real unit vector (norm within 1e-12 of one)."""
    v = np.asarray(components, dtype=float)
    if v.ndim != 1:
        raise ValueError("a state is a one-dimensional real vector")
    if abs(float(np.linalg.norm(v)) - 1.0) > _UNIT_TOL:
        raise ValueError("state vector must have unit norm")
    return v


@dataclass
class OrthoRep:
    """Unit vectors over the vertices of a graph, one row per vertex.

    Construction checks shapes and unit norms; edge orthogonality is the
    job of :func:`validate_ortho_rep` (with its own tolerance), so that
    imperfect numerical representations can still be inspected.
    """

    graph: Graph
    vectors: np.ndarray

    def __post_init__(self):
        self.vectors = np.asarray(self.vectors, dtype=float)
        if self.vectors.ndim != 2 or self.vectors.shape[0] != self.graph.n:
            raise ValueError(
                f"need one vector per vertex: expected {self.graph.n} rows, "
                f"got shape {self.vectors.shape}"
            )
        norms = np.linalg.norm(self.vectors, axis=1)
        if np.abs(norms - 1.0).max() > _UNIT_TOL:
            raise ValueError("every representation vector must have unit norm")

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def gram(self) -> np.ndarray:
        return self.vectors @ self.vectors.T


# ---------------------------------------------------------------------------
# built-in representations

def twin_dim6_representation() -> OrthoRep:
    """The explicit dimension-6 representation of the twin scenario.

    Gram matrix pattern: 1 on the diagonal, 0 across every edge and 1/2 on
    every non-edge.  Together with :func:`twin_handle_state` it makes each
    of the five contexts fire with certainty.
    """
    s2, s3 = np.sqrt(2.0), np.sqrt(3.0)
    r8 = 1.0 / np.sqrt(8.0)
    vectors = np.array(
        [
            r8 * np.array([s2, -s2, 0.0, 0.0, 2.0, 0.0]),
            r8 * np.array([s2, 0.0, 0.0, s2, -1.0, s3]),
            0.5 * np.array([1.0, -1.0, -1.0, -1.0, 0.0, 0.0]),
            0.5 * np.array([1.0, -1.0, 1.0, 1.0, 0.0, 0.0]),
            r8 * np.array([s2, 0.0, 0.0, -s2, -1.0, s3]),
            r8 * np.array([s2, 0.0, -s2, 0.0, -1.0, -s3]),
            r8 * np.array([s2, 0.0, s2, 0.0, -1.0, -s3]),
            0.5 * np.array([1.0, 1.0, 1.0, -1.0, 0.0, 0.0]),
            r8 * np.array([s2, s2, 0.0, 0.0, 2.0, 0.0]),
            0.5 * np.array([1.0, 1.0, -1.0, 1.0, 0.0, 0.0]),
        ]
    )
    graph, _ = inequality_graph(twin())
    return OrthoRep(graph=graph, vectors=vectors)


def twin_handle_state() -> np.ndarray:
    """The handle state of the dimension-6 twin construction."""
    psi = np.zeros(6)
    psi[0] = 1.0
    return psi


def pentagon_dim3_representation() -> OrthoRep:
    """Optimal dimension-3 pentagon representation (umbrella construction).

    Five unit vectors around the symmetry axis at the polar angle that makes
    consecutive vectors orthogonal; with the axis as handle state the total
    overlap reaches sqrt(5).
    """
    c = np.cos(np.pi / 5.0)
    cos2 = c / (1.0 + c)
    sin2 = 1.0 - cos2
    phis = 4.0 * np.pi * np.arange(5) / 5.0
    vectors = np.stack(
        [
            np.sqrt(sin2) * np.cos(phis),
            np.sqrt(sin2) * np.sin(phis),
            np.full(5, np.sqrt(cos2)),
        ],
        axis=1,
    )
    graph, _ = inequality_graph(kcbs())
    return OrthoRep(graph=graph, vectors=vectors)


def pentagon_handle_state() -> np.ndarray:
    return np.array([0.0, 0.0, 1.0])


def named_representation(name: str) -> tuple[OrthoRep, np.ndarray]:
    """Resolve a bundled representation id to (representation, handle state)."""
    if name == "twin-d6":
        return twin_dim6_representation(), twin_handle_state()
    if name == "kcbs-d3":
        return pentagon_dim3_representation(), pentagon_handle_state()
    raise ValueError(f"unknown representation id {name!r} (known: twin-d6, kcbs-d3)")


# ---------------------------------------------------------------------------
# validation and values

@dataclass
class RepValidation:
    ok: bool
    unit_error: float
    edge_residual: float
    worst_edge: Optional[tuple[int, int]]
    nonedge_min_overlap: Optional[float]
    worst_nonedge: Optional[tuple[int, int]]


def validate_ortho_rep(rep: OrthoRep, tol: float = 1e-9, faithful: bool = False) -> RepValidation:
    """Check a representation against its graph.

    Edges must be orthogonal within ``tol``; with ``faithful`` non-edges
    must additionally be non-orthogonal (overlap above ``tol``).  The report
    carries the residual maxima and the worst offending pairs.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    g = rep.graph
    gram = rep.gram()
    unit_error = float(np.abs(np.diag(gram) - 1.0).max())
    edge_residual = 0.0
    worst_edge = None
    nonedge_min = None
    worst_nonedge = None
    for u in range(g.n):
        for v in range(u + 1, g.n):
            ov = abs(float(gram[u, v]))
            if g.has_edge(u, v):
                if ov > edge_residual:
                    edge_residual, worst_edge = ov, (u, v)
            elif nonedge_min is None or ov < nonedge_min:
                nonedge_min, worst_nonedge = ov, (u, v)
    ok = unit_error <= tol and edge_residual <= tol
    if faithful and nonedge_min is not None:
        ok = ok and nonedge_min > tol
    return RepValidation(
        ok=ok,
        unit_error=unit_error,
        edge_residual=edge_residual,
        worst_edge=worst_edge,
        nonedge_min_overlap=nonedge_min if faithful else None,
        worst_nonedge=worst_nonedge if faithful else None,
    )


def quantum_value(rep: OrthoRep, psi: np.ndarray) -> float:
    """Total squared overlap of the handle state with the representation."""
    psi = np.asarray(psi, dtype=float)
    if psi.shape != (rep.dim,):
        raise ValueError(f"state dimension {psi.shape} does not match rep dim {rep.dim}")
    return float(np.sum((rep.vectors @ psi) ** 2))


def inequality_quantum_lhs(
    ineq: Inequality, rep: OrthoRep, psi: np.ndarray
) -> tuple[float, list[float]]:
    """Quantum value of an inequality for a concrete representation and state.

    Each context must be a clique of the representation's graph, so its
    tests are mutually exclusive rank-one projectors and the probability of
    exactly one firing is the plain sum of the squared overlaps.
    """
    if ineq.n_tests != rep.graph.n:
        raise ValueError("inequality tests and representation vertices differ")
    psi = np.asarray(psi, dtype=float)
    if psi.shape != (rep.dim,):
        raise ValueError("state dimension does not match the representation")
    overlaps2 = (rep.vectors @ psi) ** 2
    terms = []
    for c in ineq.contexts:
        if not is_clique(rep.graph, c):
            raise ValueError(
                f"context {set_vertices(c)} is not a clique of the representation graph"
            )
        terms.append(float(overlaps2[list(set_vertices(c))].sum()))
    lhs = float(sum(float(w) * t for w, t in zip(ineq.weights, terms)))
    return lhs, terms


# ---------------------------------------------------------------------------
# numerical search

@dataclass
class SearchResult:
    """Best restart of a representation search.

    ``residual`` is the final maximum edge overlap of the returned vectors;
    restarts with residual above REJECT_RESIDUAL are excluded from the
    value ranking (``accepted_restarts`` counts the rest).  Values are
    heuristic local-search outcomes, not certified bounds.
    """

    value: float
    rep: OrthoRep
    psi: np.ndarray
    residual: float
    restart: int
    accepted_restarts: int
    seed: int


def _normalize_rows(v: np.ndarray) -> np.ndarray:
    return v / np.linalg.norm(v, axis=1, keepdims=True)


def _edge_residual(v: np.ndarray, pairs: np.ndarray) -> float:
    if len(pairs) == 0:
        return 0.0
    return float(np.abs(np.einsum("ed,ed->e", v[pairs[:, 0]], v[pairs[:, 1]])).max())


def _edge_matchings(pairs: np.ndarray) -> list[np.ndarray]:
    # Greedy partition of the edges into matchings so that the corrections
    # within one group touch disjoint vertices and can run vectorised.
    groups: list[list[int]] = []
    touched: list[set[int]] = []
    for ei, (i, j) in enumerate(pairs):
        for gi, seen in enumerate(touched):
            if i not in seen and j not in seen:
                groups[gi].append(ei)
                seen.update((int(i), int(j)))
                break
        else:
            groups.append([ei])
            touched.append({int(i), int(j)})
    return [np.asarray(grp, dtype=int) for grp in groups]


def _restore_orthogonality(v: np.ndarray, pairs: np.ndarray,
                           groups: list[np.ndarray],
                           sweeps: int = 400) -> tuple[np.ndarray, float]:
    # Feasibility restoration by cyclic per-edge corrections: each pass
    # applies to every edge the minimal symmetric shear that zeroes its
    # overlap, then renormalises the pair.  Locally convergent; stops on
    # convergence or stagnation (near-parallel adjacent vectors cannot be
    # separated this way and leave a large residual for the caller to see).
    v = v.copy()
    best_v, best_res = v.copy(), _edge_residual(v, pairs)
    stale = 0
    for _ in range(sweeps):
        if best_res <= 1e-15:
            break
        for grp in groups:
            I, J = pairs[grp, 0], pairs[grp, 1]
            c = np.clip(np.einsum("ed,ed->e", v[I], v[J]), -1.0 + 1e-15, 1.0 - 1e-15)
            t = c / (1.0 + np.sqrt(1.0 - c * c))
            wi = v[I] - t[:, None] * v[J]
            wj = v[J] - t[:, None] * v[I]
            ni = np.linalg.norm(wi, axis=1)
            nj = np.linalg.norm(wj, axis=1)
            ok = (ni > 1e-8) & (nj > 1e-8)
            v[I[ok]] = wi[ok] / ni[ok, None]
            v[J[ok]] = wj[ok] / nj[ok, None]
        res = _edge_residual(v, pairs)
        if res < best_res:
            stale = 0 if res < best_res * 0.9 else stale + 1
            best_v, best_res = v.copy(), res
        else:
            stale += 1
        if stale > 50:
            break
    return best_v, best_res


def _top_eigpair(v: np.ndarray) -> tuple[float, np.ndarray]:
    evals, evecs = np.linalg.eigh(v.T @ v)
    psi = evecs[:, -1]
    nz = np.nonzero(np.abs(psi) > 1e-12)[0]
    if len(nz) and psi[nz[0]] < 0:
        psi = -psi
    return float(evals[-1]), psi


def _polish_on_manifold(
    v: np.ndarray,
    pairs: np.ndarray,
    groups: list[np.ndarray],
    iters: int = 300,
) -> tuple[np.ndarray, np.ndarray, float, float]:
    # Riemannian ascent of the best achievable value lambda_max(V^T V) with
    # the edge-restoration step as retraction: move along the value
    # gradient, renormalise, restore orthogonality, and keep the move only
    # if the restored value improved.
    v, res = _restore_orthogonality(v, pairs, groups)
    val, psi = _top_eigpair(v)
    step = 0.1
    tiny_gains = 0
    for _ in range(iters):
        grad = 2.0 * (v @ psi)[:, None] * psi[None, :]
        cand = _normalize_rows(v + step * grad)
        # cheap reject: the unrestored value upper-bounds the restored one
        if _top_eigpair(cand)[0] <= val + 1e-14:
            step *= 0.5
            if step < 1e-8:
                break
            continue
        cand, cres = _restore_orthogonality(cand, pairs, groups, sweeps=40)
        cval, cpsi = _top_eigpair(cand)
        if cval > val and cres <= max(res, 1e-12):
            tiny_gains = tiny_gains + 1 if cval - val < 1e-11 else 0
            v, val, psi, res = cand, cval, cpsi, cres
            if tiny_gains >= 3:
                break
            step = min(step * 1.3, 0.5)
        else:
            step *= 0.5
            if step < 1e-8:
                break
    val, psi = _top_eigpair(v)
    value = float(np.sum((v @ psi) ** 2))
    return v, psi, value, _edge_residual(v, pairs)


def ortho_rep_search(
    g: Graph,
    dim: int,
    restarts: int = 50,
    seed: int = 0,
    penalty: float = 100.0,
    max_iters: int = 10_000,
) -> SearchResult:
    """Local search for a high-value orthogonal representation of ``g``.

    Each restart draws random unit vectors, runs projected gradient ascent
    on   sum_i <v_i|psi>^2  -  penalty * sum_edges <v_i|v_j>^2   with row
    renormalisation (step 0.05, halved on non-improvement), then restores
    the edge constraints exactly by Gauss-Seidel projection and takes the
    optimal handle state for the restored vectors (top eigenvector of
    sum_i v_i v_i^T).  The penalty phase alone stalls at overlaps of order
    1/penalty, so the restoration step is what makes reported residuals
    honest.  Deterministic for a fixed seed; restart i uses the derived
    seed (seed, i).
    """
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    if restarts < 1:
        raise ValueError("need at least one restart")
    n = g.n
    pairs = np.array(g.edge_list(), dtype=int).reshape(-1, 2)
    groups = _edge_matchings(pairs)
    amat = np.zeros((n, n))
    if len(pairs):
        amat[pairs[:, 0], pairs[:, 1]] = 1.0
        amat[pairs[:, 1], pairs[:, 0]] = 1.0

    def objective(v: np.ndarray, psi: np.ndarray) -> float:
        gram = v @ v.T
        return float(np.sum((v @ psi) ** 2) - penalty * np.sum((amat * gram) ** 2) / 2.0)

    best: Optional[SearchResult] = None
    best_rejected: Optional[SearchResult] = None
    accepted = 0
    for idx in range(restarts):
        rng = np.random.default_rng([seed, idx])
        v = _normalize_rows(rng.standard_normal((n, dim)))
        psi = rng.standard_normal(dim)
        psi /= np.linalg.norm(psi)

        step = 0.05
        f = objective(v, psi)
        for _ in range(max_iters):
            p = v @ psi
            grad_v = 2.0 * p[:, None] * psi[None, :] - 2.0 * penalty * (amat * (v @ v.T)) @ v
            grad_psi = 2.0 * v.T @ p
            v_new = _normalize_rows(v + step * grad_v)
            psi_new = psi + step * grad_psi
            psi_new /= np.linalg.norm(psi_new)
            f_new = objective(v_new, psi_new)
            if f_new > f:
                v, psi, f = v_new, psi_new, f_new
            else:
                step *= 0.5
                if step < 1e-6:
                    break

        v, psi, value, residual = _polish_on_manifold(v, pairs, groups)

        result = SearchResult(
            value=value,
            rep=OrthoRep(graph=g, vectors=_normalize_rows(v)),
            psi=psi,
            residual=residual,
            restart=idx,
            accepted_restarts=0,
            seed=seed,
        )
        if residual <= REJECT_RESIDUAL:
            accepted += 1
            if best is None or value > best.value:
                best = result
        elif best_rejected is None or residual < best_rejected.residual:
            best_rejected = result

    chosen = best if best is not None else best_rejected
    assert chosen is not None
    chosen.accepted_restarts = accepted
    return chosen


# ---------------------------------------------------------------------------
# vector file format (shared by representations and states)

def format_vectors(vectors: np.ndarray) -> str:
    """Render vectors in the text format: ``dim <d>`` then one row per line."""
    v = np.atleast_2d(np.asarray(vectors, dtype=float))
    lines = [f"dim {v.shape[1]}"]
    for row in v:
        lines.append(" ".join(f"{x:.17g}" for x in row))
    return "\n".join(lines) + "\n"


def parse_vectors(text: str) -> np.ndarray:
    """Parse the vector text format; errors carry 1-based line numbers.

    Returns an array of shape (rows, dim); a state file is simply a single
    row.
    """
    dim = None
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if dim is None:
            if len(fields) != 2 or fields[0] != "dim":
                raise ValueError(f"line {lineno}: expected 'dim <d>', got {raw!r}")
            try:
                dim = int(fields[1])
            except ValueError:
                raise ValueError(f"line {lineno}: dimension must be an integer") from None
            if dim < 1:
                raise ValueError(f"line {lineno}: dimension must be positive")
            continue
        if len(fields) != dim:
            raise ValueError(f"line {lineno}: expected {dim} components, got {len(fields)}")
        try:
            rows.append([float(x) for x in fields])
        except ValueError:
            raise ValueError(f"line {lineno}: components must be decimal numbers") from None
    if dim is None:
        raise ValueError("line 1: missing 'dim <d>' header")
    if not rows:
        raise ValueError("no vector rows found after the header")
    return np.array(rows)


# ---------------------------------------------------------------------------
# sequential measurement simulation

def measure_sequence(
    rep: OrthoRep,
    psi: np.ndarray,
    tests: Sequence[int],
    shots: int,
    rng: np.random.Generator,
) -> np.ndarray:
    """Simulate sequential projective measurements of the given tests.

    Every shot starts from ``psi`` and measures the listed tests in order;
    outcome 1 collapses the state onto the test's ray, outcome 0 onto the
    renormalised orthogonal complement component.  Returns a uint8 array of
    shape (shots, len(tests)).  Repeated tests in the sequence are allowed
    (and must repeat their outcome).
    """
    if shots < 1:
        raise ValueError("need at least one shot")
    psi = np.asarray(psi, dtype=float)
    if psi.shape != (rep.dim,):
        raise ValueError("state dimension does not match the representation")
    states = np.tile(psi, (shots, 1))
    outcomes = np.zeros((shots, len(tests)), dtype=np.uint8)
    for pos, t in enumerate(tests):
        vec = rep.vectors[t]
        amps = states @ vec
        probs = np.clip(amps**2, 0.0, 1.0)
        fire = rng.random(shots) < probs
        outcomes[:, pos] = fire
        # Lüders update: ray for outcome 1, complement component for outcome 0
        signs = np.where(amps[fire] >= 0.0, 1.0, -1.0)
        states[fire] = signs[:, None] * vec[None, :]
        rest = ~fire
        states[rest] = states[rest] - amps[rest, None] * vec[None, :]
        norms = np.linalg.norm(states[rest], axis=1)
        if len(norms) and norms.min() < 1e-12:
            raise ValueError(
                "degenerate collapse: post-measurement state has vanishing norm"
            )
        states[rest] = states[rest] / norms[:, None]
    return outcomes


@dataclass
class SimulationResult:
    """Empirical statistics of a sequential-measurement experiment."""

    contexts: list[tuple[int, ...]]
    outcomes: list[np.ndarray]
    p_exactly_one: list[float]
    lhs: float
    shots: int
    seed: int

    def standard_errors(self) -> list[float]:
        return [
            float(np.sqrt(max(p * (1.0 - p), 0.0) / self.shots))
            for p in self.p_exactly_one
        ]


def simulate_sequential(
    ineq: Inequality,
    rep: OrthoRep,
    psi: np.ndarray,
    shots: int = 100_000,
    seed: int = 0,
) -> SimulationResult:
    """Monte Carlo estimate of the inequality value from sequential runs.

    Each context is measured test-by-test (ascending test order) for the
    requested number of shots; the exactly-one-fires indicator is computed
    from the recorded outcome tuples, never from single-test marginals.
    Context ``c`` uses the derived seed (seed, c), so results do not depend
    on how contexts might be scheduled.
    """
    if ineq.n_tests != rep.graph.n:
        raise ValueError("inequality tests and representation vertices differ")
    contexts = [set_vertices(c) for c in ineq.contexts]
    for c in ineq.contexts:
        if not is_clique(rep.graph, c):
            raise ValueError(
                f"context {set_vertices(c)} is not a clique of the representation graph"
            )
    outcomes = []
    p_one = []
    for ci, tests in enumerate(contexts):
        rng = np.random.default_rng([seed, ci])
        out = measure_sequence(rep, psi, tests, shots, rng)
        outcomes.append(out)
        p_one.append(float(np.mean(out.sum(axis=1) == 1)))
    lhs = float(sum(float(w) * p for w, p in zip(ineq.weights, p_one)))
    return SimulationResult(
        contexts=contexts,
        outcomes=outcomes,
        p_exactly_one=p_one,
        lhs=lhs,
        shots=shots,
        seed=seed,
    )
