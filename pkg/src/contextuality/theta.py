"""Lovász number of a graph via a small dense primal-dual SDP solver.

The semidefinite program is the trace-normalised form: maximise the total
sum of the entries of X subject to trace(X) = 1, X_ij = 0 on every edge and
X positive semidefinite.  The solver is an infeasible-start path-following
method with HKM search directions, suited to the dense order-10..25
instances that occur here; each run certifies its answer with the final
primal-dual gap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import Graph

_SYM_TOL = 1e-12


def sym_matrix(entries) -> np.ndarray:
    """Validate a dense symmetric real matrix and return it exactly symmetric."""
    m = np.asarray(entries, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    scale = max(1.0, float(np.abs(m).max()))
    if np.abs(m - m.T).max() > _SYM_TOL * scale:
        raise ValueError("matrix is not symmetric")
    return (m + m.T) / 2.0


def eig_sym(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric matrix."""
    return np.linalg.eigh(sym_matrix(m))


@dataclass
class ThetaResult:
    """Outcome of a Lovász number solve.

    ``value`` is the primal objective of the returned witness; ``gap`` the
    final primal-dual gap certifying it.  ``converged`` is False when the
    iteration cap was reached first, in which case value/gap report the
    best iterate.
    """

    value: float
    witness: np.ndarray
    gap: float
    iterations: int
    converged: bool


def _is_pd(m: np.ndarray) -> bool:
    try:
        np.linalg.cholesky(m)
        return True
    except np.linalg.LinAlgError:
        return False


def _max_step(m: np.ndarray, dm: np.ndarray) -> float:
    # largest tested step in (0, 1] keeping the iterate inside the cone;
    # shrink by a fixed factor until the Cholesky test passes
    a = 1.0
    for _ in range(80):
        if _is_pd(m + a * dm):
            return a
        a *= 0.8
    return 0.0


def lovasz_theta(g: Graph, tol: float = 1e-8, max_iter: int = 500) -> ThetaResult:
    """Lovász number with a PSD witness, certified by the primal-dual gap.

    Stops once the gap and both feasibility residuals drop below ``tol``.
    The witness X satisfies trace(X) = 1 and vanishes on edges up to the
    reported gap; its total entry sum is the returned value.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    n = g.n
    if n == 1:
        return ThetaResult(1.0, np.ones((1, 1)), 0.0, 0, True)
    edges = g.edge_list()
    P = np.array([e[0] for e in edges], dtype=int)
    Q = np.array([e[1] for e in edges], dtype=int)
    m = 1 + len(edges)
    b = np.zeros(m)
    b[0] = 1.0
    J = np.ones((n, n))

    def adjoint(y: np.ndarray) -> np.ndarray:
        z = np.zeros((n, n))
        if len(edges):
            z[P, Q] = y[1:]
            z = z + z.T
        z[np.diag_indices(n)] += y[0]
        return z

    def apply_A(w: np.ndarray) -> np.ndarray:
        out = np.empty(m)
        out[0] = np.trace(w)
        if len(edges):
            out[1:] = 2.0 * w[P, Q]
        return out

    X = np.eye(n) / n
    y = np.zeros(m)
    y[0] = n + 1.0
    S = adjoint(y) - J

    sigma = 0.3
    tau = 0.98
    value = float(X.sum())
    gap = abs(y[0] - value)
    it = 0
    for it in range(1, max_iter + 1):
        rp = b - apply_A(X)
        Rd = J + S - adjoint(y)
        pobj = float(X.sum())
        dobj = float(y[0])
        value = pobj
        gap = abs(dobj - pobj)
        if (
            gap <= tol
            and np.abs(rp).max() <= tol
            and np.abs(Rd).max() <= tol
        ):
            return ThetaResult(value, (X + X.T) / 2.0, gap, it - 1, True)

        Sinv = np.linalg.inv(S)
        Sinv = (Sinv + Sinv.T) / 2.0
        mu = float(np.tensordot(X, S) / n)

        # T[l] = sym(X A_l Sinv) for every constraint; the trace constraint
        # first, then one rank-two matrix per edge
        T0 = X @ Sinv
        if len(edges):
            Te = (
                X[:, P].T[:, :, None] * Sinv[Q, :][:, None, :]
                + X[:, Q].T[:, :, None] * Sinv[P, :][:, None, :]
            )
            T = np.concatenate([T0[None, :, :], Te], axis=0)
        else:
            T = T0[None, :, :]
        T = (T + T.transpose(0, 2, 1)) / 2.0
        M = np.empty((m, m))
        M[0, :] = np.einsum("lii->l", T)
        if len(edges):
            M[1:, :] = 2.0 * T[:, P, Q].T

        W = X @ Rd @ Sinv
        W = (W + W.T) / 2.0
        r = sigma * mu * apply_A(Sinv) + apply_A(W) - b
        try:
            dy = np.linalg.solve(M, r)
        except np.linalg.LinAlgError:
            break
        dS = adjoint(dy) - Rd
        dX = sigma * mu * Sinv - X - (X @ dS @ Sinv + Sinv @ dS @ X) / 2.0
        dX = (dX + dX.T) / 2.0

        alpha = tau * _max_step(X, dX)
        beta = tau * _max_step(S, dS)
        if alpha <= 0.0 and beta <= 0.0:
            break
        X = X + alpha * dX
        X = (X + X.T) / 2.0
        y = y + beta * dy
        S = S + beta * dS
        S = (S + S.T) / 2.0

    pobj = float(X.sum())
    gap = abs(float(y[0]) - pobj)
    return ThetaResult(pobj, (X + X.T) / 2.0, gap, it, False)
