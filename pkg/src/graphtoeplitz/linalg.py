"""Small numerical helpers shared by the matrix layers."""

from __future__ import annotations

import numpy as np
import scipy.sparse as sp

DENSE_LIMIT = 512
POWER_TOL = 1e-12
POWER_MAXITER = 100_000


def to_dense(m) -> np.ndarray:
    if sp.issparse(m):
        return m.toarray()
    return np.asarray(m, dtype=complex)


def canonical(m) -> sp.csr_matrix:
    """Complex CSR with duplicates summed, zeros dropped and indices sorted."""
    out = sp.csr_matrix(m, dtype=complex)
    out.sum_duplicates()
    out.eliminate_zeros()
    out.sort_indices()
    return out


def power_norm(m, tol: float = POWER_TOL, maxiter: int = POWER_MAXITER) -> float:
    """Spectral norm by power iteration on ``m^H m`` from the normalized all-ones vector."""
    n = m.shape[1]
    x = np.ones(n, dtype=complex) / np.sqrt(n)
    lam = 0.0
    for _ in range(maxiter):
        y = m.conj().T @ (m @ x)
        new = float(np.linalg.norm(y))
        if new == 0.0:
            return 0.0
        x = y / new
        if abs(new - lam) <= tol * max(new, 1.0):
            lam = new
            break
        lam = new
    return float(np.sqrt(lam))


def spectral_norm(m) -> float:
    """Operator 2-norm: dense SVD up to ``DENSE_LIMIT`` rows/cols, power iteration above."""
    if min(m.shape) == 0:
        return 0.0
    if max(m.shape) <= DENSE_LIMIT:
        return float(np.linalg.norm(to_dense(m), 2))
    if not sp.issparse(m):
        m = np.asarray(m, dtype=complex)
    return power_norm(m)


def min_eigenvalue(h) -> float:
    """Smallest eigenvalue of a Hermitian matrix (symmetrized before solving)."""
    d = to_dense(h)
    if d.size == 0:
        return 0.0
    d = (d + d.conj().T) / 2
    return float(np.linalg.eigvalsh(d)[0])
