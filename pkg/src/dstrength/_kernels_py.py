"""Vectorized numpy fallback for the two-qubit sweep kernels.

Mirrors the compiled extension in dstrength._kernels: given a batch of
two-qubit separable ensembles (weights plus Bloch vectors on both factors),
return the top eigenvalue of the W matrix of each assembled state, i.e.
1 - DS/sin^2(lambda).  Everything is batched through LAPACK gufuncs.
"""

from __future__ import annotations

import numpy as np

_PAULIS = np.stack([
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
])
_PAULIS_FULL = np.stack([np.kron(p, np.eye(2)) for p in _PAULIS])


def _bloch_projectors(vecs: np.ndarray) -> np.ndarray:
    """(..., 3) unit vectors -> (..., 2, 2) pure-qubit projectors."""
    out = np.einsum("...a,aij->...ij", vecs, _PAULIS)
    out += np.eye(2)
    return 0.5 * out


def assemble_separable(weights: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Batch of rho = sum_j w_j (I+u_j.sigma)/2 (x) (I+v_j.sigma)/2, shape (n,4,4)."""
    pa = _bloch_projectors(u)
    pb = _bloch_projectors(v)
    rho = np.einsum("nj,njab,njcd->nacbd", weights, pa, pb, optimize=True)
    n = weights.shape[0]
    return rho.reshape(n, 4, 4)


def rho_xi_max(rhos: np.ndarray) -> np.ndarray:
    """Top eigenvalue of W for each 4x4 two-qubit density matrix."""
    rhos = np.ascontiguousarray(rhos, dtype=complex)
    w, vec = np.linalg.eigh(rhos)
    # same support cutoff as linalg.mat_pow so all DS paths agree
    w = np.where(w < 1e-12, 0.0, w)
    sqrt_rho = (vec * np.sqrt(w)[:, None, :]) @ np.conjugate(np.swapaxes(vec, 1, 2))
    m = np.einsum("nij,ajk->naik", sqrt_rho, _PAULIS_FULL, optimize=True)
    wmat = np.einsum("naij,nbji->nab", m, m, optimize=True).real
    wmat = 0.5 * (wmat + np.swapaxes(wmat, 1, 2))
    return np.linalg.eigvalsh(wmat)[:, -1]


def sep_xi_max(weights: np.ndarray, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """xi_max(W) for each ensemble; DS/sin^2(lambda) = 1 - result."""
    weights = np.ascontiguousarray(weights, dtype=float)
    u = np.ascontiguousarray(u, dtype=float)
    v = np.ascontiguousarray(v, dtype=float)
    return rho_xi_max(assemble_separable(weights, u, v))
