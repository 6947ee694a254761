"""Complex Hermitian linear algebra for finite-dimensional quantum states.

All matrices are dense complex128 ndarrays.  Eigenvalues are always returned
in descending order, and fractional powers use a support cutoff so that
rank-deficient density matrices behave sensibly (0**s == 0 for every
s in [0, 1], including s == 0, i.e. rho**0 is the support projector).
"""

from __future__ import annotations

import numpy as np

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-10
SUPPORT_CUTOFF = 1e-12
UNIT_TOL = 1e-12

ID2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])


class ContractViolationError(ValueError):
    """An input failed one of its documented invariants."""


class CapacityError(ValueError):
    """A dimension or enumeration guard was exceeded."""


def check_hermitian(m, tol: float = HERMITIAN_TOL, name: str = "matrix") -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ContractViolationError(f"{name} must be square, got shape {m.shape}")
    if np.max(np.abs(m - m.conj().T)) > tol:
        raise ContractViolationError(f"{name} is not Hermitian within {tol}")
    return m


def check_density_matrix(rho, name: str = "rho") -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; return as complex array."""
    rho = check_hermitian(rho, name=name)
    tr = np.trace(rho)
    if abs(tr - 1.0) > TRACE_TOL:
        raise ContractViolationError(f"{name} has trace {tr}, expected 1")
    wmin = np.linalg.eigvalsh(rho)[0]
    if wmin < -PSD_TOL:
        raise ContractViolationError(f"{name} has negative eigenvalue {wmin}")
    return rho


def check_unitary(u, tol: float = HERMITIAN_TOL, name: str = "matrix") -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ContractViolationError(f"{name} must be square, got shape {u.shape}")
    d = u.shape[0]
    if np.max(np.abs(u.conj().T @ u - np.eye(d))) > tol:
        raise ContractViolationError(f"{name} is not unitary within {tol}")
    return u


def check_pure_state(psi, tol: float = UNIT_TOL, name: str = "psi") -> np.ndarray:
    psi = np.asarray(psi, dtype=complex).ravel()
    norm2 = float(np.vdot(psi, psi).real)
    if abs(norm2 - 1.0) > tol:
        raise ContractViolationError(f"{name} has squared norm {norm2}, expected 1")
    return psi


def check_bloch_vector(n, tol: float = UNIT_TOL) -> np.ndarray:
    n = np.asarray(n, dtype=float).ravel()
    if n.shape != (3,):
        raise ContractViolationError(f"Bloch vector must have 3 components, got {n.shape}")
    norm2 = float(n @ n)
    if abs(norm2 - 1.0) > tol:
        raise ContractViolationError(f"Bloch vector has squared norm {norm2}, expected 1")
    return n


def eig_hermitian(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Returns (w, V) with m = V diag(w) V^dagger and w[0] >= w[1] >= ...
    Degenerate subspaces keep the LAPACK ordering.
    """
    m = check_hermitian(m)
    w, v = np.linalg.eigh(m)
    return w[::-1].copy(), v[:, ::-1].copy()


def _support_pow(w: np.ndarray, e: float) -> np.ndarray:
    """Elementwise w**e with the support convention 0**e == 0 for all e."""
    w = np.where(w < SUPPORT_CUTOFF, 0.0, w)
    out = np.zeros_like(w)
    nz = w > 0
    out[nz] = w[nz] ** e
    return out


def mat_pow(rho, s: float) -> np.ndarray:
    """Fractional power rho**s for s in [0, 1] on the support of rho.

    Eigenvalues below the support cutoff map to exactly 0 for every s,
    so mat_pow(rho, 0) is the support projector.
    """
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"exponent s={s} outside [0, 1]")
    w, v = eig_hermitian(rho)
    if w[-1] < -PSD_TOL:
        raise ContractViolationError(f"matrix has negative eigenvalue {w[-1]}")
    ws = _support_pow(w, s)
    out = (v * ws) @ v.conj().T
    return 0.5 * (out + out.conj().T)


def sqrtm(rho) -> np.ndarray:
    """Principal square root of a PSD Hermitian matrix; mat_pow(rho, 0.5)."""
    return mat_pow(rho, 0.5)


def kron(a, b) -> np.ndarray:
    """Tensor (Kronecker) product."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_trace_b(rho, dim_a: int, dim_b: int) -> np.ndarray:
    """Trace out the second tensor factor of a (dim_a*dim_b)-dimensional state."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (dim_a * dim_b, dim_a * dim_b):
        raise ContractViolationError(
            f"state of shape {rho.shape} does not match dims ({dim_a}, {dim_b})")
    return np.einsum("ikjk->ij", rho.reshape(dim_a, dim_b, dim_a, dim_b))


def _fix_column_phases(u: np.ndarray) -> np.ndarray:
    """Phases making the first non-negligible entry of each column real positive."""
    d = u.shape[1]
    phases = np.ones(d, dtype=complex)
    for j in range(d):
        col = u[:, j]
        idx = np.flatnonzero(np.abs(col) > 1e-12)
        if idx.size:
            z = col[idx[0]]
            phases[j] = z / abs(z)
    return phases


def schmidt_decompose(psi, dim_a: int, dim_b: int):
    """Schmidt decomposition of a bipartite pure state.

    Returns (q, basis_a, basis_b): q are the squared Schmidt coefficients in
    descending order, zero-padded to length dim_a when dim_b < dim_a;
    basis_a columns and basis_b rows are the local Schmidt vectors, so
    psi == sum_j sqrt(q[j]) basis_a[:, j] (x) basis_b[j, :] up to padding.
    The A-side vectors have their first nonzero amplitude made real positive;
    the paired B-side phase is adjusted to keep each product term unchanged.
    """
    psi = check_pure_state(psi)
    if psi.size != dim_a * dim_b:
        raise ContractViolationError(
            f"vector of length {psi.size} does not match dims ({dim_a}, {dim_b})")
    c = psi.reshape(dim_a, dim_b)
    u, s, vh = np.linalg.svd(c, full_matrices=True)
    q = np.zeros(dim_a)
    q[: s.size] = s ** 2
    phases = _fix_column_phases(u)
    u = u / phases[None, :]
    r = min(dim_a, dim_b)
    vh[:r, :] = vh[:r, :] * phases[:r, None]
    if dim_b > r:
        row_ph = _fix_column_phases(vh[r:, :].T)
        vh[r:, :] = vh[r:, :] / row_ph[:, None]
    return q, u, vh


def bloch_to_ket(n) -> np.ndarray:
    """Qubit amplitudes (cos(theta/2), e^{i phi} sin(theta/2)) for a unit Bloch vector."""
    n = check_bloch_vector(n)
    theta = np.arccos(np.clip(n[2], -1.0, 1.0))
    phi = np.arctan2(n[1], n[0])
    return np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])


def bloch_to_state(n) -> np.ndarray:
    """Pure qubit projector (I + n . sigma) / 2 for a unit Bloch vector."""
    n = check_bloch_vector(n)
    return 0.5 * (ID2 + n[0] * SIGMA_X + n[1] * SIGMA_Y + n[2] * SIGMA_Z)


def haar_random_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    if d < 1:
        raise ValueError("dimension must be >= 1")
    z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, r = np.linalg.qr(z / np.sqrt(2))
    diag = np.diagonal(r)
    return q * (diag / np.abs(diag))


def random_pure_state(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unit vector."""
    psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return psi / np.linalg.norm(psi)


def random_density_matrix(d: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Random mixed state G G^dagger / Tr, with G a d x rank complex Gaussian."""
    rank = d if rank is None else rank
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real
