"""Two-state discrimination: quantum Chernoff bound, Helstrom error, fidelity.

The Chernoff overlap Q = min_{0<=s<=1} Tr[rho0^s rho1^(1-s)] controls the
exponential decay of the many-copy minimum error probability; 1 - Q is the
single figure of merit every discriminating-strength computation reduces to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    PSD_TOL,
    SUPPORT_CUTOFF,
    CapacityError,
    ContractViolationError,
    check_hermitian,
    eig_hermitian,
    kron,
    sqrtm,
)

#: largest tensor-power dimension helstrom_error will materialize
HELSTROM_DIM_CAP = 4096

#: overlaps below this report an infinite decay constant
_XI_INF_CUTOFF = 1e-300

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_S_GRID = np.linspace(0.0, 1.0, 21)
_S_TOL = 1e-10


@dataclass(frozen=True)
class ChernoffResult:
    """Chernoff overlap q at the minimizing exponent s_star; xi = -ln q."""

    q: float
    s_star: float
    xi: float


def _spectral_split(rho, name: str = "rho") -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending, support-clipped) and eigenvectors of a state."""
    w, v = eig_hermitian(check_hermitian(rho, name=name))
    if w[-1] < -PSD_TOL:
        raise ContractViolationError(f"{name} has negative eigenvalue {w[-1]}")
    w = np.where(w < SUPPORT_CUTOFF, 0.0, w)
    return w, v


def _pow_on_support(w: np.ndarray, e: float) -> np.ndarray:
    out = np.zeros_like(w)
    nz = w > 0
    out[nz] = w[nz] ** e
    return out


def min_overlap_s(w0: np.ndarray, w1: np.ndarray, overlaps: np.ndarray,
                  s_tol: float = _S_TOL):
    """Minimize g(s) = sum_ij w0_i^s w1_j^(1-s) |<v0_i|v1_j>|^2 over s in [0,1].

    g is convex, so a coarse grid plus golden-section refinement around the
    grid minimum is reliable; the endpoints are always evaluated explicitly
    because rank-deficient states often put the minimum there.
    Returns (s_star, g(s_star)).
    """

    def g(s: float) -> float:
        return float(_pow_on_support(w0, s) @ overlaps @ _pow_on_support(w1, 1.0 - s))

    pw0 = np.where(w0[None, :] > 0, w0[None, :] ** _S_GRID[:, None], 0.0)
    pw1 = np.where(w1[None, :] > 0, w1[None, :] ** (1.0 - _S_GRID[:, None]), 0.0)
    grid_vals = np.einsum("si,ij,sj->s", pw0, overlaps, pw1)
    i_best = int(np.argmin(grid_vals))
    best_s, best_val = float(_S_GRID[i_best]), float(grid_vals[i_best])

    a = float(_S_GRID[max(i_best - 1, 0)])
    b = float(_S_GRID[min(i_best + 1, _S_GRID.size - 1)])
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = g(c), g(d)
    while b - a > s_tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = g(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = g(d)
    s_mid = 0.5 * (a + b)
    for s, val in ((s_mid, g(s_mid)), (0.0, g(0.0)), (1.0, g(1.0))):
        if val < best_val:
            best_s, best_val = s, val
    return best_s, best_val


def chernoff_overlap(rho0, rho1) -> ChernoffResult:
    """Quantum Chernoff bound Q(rho0, rho1) = min_s Tr[rho0^s rho1^(1-s)]."""
    rho0 = np.asarray(rho0, dtype=complex)
    rho1 = np.asarray(rho1, dtype=complex)
    if rho0.shape != rho1.shape:
        raise ContractViolationError(
            f"dimension mismatch: {rho0.shape} vs {rho1.shape}")
    w0, v0 = _spectral_split(rho0, "rho0")
    w1, v1 = _spectral_split(rho1, "rho1")
    overlaps = np.abs(v0.conj().T @ v1) ** 2
    s_star, q = min_overlap_s(w0, w1, overlaps)
    q = float(min(max(q, 0.0), 1.0))
    xi = math.inf if q < _XI_INF_CUTOFF else -math.log(q)
    return ChernoffResult(q=q, s_star=s_star, xi=xi)


def fidelity(rho0, rho1) -> float:
    """Uhlmann fidelity (Tr sqrt(sqrt(rho0) rho1 sqrt(rho0)))^2."""
    rho0 = np.asarray(rho0, dtype=complex)
    rho1 = np.asarray(rho1, dtype=complex)
    if rho0.shape != rho1.shape:
        raise ContractViolationError(
            f"dimension mismatch: {rho0.shape} vs {rho1.shape}")
    s0 = sqrtm(rho0)
    inner = s0 @ rho1 @ s0
    w = np.linalg.eigvalsh(0.5 * (inner + inner.conj().T))
    # support cutoff: exact zeros of the rank-deficient inner matrix carry
    # float noise that the square root would amplify to ~1e-8
    w = np.where(w < SUPPORT_CUTOFF, 0.0, w)
    f = float(np.sum(np.sqrt(w)) ** 2)
    return min(max(f, 0.0), 1.0)


def trace_norm(m) -> float:
    """Sum of the absolute eigenvalues of a Hermitian matrix."""
    m = check_hermitian(m)
    return float(np.sum(np.abs(np.linalg.eigvalsh(m))))


def _tensor_power(rho: np.ndarray, n: int) -> np.ndarray:
    # always a fresh array: the caller subtracts in place
    if n == 1:
        return np.array(rho, dtype=complex)
    out = rho
    for _ in range(n - 1):
        out = kron(out, rho)
    return out


def helstrom_error(rho0, rho1, n: int = 1) -> float:
    """Minimum error probability for n copies at equal priors.

    P_err = (1 - ||rho0^(x)n - rho1^(x)n||_1 / 2) / 2, in [0, 1/2].
    """
    rho0 = np.asarray(rho0, dtype=complex)
    rho1 = np.asarray(rho1, dtype=complex)
    if rho0.shape != rho1.shape:
        raise ContractViolationError(
            f"dimension mismatch: {rho0.shape} vs {rho1.shape}")
    if n < 1:
        raise ValueError("copy count must be >= 1")
    dim = rho0.shape[0]
    if dim ** n > HELSTROM_DIM_CAP:
        raise CapacityError(
            f"tensor-power dimension {dim}**{n} exceeds {HELSTROM_DIM_CAP}")
    delta = _tensor_power(rho0, n)
    delta -= _tensor_power(rho1, n)
    p = 0.5 * (1.0 - 0.5 * trace_norm(delta))
    return min(max(p, 0.0), 0.5)


def chernoff_decay_check(rho0, rho1, n_max: int) -> dict:
    """Finite-copy error decay against the asymptotic Chernoff exponent.

    Returns {"q", "xi", "rows"} where each row holds (n, p_err, exponent);
    the exponent is -ln(P_err)/n, reported as inf when P_err == 0.  The
    non-asymptotic bound P_err <= Q**n / 2 is asserted for every n.
    """
    res = chernoff_overlap(rho0, rho1)
    rows = []
    for n in range(1, n_max + 1):
        p = helstrom_error(rho0, rho1, n)
        if p > 0.5 * res.q ** n + 1e-10:
            raise ContractViolationError(
                f"Chernoff bound violated at n={n}: P={p} > Q^n/2={0.5 * res.q ** n}")
        exponent = math.inf if p <= 0.0 else -math.log(p) / n
        rows.append({"n": n, "p_err": p, "exponent": exponent})
    return {"q": res.q, "xi": res.xi, "rows": rows}
