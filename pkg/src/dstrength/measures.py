"""Discriminating strength, local quantum uncertainty and skew information.

The discriminating strength of a bipartite state rho is

    DS = 1 - max_H Q(rho, e^{iH} rho e^{-iH}),

maximized over local Hamiltonians H = U diag(spectrum) U^dagger acting on the
A factor, with Q the quantum Chernoff overlap.  Closed forms exist for pure
states (a permutation search over Schmidt coefficients) and for qubit probes
(a 3x3 eigenvalue problem); the general case is handled by a multi-restart
Nelder-Mead search over the unitary group.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .discrimination import min_overlap_s, _spectral_split
from .linalg import (
    CapacityError,
    ContractViolationError,
    PAULIS,
    check_hermitian,
    eig_hermitian,
    kron,
    partial_trace_b,
    sqrtm,
)
from .types import BipartiteState, LocalHamiltonian, Spectrum

#: permutation search is exhaustive up to this probe dimension (9! ~ 3.6e5)
PURE_PERMUTATION_CAP = 9


@dataclass
class OptimizerOptions:
    """Settings for the unitary-group search used by ds_general and lqu."""

    restarts: int = 20
    seed: int = 0
    fatol: float = 1e-8
    xatol: float = 1e-6
    maxiter: int | None = None
    force_general: bool = False


@dataclass(frozen=True)
class DsResult:
    """A discriminating-strength value with the worst-case Hamiltonian."""

    value: float
    optimal_hamiltonian: LocalHamiltonian
    method: str


def rotate_local(state: BipartiteState, h: LocalHamiltonian) -> BipartiteState:
    """Apply exp(iH) (x) I to the state; spectrum of rho is preserved."""
    if h.dim != state.dim_a:
        raise ContractViolationError(
            f"Hamiltonian of dimension {h.dim} does not act on dim_a={state.dim_a}")
    r = kron(h.rotation(), np.eye(state.dim_b))
    rho = r @ state.rho @ r.conj().T
    return BipartiteState(0.5 * (rho + rho.conj().T), state.dim_a, state.dim_b)


# ---------------------------------------------------------------------------
# unitary-group search harness
# ---------------------------------------------------------------------------

def _traceless_hermitian_basis(d: int) -> np.ndarray:
    """Generators of su(d): d^2 - 1 traceless Hermitian matrices."""
    gens = []
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = m[k, j] = 1.0
            gens.append(m)
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = -1j
            m[k, j] = 1j
            gens.append(m)
    for l in range(1, d):
        m = np.zeros((d, d), dtype=complex)
        m[np.arange(l), np.arange(l)] = 1.0
        m[l, l] = -float(l)
        gens.append(m)
    return np.stack(gens)


def _unitary_from_coords(a: np.ndarray, gens: np.ndarray) -> np.ndarray:
    """exp(i sum_k a_k G_k), evaluated through the eigenbasis of the exponent."""
    h = np.tensordot(a, gens, axes=(0, 0))
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * w)) @ v.conj().T


def _search_unitary(dim_a, objective, opts: OptimizerOptions, maximize: bool):
    """Multi-restart Nelder-Mead over U(dim_a); returns (best value, best U).

    Restart 0 starts at the identity so commuting optima (classical-quantum
    states) are found exactly; the remaining starts are uniform on
    [-pi, pi]^(d^2-1).  Ties keep the lowest restart index.
    """
    gens = _traceless_hermitian_basis(dim_a)
    nparams = gens.shape[0]
    sign = -1.0 if maximize else 1.0

    def f(a):
        return sign * objective(_unitary_from_coords(a, gens))

    rng = np.random.default_rng(opts.seed)
    starts = [np.zeros(nparams)]
    starts += [rng.uniform(-np.pi, np.pi, nparams) for _ in range(max(opts.restarts - 1, 0))]

    options = {"fatol": opts.fatol, "xatol": opts.xatol}
    if opts.maxiter is not None:
        options["maxiter"] = opts.maxiter
    best_fun, best_x = np.inf, starts[0]
    for x0 in starts:
        res = minimize(f, x0, method="Nelder-Mead", options=options)
        if res.fun < best_fun:
            best_fun, best_x = res.fun, res.x
    return sign * best_fun, _unitary_from_coords(best_x, gens)


def _chernoff_objective(state: BipartiteState, spectrum: Spectrum,
                        s_tol: float = 1e-10):
    """Q(rho, R rho R^dagger) as a function of the diagonalizing unitary.

    rho is eigendecomposed once; each evaluation costs one dim x dim product
    plus the scalar minimization over s (shared with chernoff_overlap).
    """
    w, v = _spectral_split(state.rho)
    da, db, d = state.dim_a, state.dim_b, state.dim
    v_blocks = v.reshape(da, db, d)
    phases = np.exp(1j * spectrum.lambdas)

    def q_of(u: np.ndarray) -> float:
        r = (u * phases) @ u.conj().T
        rv = np.tensordot(r, v_blocks, axes=(1, 0)).reshape(d, d)
        overlaps = np.abs(v.conj().T @ rv) ** 2
        _, q = min_overlap_s(w, w, overlaps, s_tol=s_tol)
        return min(max(q, 0.0), 1.0)

    return q_of


# ---------------------------------------------------------------------------
# qubit-probe closed form
# ---------------------------------------------------------------------------

def w_matrix(state: BipartiteState) -> np.ndarray:
    """The real symmetric 3x3 matrix W_ab = Tr[sqrt(rho) sigma_a sqrt(rho) sigma_b].

    The Pauli operators act on the qubit factor A only.  Its top eigenvalue
    fixes the qubit-probe discriminating strength.
    """
    if state.dim_a != 2:
        raise ContractViolationError(f"qubit probe required, got dim_a={state.dim_a}")
    s = sqrtm(state.rho)
    eye_b = np.eye(state.dim_b)
    m = [s @ kron(sig, eye_b) for sig in PAULIS]
    w = np.empty((3, 3), dtype=complex)
    for a in range(3):
        for b in range(a, 3):
            w[a, b] = w[b, a] = np.einsum("ij,ji->", m[a], m[b])
    resid = float(np.max(np.abs(w.imag)))
    if resid > 1e-9:
        raise ContractViolationError(f"W matrix has imaginary residue {resid}")
    wr = w.real
    return 0.5 * (wr + wr.T)


def _qubit_direction_hamiltonian(n_hat: np.ndarray, spectrum: Spectrum) -> LocalHamiltonian:
    """Local Hamiltonian with the given spectrum diagonal along n . sigma."""
    h_dir = n_hat[0] * PAULIS[0] + n_hat[1] * PAULIS[1] + n_hat[2] * PAULIS[2]
    _, basis = eig_hermitian(h_dir)
    return LocalHamiltonian(spectrum, basis)


def _qubit_ds_core(state: BipartiteState, lam_eff: float, spectrum: Spectrum) -> DsResult:
    wm = w_matrix(state)
    xi, vecs = np.linalg.eigh(wm)
    xi_max = min(float(xi[-1]), 1.0)
    value = max(0.0, (1.0 - xi_max) * math.sin(lam_eff) ** 2)
    ham = _qubit_direction_hamiltonian(vecs[:, -1], spectrum)
    return DsResult(value=value, optimal_hamiltonian=ham, method="qubit_closed_form")


def ds_qubit_qudit(state: BipartiteState, lam: float) -> DsResult:
    """Closed-form discriminating strength for a qubit probe, spectrum {lam, -lam}.

    DS = (1 - xi_max(W)) sin^2(lam); the Chernoff-maximizing rotation axis is
    the top eigenvector of W.
    """
    if state.dim_a != 2:
        raise ContractViolationError(f"qubit probe required, got dim_a={state.dim_a}")
    spectrum = Spectrum.qubit(lam)
    return _qubit_ds_core(state, lam, spectrum)


# ---------------------------------------------------------------------------
# discriminating strength
# ---------------------------------------------------------------------------

def ds_general(state: BipartiteState, spectrum: Spectrum,
               opts: OptimizerOptions | None = None) -> DsResult:
    """Discriminating strength for an arbitrary probe spectrum.

    Qubit probes are routed to the exact closed form unless
    opts.force_general is set; otherwise the Chernoff overlap is maximized
    by the multi-restart Nelder-Mead search.  Deterministic given opts.seed.
    """
    opts = opts if opts is not None else OptimizerOptions()
    if spectrum.dim != state.dim_a:
        raise ValueError(
            f"spectrum of length {spectrum.dim} does not match dim_a={state.dim_a}")
    if state.dim_a == 2 and not opts.force_general:
        lam_eff = 0.5 * (spectrum.lambdas[0] - spectrum.lambdas[1])
        return _qubit_ds_core(state, lam_eff, spectrum)
    # a looser s-minimization is enough while searching (the value error is
    # quadratic in the s error); the reported value is re-evaluated at the
    # full tolerance at the best point
    q_search = _chernoff_objective(state, spectrum, s_tol=1e-6)
    _, best_u = _search_unitary(state.dim_a, q_search, opts, maximize=True)
    best_q = _chernoff_objective(state, spectrum)(best_u)
    value = min(max(1.0 - best_q, 0.0), 1.0)
    return DsResult(value=value,
                    optimal_hamiltonian=LocalHamiltonian(spectrum, best_u),
                    method="general")


def _pad_schmidt(q, dim_a: int) -> np.ndarray:
    q = np.asarray(q, dtype=float).ravel()
    if q.size > dim_a:
        raise ValueError(f"{q.size} Schmidt coefficients for a dim-{dim_a} probe")
    if np.any(q < -1e-12):
        raise ContractViolationError("Schmidt coefficients must be non-negative")
    if abs(q.sum() - 1.0) > 1e-12:
        raise ContractViolationError(f"Schmidt coefficients sum to {q.sum()}, expected 1")
    return np.concatenate([np.clip(q, 0.0, None), np.zeros(dim_a - q.size)])


def _permutation_hamiltonian(perm, spectrum: Spectrum) -> LocalHamiltonian:
    """H whose eigenvector for lambda_k is Schmidt basis vector perm[k]."""
    d = spectrum.dim
    u = np.zeros((d, d), dtype=complex)
    u[np.asarray(perm), np.arange(d)] = 1.0
    return LocalHamiltonian(spectrum, u)


def ds_pure(q, spectrum: Spectrum) -> DsResult:
    """Pure-state discriminating strength 1 - max_perm |sum_k q_perm[k] e^{i lam_k}|^2.

    Exhaustive over permutations of the (zero-padded) Schmidt coefficients;
    capped at probe dimension 9, beyond which ds_general applies.  The
    returned Hamiltonian basis is expressed in the Schmidt basis of A.
    """
    dim_a = spectrum.dim
    if dim_a > PURE_PERMUTATION_CAP:
        raise CapacityError(
            f"permutation search capped at dim {PURE_PERMUTATION_CAP}; use ds_general")
    q = _pad_schmidt(q, dim_a)
    perms = np.array(list(itertools.permutations(range(dim_a))))
    phases = np.exp(1j * spectrum.lambdas)
    amps = q[perms] @ phases
    vals = np.abs(amps) ** 2
    k = int(np.argmax(vals))
    value = min(max(1.0 - float(vals[k]), 0.0), 1.0)
    return DsResult(value=value,
                    optimal_hamiltonian=_permutation_hamiltonian(perms[k], spectrum),
                    method="pure_permutation")


def _harmonic_multipliers(dim_a: int) -> np.ndarray:
    """Zigzag frequency assignment 0, +1, -1, +2, -2, ... by descending weight."""
    j = np.arange(dim_a)
    return ((j + 1) // 2) * np.where(j % 2 == 1, 1, -1)


def ds_pure_harmonic(q, omega: float) -> DsResult:
    """Pure-state DS for an equally spaced spectrum with gap omega.

    For q sorted in descending order the maximizing permutation interleaves
    the weights around frequency zero: q1 -> 0, q2 -> +omega, q3 -> -omega,
    q4 -> +2 omega, ...  Matches ds_pure with Spectrum.harmonic exactly.
    """
    q = np.asarray(q, dtype=float).ravel()
    dim_a = q.size
    if dim_a < 2:
        raise ValueError("need at least two Schmidt slots")
    if np.any(np.diff(q) > 1e-12):
        raise ValueError("Schmidt coefficients must be sorted in descending order")
    if not 0.0 < omega <= 2 * np.pi / dim_a:
        raise ValueError(f"omega={omega} outside (0, 2*pi/{dim_a}]")
    q = _pad_schmidt(q, dim_a)
    mult = _harmonic_multipliers(dim_a)
    amp = np.sum(q * np.exp(1j * mult * omega))
    value = min(max(1.0 - float(abs(amp) ** 2), 0.0), 1.0)
    spectrum = Spectrum.harmonic(dim_a, omega)
    # spectrum index k carries the k-th largest multiplier
    perm = np.argsort(-mult, kind="stable")
    return DsResult(value=value,
                    optimal_hamiltonian=_permutation_hamiltonian(perm, spectrum),
                    method="pure_permutation")


# ---------------------------------------------------------------------------
# skew information and local quantum uncertainty
# ---------------------------------------------------------------------------

def skew_information(rho, h) -> float:
    """Wigner-Yanase skew information Tr[h rho h - sqrt(rho) h sqrt(rho) h]."""
    rho = np.asarray(rho, dtype=complex)
    h = check_hermitian(h, name="observable")
    if rho.shape != h.shape:
        raise ContractViolationError(
            f"dimension mismatch: {rho.shape} vs {h.shape}")
    s = sqrtm(rho)
    t1 = np.einsum("ij,jk,ki->", h, rho, h).real
    sh = s @ h
    t2 = np.einsum("ij,ji->", sh, sh).real
    val = float(t1 - t2)
    if val < -1e-10:
        raise ContractViolationError(f"skew information came out negative: {val}")
    return max(val, 0.0)


def lqu(state: BipartiteState, spectrum: Spectrum,
        opts: OptimizerOptions | None = None) -> float:
    """Local quantum uncertainty: skew information minimized over H = U L U^dagger.

    For a qubit probe this is delta^2 (1 - xi_max(W)) with
    delta = (lambda_1 - lambda_2)/2, the small-rotation limit of the
    discriminating strength; otherwise the shared search harness minimizes.
    """
    opts = opts if opts is not None else OptimizerOptions()
    if spectrum.dim != state.dim_a:
        raise ValueError(
            f"spectrum of length {spectrum.dim} does not match dim_a={state.dim_a}")
    if state.dim_a == 2 and not opts.force_general:
        delta = 0.5 * (spectrum.lambdas[0] - spectrum.lambdas[1])
        wm = w_matrix(state)
        xi_max = min(float(np.linalg.eigvalsh(wm)[-1]), 1.0)
        return max(delta ** 2 * (1.0 - xi_max), 0.0)

    rho_a = partial_trace_b(state.rho, state.dim_a, state.dim_b)
    s = sqrtm(state.rho)
    da, db, d = state.dim_a, state.dim_b, state.dim
    s_blocks = s.reshape(da, db, d)
    lam = spectrum.lambdas

    def skew_of(u: np.ndarray) -> float:
        h = (u * lam) @ u.conj().T
        h2 = (u * lam ** 2) @ u.conj().T
        t1 = np.einsum("ij,ji->", rho_a, h2).real
        k = np.tensordot(h, s_blocks, axes=(1, 0)).reshape(d, d)
        t2 = np.einsum("ij,ji->", k, k).real
        return float(t1 - t2)

    best, _ = _search_unitary(state.dim_a, skew_of, opts, maximize=False)
    return max(best, 0.0)


def lemma1_check(rho, theta, points: int = 101):
    """Grid check that s -> Tr[rho^s theta rho^(1-s) theta] is minimized at s = 1/2.

    Requires full-support rho.  Returns (s_values, f_values, s_argmin) where
    ties are broken toward 1/2.
    """
    w, v = eig_hermitian(rho)
    if w[-1] <= 1e-10:
        raise ValueError("lemma check requires a full-support density matrix")
    theta = check_hermitian(theta, name="theta")
    t = v.conj().T @ theta @ v
    t2 = np.abs(t) ** 2
    s_values = np.linspace(0.0, 1.0, points)
    f_values = np.array([(w ** s) @ t2 @ (w ** (1.0 - s)) for s in s_values])
    fmin = f_values.min()
    near = np.flatnonzero(f_values <= fmin + 1e-12)
    s_argmin = float(s_values[near[np.argmin(np.abs(s_values[near] - 0.5))]])
    return s_values, f_values, s_argmin


def _scaled_spectrum(dim_a: int, lam: float) -> Spectrum:
    if dim_a == 2:
        return Spectrum.qubit(lam)
    return Spectrum.harmonic(dim_a, lam)


def lqu_ds_small_lambda_check(state: BipartiteState, lambdas,
                              opts: OptimizerOptions | None = None):
    """Table of (lambda, DS, LQU, |DS - LQU|) for a shrinking spectrum scale.

    The spectrum used is {lam, -lam} for a qubit probe and the equally
    spaced ladder lam * (..., 1, 0, -1, ...) otherwise, so the gap is
    expected to shrink at least cubically in lam.
    """
    rows = []
    for lam in lambdas:
        spectrum = _scaled_spectrum(state.dim_a, lam)
        ds = ds_general(state, spectrum, opts).value
        u = lqu(state, spectrum, opts)
        rows.append({"lam": float(lam), "ds": ds, "lqu": u, "gap": abs(ds - u)})
    return rows
