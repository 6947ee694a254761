"""Constructors for the state families with known discriminating strength.

Covers classical-quantum (CQ) states, pure quantum-classical (pQC) ensembles
with their closed-form DS, the B92 / generalized-B92 maximizers, uniform
Bloch-sphere ensembles, quantum-classical qubit pairs, and generic two-qubit
separable ensembles parametrized by Bloch vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    ID2,
    PAULIS,
    bloch_to_ket,
    bloch_to_state,
    check_bloch_vector,
    check_density_matrix,
    kron,
)
from .measures import DsResult, _qubit_direction_hamiltonian
from .types import BipartiteState, Spectrum


@dataclass(frozen=True)
class SeparableEnsemble:
    """Convex mixture sum_j p_j |psi_j><psi_j|_A (x) rho_B_j."""

    weights: np.ndarray
    a_states: np.ndarray          # (N, dim_a) amplitude vectors
    b_states: tuple               # N density matrices on B

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float).ravel()
        object.__setattr__(self, "weights", w)
        a = np.asarray(self.a_states, dtype=complex)
        object.__setattr__(self, "a_states", a)
        object.__setattr__(self, "b_states", tuple(self.b_states))
        if np.any(w <= 0):
            raise ValueError("ensemble weights must be strictly positive")
        if abs(w.sum() - 1.0) > 1e-12:
            raise ValueError(f"ensemble weights sum to {w.sum()}, expected 1")
        if a.shape[0] != w.size or len(self.b_states) != w.size:
            raise ValueError("weights, A states and B states must have equal length")

    @property
    def size(self) -> int:
        return self.weights.size

    def assemble(self) -> BipartiteState:
        dim_a = self.a_states.shape[1]
        dim_b = self.b_states[0].shape[0]
        rho = np.zeros((dim_a * dim_b, dim_a * dim_b), dtype=complex)
        for p, psi, tau in zip(self.weights, self.a_states, self.b_states):
            rho += p * kron(np.outer(psi, psi.conj()), tau)
        return BipartiteState(0.5 * (rho + rho.conj().T), dim_a, dim_b)


@dataclass(frozen=True)
class QcQubitParams:
    """Parameters of a two-qubit quantum-classical state.

    tau_0 = (I + s0 sigma_z)/2 and tau_1 = (I + s1 (sin(phi) sigma_x +
    cos(phi) sigma_z))/2, mixed with weights (p, 1-p) on orthogonal B flags.
    """

    p: float
    s0: float
    s1: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p={self.p} outside [0, 1]")
        if not 0.0 <= self.s0 <= 1.0:
            raise ValueError(f"s0={self.s0} outside [0, 1]")
        if not 0.0 <= self.s1 <= 1.0:
            raise ValueError(f"s1={self.s1} outside [0, 1]")
        if not 0.0 <= self.phi <= math.pi:
            raise ValueError(f"phi={self.phi} outside [0, pi]")


def cq_state(probs, b_states) -> BipartiteState:
    """Classical-quantum state sum_i p_i |i><i| (x) rho_B_i (zero DS)."""
    probs = np.asarray(probs, dtype=float).ravel()
    if probs.size != len(b_states):
        raise ValueError("one B block per probability is required")
    if np.any(probs < 0) or abs(probs.sum() - 1.0) > 1e-12:
        raise ValueError("probabilities must be non-negative and sum to 1")
    dim_a = probs.size
    blocks = [check_density_matrix(b, name=f"b_states[{i}]") for i, b in enumerate(b_states)]
    dim_b = blocks[0].shape[0]
    rho = np.zeros((dim_a * dim_b, dim_a * dim_b), dtype=complex)
    for i, (p, tau) in enumerate(zip(probs, blocks)):
        proj = np.zeros((dim_a, dim_a), dtype=complex)
        proj[i, i] = 1.0
        rho += p * kron(proj, tau)
    return BipartiteState(rho, dim_a, dim_b)


def pqc_state(probs, a_bloch, dim_b: int):
    """Pure quantum-classical ensemble: qubit pure states flagged by an
    orthonormal B basis.  Returns (SeparableEnsemble, BipartiteState)."""
    probs = np.asarray(probs, dtype=float).ravel()
    n = probs.size
    if n > dim_b:
        raise ValueError(f"{n} ensemble members do not fit in dim_b={dim_b}")
    kets = np.stack([bloch_to_ket(r) for r in a_bloch])
    if kets.shape[0] != n:
        raise ValueError("one Bloch vector per probability is required")
    flags = []
    for k in range(n):
        proj = np.zeros((dim_b, dim_b), dtype=complex)
        proj[k, k] = 1.0
        flags.append(proj)
    ens = SeparableEnsemble(weights=probs, a_states=kets, b_states=flags)
    return ens, ens.assemble()


def bloch_second_moment(probs, bloch_vectors) -> np.ndarray:
    """Second-moment matrix M = sum_j p_j r_j r_j^T of an ensemble of axes."""
    probs = np.asarray(probs, dtype=float).ravel()
    r = np.stack([check_bloch_vector(v) for v in bloch_vectors])
    return np.einsum("j,ja,jb->ab", probs, r, r)


def ds_pqc_closed(probs, a_bloch, lam: float) -> DsResult:
    """Closed-form DS of a pQC ensemble: (1 - xi_max(M)) sin^2(lam).

    max_{|n|=1} sum_j p_j (r_j . n)^2 is the Rayleigh quotient of the
    second-moment matrix M, hence its top eigenvalue; the optimal rotation
    axis is the corresponding eigenvector.
    """
    if not 0.0 < lam < math.pi:
        raise ValueError(f"lambda={lam} outside (0, pi)")
    m = bloch_second_moment(probs, a_bloch)
    xi, vecs = np.linalg.eigh(m)
    xi_max = min(float(xi[-1]), 1.0)
    value = max(0.0, (1.0 - xi_max) * math.sin(lam) ** 2)
    ham = _qubit_direction_hamiltonian(vecs[:, -1], Spectrum.qubit(lam))
    return DsResult(value=value, optimal_hamiltonian=ham, method="pqc_closed_form")


GB92_AXES = np.array([[0.0, 0.0, 1.0],   # |0>
                      [1.0, 0.0, 0.0],   # |+>
                      [0.0, 1.0, 0.0]])  # (|0> + i|1>)/sqrt(2)


def gb92_state(p0: float, p1: float, p2: float, dim_b: int = 3) -> BipartiteState:
    """Generalized B92 state: orthonormal Bloch triplet z, x, y on A.

    DS = (1 - max(p0, p1, p2)) sin^2(lam); the equally weighted case
    saturates the separable bound (2/3) sin^2(lam).
    """
    if dim_b < 3:
        raise ValueError(f"dim_b={dim_b} < 3 cannot hold three orthonormal flags")
    probs = np.array([p0, p1, p2], dtype=float)
    if np.any(probs <= 0):
        raise ValueError("GB92 weights must be strictly positive")
    if abs(probs.sum() - 1.0) > 1e-12:
        raise ValueError(f"GB92 weights sum to {probs.sum()}, expected 1")
    _, state = pqc_state(probs, GB92_AXES, dim_b)
    return state


def b92_state() -> BipartiteState:
    """Two-qubit B92 state: (|0><0| (x) |0><0| + |+><+| (x) |1><1|) / 2.

    The maximizer of DS over two-qubit separable states, at (1/2) sin^2(lam).
    """
    _, state = pqc_state([0.5, 0.5], GB92_AXES[:2], 2)
    return state


def _platonic_vertices(d: int) -> np.ndarray | None:
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    if d == 2:
        return np.array([[0, 0, 1.0], [0, 0, -1.0]])
    if d == 3:
        ang = 2.0 * np.pi * np.arange(3) / 3.0
        return np.stack([np.cos(ang), np.sin(ang), np.zeros(3)], axis=1)
    if d == 4:
        v = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)
        return v / math.sqrt(3.0)
    if d == 6:
        return np.array([[1, 0, 0], [-1, 0, 0], [0, 1, 0],
                         [0, -1, 0], [0, 0, 1], [0, 0, -1]], dtype=float)
    if d == 8:
        signs = np.array([[sx, sy, sz] for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)],
                         dtype=float)
        return signs / math.sqrt(3.0)
    if d == 12:
        base = []
        for s1 in (1, -1):
            for s2 in (1, -1):
                base += [[0, s1, s2 * phi], [s1, s2 * phi, 0], [s2 * phi, 0, s1]]
        v = np.array(base, dtype=float)
        return v / np.linalg.norm(v[0])
    if d == 20:
        cube = np.array([[sx, sy, sz] for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)],
                        dtype=float)
        rest = []
        for s1 in (1, -1):
            for s2 in (1, -1):
                rest += [[0, s1 / phi, s2 * phi], [s1 / phi, s2 * phi, 0],
                         [s2 * phi, 0, s1 / phi]]
        v = np.vstack([cube, np.array(rest, dtype=float)])
        return v / math.sqrt(3.0)
    return None


def fibonacci_sphere(d: int) -> np.ndarray:
    """d roughly uniform unit vectors from the golden-angle spiral."""
    k = np.arange(d, dtype=float)
    z = 1.0 - (2.0 * k + 1.0) / d
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    golden_angle = math.pi * (3.0 - math.sqrt(5.0))
    ang = golden_angle * k
    return np.stack([r * np.cos(ang), r * np.sin(ang), z], axis=1)


def uniform_bloch_axes(d: int) -> np.ndarray:
    """Uniformly spread Bloch axes: exact polyhedron vertices where one
    exists for d, golden-spiral points otherwise."""
    if d < 2:
        raise ValueError("need at least 2 directions")
    v = _platonic_vertices(d)
    return v if v is not None else fibonacci_sphere(d)


def uniform_pqc(d: int, dim_b: int | None = None):
    """Uniform pQC ensemble of d pure qubit states on evenly spread axes.

    Its normalized DS approaches 2/3 as d grows; the octahedron case d=6
    reaches it exactly.  Returns (SeparableEnsemble, BipartiteState).
    """
    dim_b = d if dim_b is None else dim_b
    if dim_b < d:
        raise ValueError(f"dim_b={dim_b} cannot flag {d} ensemble members")
    axes = uniform_bloch_axes(d)
    probs = np.full(d, 1.0 / d)
    return pqc_state(probs, axes, dim_b)


def qc_qubit_qubit(params: QcQubitParams) -> BipartiteState:
    """Quantum-classical two-qubit state p tau_0 (x) |0><0| + (1-p) tau_1 (x) |1><1|."""
    tau0 = bloch_mixed(params.s0, np.array([0.0, 0.0, 1.0]))
    tau1 = bloch_mixed(params.s1,
                       np.array([math.sin(params.phi), 0.0, math.cos(params.phi)]))
    flag0 = np.diag([1.0, 0.0]).astype(complex)
    flag1 = np.diag([0.0, 1.0]).astype(complex)
    rho = params.p * kron(tau0, flag0) + (1.0 - params.p) * kron(tau1, flag1)
    return BipartiteState(rho, 2, 2)


def bloch_mixed(s: float, axis) -> np.ndarray:
    """Qubit state (I + s axis . sigma)/2 with Bloch length 0 <= s <= 1."""
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"Bloch length {s} outside [0, 1]")
    axis = check_bloch_vector(axis)
    return 0.5 * (ID2 + s * (axis[0] * PAULIS[0] + axis[1] * PAULIS[1] + axis[2] * PAULIS[2]))


def ds_qc_closed(params: QcQubitParams, lam: float) -> DsResult:
    """Closed-form DS of a two-qubit QC state: f_W sin^2(lam) / 2.

    The four independent entries of W follow from sqrt(tau_i) in closed form;
    f_W = 1 - W22 - sqrt((W11 - W33)^2 + 4 W13^2), clipped at 0.
    """
    if not 0.0 < lam < math.pi:
        raise ValueError(f"lambda={lam} outside (0, pi)")
    p, s0, s1, phi = params.p, params.s0, params.s1, params.phi
    r0 = math.sqrt(max(1.0 - s0 * s0, 0.0))
    r1 = math.sqrt(max(1.0 - s1 * s1, 0.0))
    c2 = math.cos(2.0 * phi)
    w22 = p * r0 + (1.0 - p) * r1
    w11 = p * r0 + 0.5 * (1.0 - p) * ((1.0 - c2) + r1 * (1.0 + c2))
    w13 = (1.0 - p) * (1.0 - r1) * math.sin(phi) * math.cos(phi)
    w33 = 0.5 * (1.0 + p) + 0.5 * (1.0 - p) * (c2 + r1 * (1.0 - c2))
    hyp = math.hypot(w11 - w33, 2.0 * w13)
    f_w = 1.0 - w22 - hyp
    value = max(f_w, 0.0) * math.sin(lam) ** 2 / 2.0
    # top eigenvector of W lies in the 1-3 plane spanned by sigma_x, sigma_z
    if hyp > 1e-14:
        xi_plus = 0.5 * (w11 + w33) + 0.5 * hyp
        vec = np.array([w13, 0.0, xi_plus - w11])
        if np.linalg.norm(vec) < 1e-14:
            vec = np.array([xi_plus - w33, 0.0, w13])
        n_hat = vec / np.linalg.norm(vec)
    else:
        n_hat = np.array([0.0, 0.0, 1.0])
    ham = _qubit_direction_hamiltonian(n_hat, Spectrum.qubit(lam))
    return DsResult(value=value, optimal_hamiltonian=ham, method="qubit_closed_form")


def separable_ensemble(probs, a_bloch, b_bloch) -> BipartiteState:
    """Two-qubit separable state sum_j p_j (I + u_j.sigma)/2 (x) (I + v_j.sigma)/2.

    Up to four strictly positive weights; every two-qubit separable state
    admits such a decomposition.
    """
    probs = np.asarray(probs, dtype=float).ravel()
    n = probs.size
    if not 1 <= n <= 4:
        raise ValueError(f"ensemble size {n} outside 1..4")
    a_kets = np.stack([bloch_to_ket(u) for u in a_bloch])
    b_blocks = [bloch_to_state(v) for v in b_bloch]
    if a_kets.shape[0] != n or len(b_blocks) != n:
        raise ValueError("one A and one B Bloch vector per weight is required")
    ens = SeparableEnsemble(weights=probs, a_states=a_kets, b_states=b_blocks)
    return ens.assemble()


def probability_simplex_from_angles(angles) -> np.ndarray:
    """Normalized non-decreasing weights from 1..3 angles in (0, pi/4].

    Two weights:   {sin a, cos a};
    three weights: {sin a sin b, sin a cos b, cos a};
    four weights:  {sin a sin b sin g, sin a sin b cos g, sin a cos b, cos a}.
    """
    angles = np.asarray(angles, dtype=float).ravel()
    if not 1 <= angles.size <= 3:
        raise ValueError("expected 1, 2 or 3 angles")
    if np.any(angles <= 0) or np.any(angles > math.pi / 4 + 1e-15):
        raise ValueError("angles must lie in (0, pi/4]")
    if angles.size == 1:
        a = angles[0]
        raw = np.array([math.sin(a), math.cos(a)])
    elif angles.size == 2:
        a, b = angles
        raw = np.array([math.sin(a) * math.sin(b),
                        math.sin(a) * math.cos(b),
                        math.cos(a)])
    else:
        a, b, g = angles
        raw = np.array([math.sin(a) * math.sin(b) * math.sin(g),
                        math.sin(a) * math.sin(b) * math.cos(g),
                        math.sin(a) * math.cos(b),
                        math.cos(a)])
    return raw / raw.sum()
