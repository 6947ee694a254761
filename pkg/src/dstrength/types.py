"""Core domain types: bipartite states, Hamiltonian spectra, local Hamiltonians."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    ContractViolationError,
    check_density_matrix,
    check_unitary,
)


@dataclass(frozen=True)
class BipartiteState:
    """A density matrix on A (x) B together with the factor dimensions."""

    rho: np.ndarray
    dim_a: int
    dim_b: int

    def __post_init__(self):
        rho = check_density_matrix(self.rho)
        object.__setattr__(self, "rho", rho)
        if self.dim_a < 2 or self.dim_b < 1:
            raise ContractViolationError(
                f"need dim_a >= 2 and dim_b >= 1, got ({self.dim_a}, {self.dim_b})")
        if self.dim_a * self.dim_b != rho.shape[0]:
            raise ContractViolationError(
                f"dims ({self.dim_a}, {self.dim_b}) do not match matrix size {rho.shape[0]}")

    @property
    def dim(self) -> int:
        return self.dim_a * self.dim_b

    def purity(self) -> float:
        return float(np.trace(self.rho @ self.rho).real)

    def is_pure(self, tol: float = 1e-10) -> bool:
        return self.purity() >= 1.0 - tol


@dataclass(frozen=True)
class Spectrum:
    """Fixed non-degenerate eigenvalue list of the encoding Hamiltonian.

    Strictly decreasing, with spread lambda_1 - lambda_d < 2*pi.
    """

    lambdas: np.ndarray

    def __post_init__(self):
        lam = np.asarray(self.lambdas, dtype=float).ravel()
        object.__setattr__(self, "lambdas", lam)
        if lam.size < 1:
            raise ValueError("spectrum must be non-empty")
        if lam.size > 1 and not np.all(np.diff(lam) < 0):
            raise ValueError("spectrum must be non-degenerate and strictly decreasing")
        if lam[0] - lam[-1] >= 2 * np.pi:
            raise ValueError("spectrum spread must be below 2*pi")

    @property
    def dim(self) -> int:
        return self.lambdas.size

    def shifted(self, b: float) -> "Spectrum":
        return Spectrum(self.lambdas + b)

    @classmethod
    def qubit(cls, lam: float) -> "Spectrum":
        """The gauge {lam, -lam} used for qubit probes; requires 0 < lam < pi."""
        if not 0.0 < lam < np.pi:
            raise ValueError(f"lambda={lam} outside (0, pi)")
        return cls(np.array([lam, -lam]))

    @classmethod
    def harmonic(cls, dim: int, omega: float) -> "Spectrum":
        """Equally spaced ladder with gap omega, centred so the entries sum to 0."""
        if dim < 2:
            raise ValueError("harmonic spectrum needs dim >= 2")
        if not 0.0 < omega <= 2 * np.pi / dim:
            raise ValueError(f"omega={omega} outside (0, 2*pi/{dim}]")
        k = np.arange(dim, dtype=float)
        return cls(omega * (k - (dim - 1) / 2.0)[::-1])


@dataclass(frozen=True)
class LocalHamiltonian:
    """H = U diag(spectrum) U^dagger acting on the A factor only."""

    spectrum: Spectrum
    basis: np.ndarray = field(default=None)

    def __post_init__(self):
        basis = self.basis
        if basis is None:
            basis = np.eye(self.spectrum.dim, dtype=complex)
        basis = check_unitary(basis, name="basis")
        if basis.shape[0] != self.spectrum.dim:
            raise ContractViolationError(
                f"basis of size {basis.shape[0]} does not match spectrum of "
                f"size {self.spectrum.dim}")
        object.__setattr__(self, "basis", basis)

    @property
    def dim(self) -> int:
        return self.spectrum.dim

    def matrix(self) -> np.ndarray:
        u = self.basis
        return (u * self.spectrum.lambdas) @ u.conj().T

    def rotation(self) -> np.ndarray:
        """The unitary exp(i H) = U diag(e^{i lambda}) U^dagger."""
        u = self.basis
        return (u * np.exp(1j * self.spectrum.lambdas)) @ u.conj().T
