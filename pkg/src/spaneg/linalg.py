"""Dense complex linear algebra helpers for 2x2 and 4x4 operators.

Everything here is a pure function of its arguments.  Matrices are plain
complex numpy arrays; the basis order for 4x4 operators is
|00>, |01>, |10>, |11>.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# Centralized tolerance constants.
VALIDATE_TOL = 1e-9
RESIDUAL_TOL = 1e-10
PSD_CLAMP = 1e-10

SIGMA_0 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (SIGMA_0, SIGMA_X, SIGMA_Y, SIGMA_Z)


class DimensionError(ValueError):
    """Input matrix has the wrong shape for the requested operation."""


class NotHermitianError(ValueError):
    """Input matrix deviates from Hermitian beyond tolerance."""


class NotPsdError(ValueError):
    """Input matrix has an eigenvalue below the PSD clamp tolerance."""


def _as_square(m, dims=(2, 4)) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] not in dims:
        raise DimensionError(f"expected dimension in {dims}, got {m.shape[0]}")
    return m


def hermiticity_defect(m) -> float:
    """Max-entry deviation from Hermitian symmetry, ||M - M^dag||_max."""
    m = np.asarray(m, dtype=complex)
    return float(np.abs(m - m.conj().T).max())


@dataclass(frozen=True)
class Spectrum:
    """Full eigensystem of a Hermitian matrix.

    eigenvalues are real and sorted ascending; eigenvectors[:, i] is the
    orthonormal eigenvector paired with eigenvalues[i].
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    @property
    def min_eigenvalue(self) -> float:
        return float(self.eigenvalues[0])

    @property
    def min_eigenvector(self) -> np.ndarray:
        return self.eigenvectors[:, 0]


def kron(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 operators in the |00>,|01>,|10>,|11> basis."""
    a = _as_square(a, dims=(2,))
    b = _as_square(b, dims=(2,))
    return np.kron(a, b)


def partial_transpose_b(m) -> np.ndarray:
    """Transpose the B-subsystem indices of a 4x4 bipartite operator.

    Involutive and trace-preserving; maps Hermitian to Hermitian.  Positive
    but not completely positive as a map, hence the need for its structural
    physical approximation downstream.
    """
    m = _as_square(m, dims=(4,))
    return m.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def partial_trace(m, subsystem: str) -> np.ndarray:
    """Trace out one qubit of a 4x4 operator; subsystem is "A" or "B"."""
    m = _as_square(m, dims=(4,))
    t = m.reshape(2, 2, 2, 2)
    if subsystem == "A":
        return np.einsum("ijik->jk", t)
    if subsystem == "B":
        return np.einsum("ijkj->ik", t)
    raise ValueError(f"subsystem must be 'A' or 'B', got {subsystem!r}")


def herm_eigen(m) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix.

    Raises NotHermitianError if ||M - M^dag||_max exceeds VALIDATE_TOL; the
    error message names the measured asymmetry.  The strictly Hermitian part
    is diagonalized, so residuals stay at machine precision.
    """
    m = _as_square(m)
    defect = hermiticity_defect(m)
    if defect > VALIDATE_TOL:
        raise NotHermitianError(
            f"matrix is not Hermitian: max asymmetry {defect:.3e} exceeds {VALIDATE_TOL:.0e}"
        )
    w, v = np.linalg.eigh((m + m.conj().T) / 2)
    return Spectrum(eigenvalues=w, eigenvectors=v)


def psd_sqrt(m) -> np.ndarray:
    """Hermitian PSD square root S with S @ S == M up to 1e-9.

    Eigenvalues in [-PSD_CLAMP, 0) are clamped to zero; anything lower
    raises NotPsdError.
    """
    spec = herm_eigen(m)
    w = spec.eigenvalues
    if w[0] < -PSD_CLAMP:
        raise NotPsdError(
            f"matrix is not PSD: minimum eigenvalue {w[0]:.3e} below -{PSD_CLAMP:.0e}"
        )
    v = spec.eigenvectors
    s = np.sqrt(np.maximum(w, 0.0))
    return (v * s) @ v.conj().T
