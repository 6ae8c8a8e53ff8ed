"""Small dense linear algebra for 4x4 complex and 3x3 real matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonHermitian

HERMITIAN_TOL = 1e-12


def _as_square(m, n: int, dtype) -> np.ndarray:
    arr = np.asarray(m, dtype=dtype)
    if arr.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def hermiticity_residual(m) -> float:
    """Largest entrywise deviation ``max |m - m^dagger|``."""
    arr = np.asarray(m, dtype=complex)
    return float(np.max(np.abs(arr - arr.conj().T)))


def hermitian_eigenvalues(m, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Ascending real eigenvalues of a Hermitian 4x4 matrix.

    The input is symmetrized as ``(m + m^dagger)/2`` before the solve so that
    round-off asymmetry below ``tol`` does not leak into the spectrum.
    """
    arr = _as_square(m, 4, complex)
    residual = hermiticity_residual(arr)
    if residual > tol:
        raise NonHermitian(f"matrix is not Hermitian: max|m - m^dagger| = {residual:.3e} > {tol:.0e}")
    return np.linalg.eigvalsh(0.5 * (arr + arr.conj().T))


def trace_norm(m) -> float:
    """Schatten 1-norm ``Tr sqrt(m^dagger m)``, i.e. the sum of singular values."""
    arr = _as_square(m, 4, complex)
    if hermiticity_residual(arr) <= HERMITIAN_TOL:
        return float(np.sum(np.abs(hermitian_eigenvalues(arr))))
    return float(np.sum(np.linalg.svd(arr, compute_uv=False)))


@dataclass(frozen=True)
class SignedSVD:
    """``g = o.T @ diag(gamma) @ omega`` with ``o, omega`` proper rotations."""

    o: np.ndarray
    omega: np.ndarray
    gamma: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return self.o.T @ np.diag(self.gamma) @ self.omega


def signed_svd_so3(g) -> SignedSVD:
    """Decompose a real 3x3 matrix with both factors in SO(3).

    A plain SVD gives ``g = U diag(s) V^T`` with ``U, V`` in O(3). Each factor
    with determinant -1 has its third singular direction reversed, and the
    sign is pushed onto the third diagonal entry instead. The result is
    sorted ``|gamma_1| >= |gamma_2| >= |gamma_3|``.
    """
    arr = _as_square(g, 3, float)
    u, s, vt = np.linalg.svd(arr)
    o = u.T.copy()
    omega = vt.copy()
    gamma = s.astype(float).copy()
    if np.linalg.det(o) < 0:
        o[2] *= -1.0
        gamma[2] *= -1.0
    if np.linalg.det(omega) < 0:
        omega[2] *= -1.0
        gamma[2] *= -1.0
    o.setflags(write=False)
    omega.setflags(write=False)
    gamma.setflags(write=False)
    return SignedSVD(o=o, omega=omega, gamma=gamma)


def cross(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return np.array([
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ])


def dot(a, b) -> float:
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return float(a[0] * b[0] + a[1] * b[1] + a[2] * b[2])
