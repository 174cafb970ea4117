"""Dense complex linear algebra primitives shared by every module.

Operators are numpy complex128 matrices.  Subspaces are stored as matrices
with orthonormal columns.  Norms are spectral (largest singular value)
throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotAContraction

ORTH_TOL = 1e-12
RANK_TOL = 1e-9


def as_operator(M, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Coerce to a finite 2-d complex128 array, optionally checking the shape."""
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got ndim={A.ndim}")
    if rows is not None and A.shape[0] != rows:
        raise DimensionMismatch(f"expected {rows} rows, got {A.shape[0]}")
    if cols is not None and A.shape[1] != cols:
        raise DimensionMismatch(f"expected {cols} columns, got {A.shape[1]}")
    if A.size and not np.isfinite(A).all():
        raise ValueError("matrix has non-finite entries")
    return A


def operator_norm(M) -> float:
    """Largest singular value; 0.0 for empty matrices."""
    A = as_operator(M)
    if A.size == 0:
        return 0.0
    return float(np.linalg.norm(A, 2))


def is_contraction(M, slack: float = 1e-8) -> bool:
    """True iff operator_norm(M) <= 1 + slack."""
    return operator_norm(M) <= 1.0 + slack


@dataclass(frozen=True)
class Subspace:
    """Subspace of C^ambient_dim given by a matrix with orthonormal columns."""

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        B = as_operator(self.basis, rows=self.ambient_dim)
        object.__setattr__(self, "basis", B)
        if B.shape[1] > self.ambient_dim:
            raise DimensionMismatch("more basis columns than ambient dimensions")
        gram = B.conj().T @ B
        if operator_norm(gram - np.eye(B.shape[1])) > ORTH_TOL:
            raise ValueError("subspace basis is not orthonormal")

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        """Orthogonal projection onto the subspace, as an ambient matrix."""
        return self.basis @ self.basis.conj().T


def orthonormal_range(M, tol: float = RANK_TOL) -> Subspace:
    """Orthonormal basis of the numerical column range of M.

    Singular vectors with sigma > tol * max(1, sigma_max) are kept; the
    max(1, .) floor makes the cutoff absolute for contractions, so ranges
    of near-zero operators collapse to the zero subspace.
    """
    A = as_operator(M)
    if A.shape[1] == 0 or A.shape[0] == 0:
        return Subspace(A.shape[0], np.zeros((A.shape[0], 0)))
    u, s, _ = np.linalg.svd(A, full_matrices=False)
    cutoff = tol * max(1.0, float(s[0]) if s.size else 0.0)
    r = int(np.count_nonzero(s > cutoff))
    return Subspace(A.shape[0], u[:, :r])


def hermitian_sqrt_psd(G) -> np.ndarray:
    """Positive square root of a Hermitian PSD matrix, clamping round-off.

    Eigenvalues at the round-off floor are flushed to exact zeros before
    the square root; otherwise null directions of I - T*T would surface
    as sqrt(eps) ~ 1e-8 noise and pollute downstream rank decisions.
    """
    A = as_operator(G)
    H = (A + A.conj().T) / 2.0
    w, V = np.linalg.eigh(H)
    floor = 64.0 * np.finfo(np.float64).eps * max(1.0, float(w[-1]) if w.size else 0.0)
    w = np.where(w > floor, w, 0.0)
    return (V * np.sqrt(w)) @ V.conj().T


def defect(T, tol: float = RANK_TOL) -> tuple[np.ndarray, Subspace]:
    """Defect operator D = (I - T*T)^(1/2) of a contraction T and its range.

    Parameters
    ----------
    T : array_like
        The contraction; operator_norm(T) <= 1 + tol is required.
    tol : float
        Contraction slack and rank cutoff for the range basis.

    Returns
    -------
    (D, range) : D Hermitian PSD with D^2 = I - T*T, and an orthonormal
        basis of the numerical range of D.
    """
    A = as_operator(T)
    nrm = operator_norm(A)
    if nrm > 1.0 + tol:
        raise NotAContraction(f"operator norm {nrm:.6e} exceeds 1 + {tol:g}")
    n = A.shape[1]
    D = hermitian_sqrt_psd(np.eye(n) - A.conj().T @ A)
    return D, orthonormal_range(D, tol)


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Gaussian, phases fixed."""
    if n == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    M = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(M)
    d = np.diag(r)
    return q * (d / np.abs(np.where(d == 0, 1.0, d)))
