"""Schur-class functions via contractive colligations.

A realization (A, B, C, D) with contractive colligation [[A, B], [C, D]]
defines Z(lambda) = D + lambda C (I - lambda A)^-1 B, a holomorphic
contraction-valued function on the open unit disk.  Constrained
completions generate the Schur parameters used by the interpolation
solvers: a block row [omega, K] is a contraction exactly when
K = D_{omega*} X with X a contraction into the defect space of omega*,
which turns "Z with Z|_F = omega" into a free choice of X.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, DomainError, NotAContraction, SingularResolvent
from .linalg import (as_operator, defect, hermitian_sqrt_psd, operator_norm,
                     orthonormal_range)

COLLIGATION_SLACK = 1e-10
RESOLVENT_COND_MAX = 1e12


@dataclass(frozen=True)
class SchurRealization:
    """Colligation data (A, B, C, D) with [[A, B], [C, D]] contractive."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        A = as_operator(self.A)
        if A.shape[0] != A.shape[1]:
            raise DimensionMismatch("state matrix must be square")
        n = A.shape[0]
        D = as_operator(self.D)
        B = as_operator(self.B, rows=n, cols=D.shape[1])
        C = as_operator(self.C, rows=D.shape[0], cols=n)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "D", D)
        nrm = operator_norm(self.colligation())
        if nrm > 1.0 + COLLIGATION_SLACK:
            raise NotAContraction(f"colligation norm {nrm:.6e} exceeds 1")
        if operator_norm(A) > 1.0 + COLLIGATION_SLACK:
            raise NotAContraction("state matrix norm exceeds 1")

    @property
    def state_dim(self) -> int:
        return self.A.shape[0]

    @property
    def in_dim(self) -> int:
        return self.D.shape[1]

    @property
    def out_dim(self) -> int:
        return self.D.shape[0]

    def colligation(self) -> np.ndarray:
        top = np.hstack([self.A, self.B])
        bot = np.hstack([self.C, self.D])
        return np.vstack([top, bot])

    def eval(self, lam: complex) -> np.ndarray:
        """Z(lambda) = D + lambda C (I - lambda A)^-1 B on the open disk."""
        lam = complex(lam)
        if abs(lam) >= 1.0:
            raise DomainError(f"|lambda| = {abs(lam):.6f} is not < 1")
        if self.state_dim == 0:
            return self.D.copy()
        n = self.state_dim
        res = np.linalg.solve(np.eye(n) - lam * self.A, self.B)
        return self.D + lam * (self.C @ res)

    def taylor(self, n: int) -> np.ndarray:
        """Taylor coefficient: D for n = 0, C A^(n-1) B for n >= 1."""
        if n < 0:
            raise ValueError("negative Taylor index")
        if n == 0:
            return self.D.copy()
        if self.state_dim == 0:
            return np.zeros((self.out_dim, self.in_dim), dtype=np.complex128)
        return self.C @ np.linalg.matrix_power(self.A, n - 1) @ self.B


def taylor_coeffs(fn, N: int) -> list:
    """First N+1 Taylor coefficients of an analytic operator function."""
    if isinstance(fn, SchurRealization):
        coeffs = [fn.taylor(0)]
        if fn.state_dim == 0:
            zero = np.zeros((fn.out_dim, fn.in_dim), dtype=np.complex128)
            coeffs.extend(zero for _ in range(N))
        else:
            P = fn.B.copy()
            for _ in range(N):
                coeffs.append(fn.C @ P)
                P = fn.A @ P
        return coeffs
    return [fn.taylor(k) for k in range(N + 1)]


def random_schur(out_dim: int, in_dim: int, state_dim: int, seed: int,
                 scale: float = 1.0, isometric: bool = False) -> SchurRealization:
    """Seeded random realization with colligation norm <= scale.

    The draw is a complex Gaussian matrix divided by max(1, sigma_max);
    with isometric=True the colligation is replaced by the Q factor of
    the draw (or a coisometry when the shape forces it), giving boundary
    cases with colligation norm exactly 1 before scaling.
    """
    rng = np.random.default_rng(seed)
    rows, cols = state_dim + out_dim, state_dim + in_dim
    M = (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols)))
    M /= np.sqrt(2.0)
    if isometric:
        if rows >= cols:
            q, r = np.linalg.qr(M)
            q = q * np.sign(np.where(np.diag(r).real == 0, 1.0, np.diag(r).real))
            M = q
        else:
            q, r = np.linalg.qr(M.conj().T)
            q = q * np.sign(np.where(np.diag(r).real == 0, 1.0, np.diag(r).real))
            M = q.conj().T
    else:
        M = M / max(1.0, operator_norm(M))
    M = scale * M
    n = state_dim
    return SchurRealization(M[:n, :n], M[:n, n:], M[n:, :n], M[n:, n:])


def constrained_completion(problem, X: SchurRealization | None = None) -> SchurRealization:
    """Schur function Z with Z(lambda)|_F = omega, parameterized by X.

    On U = F + F_perp the completion acts as
    Z(lambda)(f + g) = omega f + D_{omega*} X(lambda) g, realized as one
    contractive colligation.  X must map F_perp coordinates into the
    defect space of omega*; X=None means X identically zero.  The
    restriction to F equals omega exactly, for every lambda.
    """
    u, y, f = problem.U_dim, problem.Y_dim, problem.F.dim
    om = problem.omega
    Dstar = hermitian_sqrt_psd(np.eye(y + u) - om @ om.conj().T)
    Vd = orthonormal_range(Dstar).basis
    d = Vd.shape[1]
    Fb = problem.F.basis
    comp = orthonormal_range(np.eye(u) - Fb @ Fb.conj().T).basis
    g = comp.shape[1]
    if X is None:
        zero = np.zeros((0, 0))
        X = SchurRealization(zero, np.zeros((0, g)), np.zeros((d, 0)), np.zeros((d, g)))
    if X.in_dim != g or X.out_dim != d:
        raise DimensionMismatch(
            f"X must be {d} x {g} valued (defect of omega* x complement of F), "
            f"got {X.out_dim} x {X.in_dim}")
    Mcol = Dstar @ Vd
    A = X.A
    B = X.B @ comp.conj().T
    C = Mcol @ X.C
    D = om @ Fb.conj().T + Mcol @ X.D @ comp.conj().T
    return SchurRealization(A, B, C, D)


def herglotz_eval(Cfun, lam: complex) -> np.ndarray:
    """(I + lambda C(lambda)) (I - lambda C(lambda))^-1 for Schur-class C.

    Equals I at lambda = 0 and has positive semidefinite Hermitian part on
    the disk.  Raises SingularResolvent when I - lambda C(lambda) is
    numerically singular.
    """
    lam = complex(lam)
    if abs(lam) >= 1.0:
        raise DomainError(f"|lambda| = {abs(lam):.6f} is not < 1")
    V = lam * Cfun.eval(lam)
    d = V.shape[0]
    if V.shape[0] != V.shape[1]:
        raise DimensionMismatch("herglotz_eval needs a square-valued function")
    if d == 0:
        return np.zeros((0, 0), dtype=np.complex128)
    A = np.eye(d) - V
    s = np.linalg.svd(A, compute_uv=False)
    # guard on the inverse norm, not cond: a 1x1 [[eps]] has cond 1
    if s[-1] * RESOLVENT_COND_MAX < max(1.0, float(s[0])):
        raise SingularResolvent("I - lambda*C(lambda) is numerically singular")
    # right-divide: (I + V) A^-1 solved as A^T X^T = (I + V)^T
    return np.linalg.solve(A.T, (np.eye(d) + V).T).T
