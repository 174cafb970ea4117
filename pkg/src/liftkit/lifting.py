"""Constrained interpolation in the truncated Hardy space.

The data is a contraction omega = [omega1; omega2] from a subspace F of
the input space U into Y + U.  A solution is a contractive column
Gamma: U -> H^2(Y), with defining function H, such that

    H_0|_F = omega1   and   H_n|_F = H_(n-1) omega2  for n >= 1.

Solutions are produced from Schur-class parameters Z in S(U, Y + U)
satisfying Z(lambda)|_F = omega via the linear-fractional formula

    H(lambda) = P_Y Z(lambda) (I - lambda P_U Z(lambda))^-1,

computed here as a Taylor recursion.  The fiber of parameters over one
solution is indexed by Schur-class functions C on the defect space of
Gamma whose restriction to F_Gamma = closure(D_Gamma F) equals the
extracted contraction Omega; z_from_C maps a fiber member back to a
parameter through the positive-real factor

    W(lambda) = Gamma* (I + lambda S*)(I - lambda S*)^-1 Gamma
                + D_Gamma (I + lambda C(lambda))(I - lambda C(lambda))^-1 D_Gamma,

with Z_C = [2 H (W+I)^-1 ; lambda^-1 (W-I)(W+I)^-1] and the lambda^-1
realized as a Taylor-coefficient shift (W(0) = I is asserted, never
divided by).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (ConstraintViolated, DimensionMismatch, NotAContraction,
                     NotASolution, SingularResolvent, WNotNormalizedAtZero)
from .hardy import AnalyticFn, PolyOpFn, column_operator, default_grid
from .linalg import (RANK_TOL, Subspace, as_operator, hermitian_sqrt_psd,
                     operator_norm, orthonormal_range)
from .schur import (SchurRealization, constrained_completion, herglotz_eval,
                    random_schur, taylor_coeffs)

W_ZERO_TOL = 1e-8
W_COND_MAX = 1e10


@dataclass(frozen=True)
class InterpolationProblem:
    """Interpolation data: a contraction omega from F < C^U_dim into C^(Y+U)."""

    U_dim: int
    Y_dim: int
    F: Subspace
    omega1: np.ndarray
    omega2: np.ndarray

    def __post_init__(self):
        if self.F.ambient_dim != self.U_dim:
            raise DimensionMismatch("F must live in the input space")
        f = self.F.dim
        om1 = as_operator(self.omega1, rows=self.Y_dim, cols=f)
        om2 = as_operator(self.omega2, rows=self.U_dim, cols=f)
        object.__setattr__(self, "omega1", om1)
        object.__setattr__(self, "omega2", om2)
        nrm = operator_norm(self.omega)
        if nrm > 1.0 + 1e-10:
            raise NotAContraction(f"omega has norm {nrm:.6e}")

    @property
    def omega(self) -> np.ndarray:
        return np.vstack([self.omega1, self.omega2])


@dataclass(frozen=True)
class SolutionReport:
    """Residuals of a candidate solution; reporting never throws."""

    recurrence_residual: float
    partial_gram_excess: float
    grid_sup_norm: float
    degree: int

    def ok(self, tol_recurrence: float = 1e-9, tol_gram: float = 1e-8) -> bool:
        return (self.recurrence_residual <= tol_recurrence
                and self.partial_gram_excess <= tol_gram)


def solve_from_Z(p: InterpolationProblem, Z, N: int, grid=None,
                 constraint_tol: float = 1e-8) -> PolyOpFn:
    """Taylor coefficients H_0..H_N of the solution attached to Z.

    Z may be any analytic operator function exposing eval/taylor with
    in_dim = U and out_dim = Y + U; its restriction to F is checked
    against omega on the sample grid before solving.  The recursion is

        G_0 = I,  G_k = sum_(j<k) (P_U Z)_(k-1-j) G_j,
        H_n = sum_(k<=n) (P_Y Z)_(n-k) G_k.
    """
    u, y = p.U_dim, p.Y_dim
    if Z.in_dim != u or Z.out_dim != y + u:
        raise DimensionMismatch(
            f"Z must map C^{u} into C^{y + u}, got {Z.out_dim} x {Z.in_dim}")
    if grid is None:
        grid = default_grid(max(N, 4))
    if p.F.dim > 0:
        om, Fb = p.omega, p.F.basis
        worst = max(operator_norm(Z.eval(z) @ Fb - om) for z in grid.points)
        if worst > constraint_tol:
            raise ConstraintViolated(
                f"Z|_F differs from omega by {worst:.3e} on the grid")
    Zc = taylor_coeffs(Z, N)
    Zy = [c[:y, :] for c in Zc]
    Zu = [c[y:, :] for c in Zc]
    G = [np.eye(u, dtype=np.complex128)]
    for k in range(1, N + 1):
        acc = np.zeros((u, u), dtype=np.complex128)
        for j in range(k):
            acc += Zu[k - 1 - j] @ G[j]
        G.append(acc)
    H = []
    for n in range(N + 1):
        acc = np.zeros((y, u), dtype=np.complex128)
        for k in range(n + 1):
            acc += Zy[n - k] @ G[k]
        H.append(acc)
    return PolyOpFn(y, u, tuple(H), column_bound=1.0)


def verify_solution(p: InterpolationProblem, H: PolyOpFn, N: int,
                    tol: float = 1e-9, grid=None) -> SolutionReport:
    """Residuals of the coefficient recurrence and the partial Gram bound.

    tol is not used to fail the call (reports never throw); it is the
    default threshold of SolutionReport.ok.
    """
    del tol
    if H.in_dim != p.U_dim or H.out_dim != p.Y_dim:
        raise DimensionMismatch("H has wrong dimensions for this problem")
    rec = 0.0
    if p.F.dim > 0:
        Fb = p.F.basis
        rec = operator_norm(H.coeff(0) @ Fb - p.omega1)
        for n in range(1, N + 1):
            r = operator_norm(H.coeff(n) @ Fb - H.coeff(n - 1) @ p.omega2)
            rec = max(rec, r)
    gram = np.zeros((p.U_dim, p.U_dim), dtype=np.complex128)
    for n in range(N + 1):
        c = H.coeff(n)
        gram += c.conj().T @ c
    eig = np.linalg.eigvalsh((gram + gram.conj().T) / 2.0)
    excess = max(0.0, float(eig[-1]) - 1.0) if eig.size else 0.0
    if grid is None:
        grid = default_grid(max(N, 4))
    sup = max(operator_norm(H.eval(z)) for z in grid.points)
    return SolutionReport(recurrence_residual=float(rec),
                          partial_gram_excess=float(excess),
                          grid_sup_norm=float(sup), degree=N)


class GammaData(NamedTuple):
    D: np.ndarray
    defect_basis: np.ndarray
    F_gamma: Subspace
    Omega: np.ndarray
    residual: float


def _gamma_data(p: InterpolationProblem, Gamma, tol: float) -> GammaData:
    """Defect data of a solution column and the extracted corner Omega.

    Omega is the contraction F_Gamma -> defect(Gamma) determined by
    Omega D_Gamma|_F = D_Gamma omega2; coordinates are with respect to
    the SVD bases of F_Gamma and of the defect range.
    """
    G = as_operator(Gamma, cols=p.U_dim)
    if G.shape[0] % max(p.Y_dim, 1) != 0 and p.Y_dim > 0:
        raise DimensionMismatch("Gamma rows are not a multiple of Y_dim")
    nrm = operator_norm(G)
    if nrm > 1.0 + max(tol, 1e-12):
        raise NotASolution(f"candidate column has norm {nrm:.6e}")
    u = p.U_dim
    D = hermitian_sqrt_psd(np.eye(u) - G.conj().T @ G)
    Bd = orthonormal_range(D, RANK_TOL).basis
    FG = orthonormal_range(D @ p.F.basis, RANK_TOL)
    Bf = FG.basis
    d, r, f = Bd.shape[1], Bf.shape[1], p.F.dim
    if f == 0 or r == 0:
        Om = np.zeros((d, r), dtype=np.complex128)
        res = operator_norm(D @ p.omega2)
    else:
        lhs = Bf.conj().T @ (D @ p.F.basis)
        rhs = Bd.conj().T @ (D @ p.omega2)
        Om = np.linalg.lstsq(lhs.T, rhs.T, rcond=None)[0].T
        res = operator_norm(Bd @ (Om @ lhs) - D @ p.omega2)
    scale = max(1.0, operator_norm(D @ p.omega2))
    if res > max(1e-9, tol) * scale:
        raise NotASolution(
            f"defining identity for Omega has residual {res:.3e}")
    if operator_norm(Om) > 1.0 + max(tol, 1e-10):
        raise NotASolution(f"extracted Omega has norm {operator_norm(Om):.6e}")
    return GammaData(D=D, defect_basis=Bd, F_gamma=FG, Omega=Om, residual=float(res))


def omega_hat(p: InterpolationProblem, Gamma, tol: float = 1e-8):
    """Extracted contraction Omega on F_Gamma = closure(D_Gamma F).

    Returns (Omega, F_Gamma).  Omega is written with respect to the SVD
    bases of F_Gamma and of the defect range of Gamma (both recomputable
    deterministically from Gamma).
    """
    gd = _gamma_data(p, Gamma, tol)
    return gd.Omega, gd.F_gamma


def central_C(p: InterpolationProblem, Gamma, tol: float = 1e-8) -> SchurRealization:
    """The constant fiber member C = Omega P_(F_Gamma) on the defect space."""
    gd = _gamma_data(p, Gamma, tol)
    Cmat = gd.Omega @ (gd.F_gamma.basis.conj().T @ gd.defect_basis)
    nrm = operator_norm(Cmat)
    if nrm > 1.0:
        # round-off can push the extracted corner a hair over 1
        Cmat = Cmat / nrm
    d = gd.defect_basis.shape[1]
    return SchurRealization(np.zeros((0, 0)), np.zeros((0, d)),
                            np.zeros((d, 0)), Cmat)


def parameter_membership(Cfun, p: InterpolationProblem, Gamma,
                         tol: float = 1e-8, grid=None) -> bool:
    """True iff C is Schur on the grid and C(lambda)|_(F_Gamma) = Omega."""
    gd = _gamma_data(p, Gamma, max(tol, 1e-8))
    d = gd.defect_basis.shape[1]
    if Cfun.in_dim != d or Cfun.out_dim != d:
        raise DimensionMismatch(
            f"C must act on the {d}-dimensional defect space, "
            f"got {Cfun.out_dim} x {Cfun.in_dim}")
    if grid is None:
        grid = default_grid()
    Bfd = gd.defect_basis.conj().T @ gd.F_gamma.basis
    for z in grid.points:
        Cv = Cfun.eval(z)
        if operator_norm(Cv) > 1.0 + tol:
            return False
        if operator_norm(Cv @ Bfd - gd.Omega) > tol:
            return False
    return True


def _w_taylor(H: PolyOpFn, Gamma, Cfun, N: int, D, Bd) -> list:
    """Coefficients W_0..W_(N+1) of the positive-real factor.

    W_0 = Gamma*Gamma + D^2 and, for k >= 1,
    W_k = 2 sum_n H_n* H_(n+k) + 2 D_Gamma (herglotz of C)_k D_Gamma,
    the first sum running over the retained degrees n <= N - k.
    """
    u = H.in_dim
    Hc = [H.coeff(n) for n in range(N + 1)]
    first = []
    for k in range(1, N + 2):
        s = np.zeros((u, u), dtype=np.complex128)
        for n in range(N - k + 1):
            s += Hc[n].conj().T @ Hc[n + k]
        first.append(s)
    d = Bd.shape[1]
    Cc = taylor_coeffs(Cfun, N)
    P = [np.eye(d, dtype=np.complex128)]
    for k in range(1, N + 2):
        acc = np.zeros((d, d), dtype=np.complex128)
        for j in range(1, k + 1):
            acc += Cc[j - 1] @ P[k - j]
        P.append(acc)
    DB = D @ Bd
    BD = Bd.conj().T @ D
    W = [Gamma.conj().T @ Gamma + D @ D]
    for k in range(1, N + 2):
        W.append(2.0 * first[k - 1] + 2.0 * (DB @ P[k] @ BD))
    return W, first


def z_from_C(p: InterpolationProblem, H: PolyOpFn, Gamma, Cfun, N: int) -> AnalyticFn:
    """Parameter Z_C attached to a solution H and a fiber member C.

    Z_C = [2 H (W+I)^-1 ; lambda^-1 (W-I)(W+I)^-1], returned as a
    pointwise/Taylor hybrid (no colligation is reconstructed).  The
    lambda^-1 is a coefficient shift: W(0) = I is asserted within 1e-8
    and the bottom block's coefficient n is taken from W's degree n+1.
    """
    u, y = p.U_dim, p.Y_dim
    G = as_operator(Gamma, cols=u)
    if H.in_dim != u or H.out_dim != y:
        raise DimensionMismatch("H has wrong dimensions for this problem")
    D = hermitian_sqrt_psd(np.eye(u) - G.conj().T @ G)
    Bd = orthonormal_range(D, RANK_TOL).basis
    d = Bd.shape[1]
    if Cfun.in_dim != d or Cfun.out_dim != d:
        raise DimensionMismatch(
            f"C must act on the {d}-dimensional defect space of Gamma")
    W, first = _w_taylor(H, G, Cfun, N, D, Bd)
    eye = np.eye(u, dtype=np.complex128)
    w0res = operator_norm(W[0] - eye)
    if w0res > W_ZERO_TOL:
        raise WNotNormalizedAtZero(f"W(0) differs from I by {w0res:.3e}")
    M = [np.linalg.inv(W[0] + eye)]
    for k in range(1, N + 2):
        acc = np.zeros((u, u), dtype=np.complex128)
        for j in range(1, k + 1):
            acc += W[j] @ M[k - j]
        M.append(-M[0] @ acc)
    coeffs = []
    for n in range(N + 1):
        top = np.zeros((y, u), dtype=np.complex128)
        for k in range(n + 1):
            top += H.coeff(k) @ M[n - k]
        coeffs.append(np.vstack([2.0 * top, -2.0 * M[n + 1]]))
    gamma_sq = G.conj().T @ G
    DB = D @ Bd
    BD = Bd.conj().T @ D
    remainder = D @ D - DB @ BD

    def _w_eval(lam):
        # polynomial part is exact: the truncated shift is nilpotent
        poly = np.zeros((u, u), dtype=np.complex128)
        for k in range(len(first), 0, -1):
            poly = first[k - 1] + lam * poly
        h = herglotz_eval(Cfun, lam)
        return gamma_sq + 2.0 * lam * poly + DB @ h @ BD + remainder

    def _eval(lam):
        if lam == 0:
            return coeffs[0]
        Wv = _w_eval(lam)
        Aplus = Wv + eye
        if np.linalg.cond(Aplus) > W_COND_MAX:
            raise SingularResolvent("W(lambda) + I is numerically singular")
        inv = np.linalg.inv(Aplus)
        top = 2.0 * (H.eval(lam) @ inv)
        bot = ((Wv - eye) @ inv) / lam
        return np.vstack([top, bot])

    return AnalyticFn(y + u, u, coeffs, _eval, meta={"w0_residual": w0res})


def uniqueness_certificate(p: InterpolationProblem) -> bool:
    """True iff omega is an isometry and omega2 F is dense in U.

    Checked as sigma_min(omega) >= 1 - 1e-10 together with
    rank(omega2) = U_dim at the library rank cutoff.
    """
    if p.F.dim == 0:
        return p.U_dim == 0
    s = np.linalg.svd(p.omega, compute_uv=False)
    if float(s.min()) < 1.0 - 1e-10:
        return False
    s2 = np.linalg.svd(p.omega2, compute_uv=False)
    cutoff = 1e-9 * max(1.0, float(s2.max()) if s2.size else 0.0)
    rank = int(np.count_nonzero(s2 > cutoff))
    return rank == p.U_dim


def random_problem(u: int, y: int, f: int, seed: int,
                   scale: float = 0.9) -> InterpolationProblem:
    """Seeded random problem: random f-dimensional F and omega of norm
    scale * uniform(0.5, 1)."""
    if f > u:
        raise DimensionMismatch("dim F cannot exceed dim U")
    rng = np.random.default_rng(seed)
    if f > 0:
        raw = rng.standard_normal((u, f)) + 1j * rng.standard_normal((u, f))
        Fb = np.linalg.qr(raw)[0][:, :f]
    else:
        Fb = np.zeros((u, 0))
    F = Subspace(u, Fb)
    om = np.zeros((y + u, f), dtype=np.complex128)
    if f > 0:
        raw = rng.standard_normal((y + u, f)) + 1j * rng.standard_normal((y + u, f))
        target = scale * rng.uniform(0.5, 1.0)
        om = raw * (target / operator_norm(raw))
    return InterpolationProblem(U_dim=u, Y_dim=y, F=F,
                                omega1=om[:y, :], omega2=om[y:, :])


def random_constrained_z(p: InterpolationProblem, state_dim: int, seed: int,
                         scale: float = 1.0) -> SchurRealization:
    """Random parameter satisfying Z|_F = omega, via a seeded free part X."""
    om = p.omega
    Dstar = hermitian_sqrt_psd(np.eye(p.Y_dim + p.U_dim) - om @ om.conj().T)
    d = orthonormal_range(Dstar).dim
    Fb = p.F.basis
    g = orthonormal_range(np.eye(p.U_dim) - Fb @ Fb.conj().T).dim
    X = random_schur(d, g, state_dim, seed, scale=scale)
    return constrained_completion(p, X)


def gamma_from_solution(H: PolyOpFn, N: int) -> np.ndarray:
    """Column operator of a solution, convenience wrapper."""
    return column_operator(H, N)
