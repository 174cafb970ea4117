"""Model spaces of inner functions and contractive multiplication maps.

For an inner function Theta with Theta(0) = 0 the model space is
H = H^2(U) - Theta H^2(E) (orthogonal complement), realized here inside
the degree-N truncation as the near-kernel of the adjoint multiplication
matrix.  With Phi = Theta/lambda the space splits two ways,

    H = (constants U) + lambda H0   and   H = H0 + Phi (constants E),

where H0 is the model space of Phi; both splittings are checked by
check_decompositions.  A function H is a contractive multiplier from H
into H^2(Y) exactly when H(lambda) = P_Y Z(lambda)
(I - Theta(lambda) P_E Z(lambda))^-1 for a Schur-class Z from U into
Y + E; h_from_Z_theta evaluates this by Taylor recursion (well founded
because Theta(0) = 0) and z_from_H_theta reverses it by posing the
multiplication map as an interpolation problem on H, taking the central
parameter of its fiber and compressing back to U -> Y + E coordinates.

Inner functions are restricted to lambda^k times finite Blaschke-Potapov
products (rank-one factors) times a constant isometry; these have
finite-dimensional model spaces and exact truncation bookkeeping.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (DegreeTooSmall, DimensionMismatch, DomainError,
                     NotAContraction)
from .hardy import (AnalyticFn, PolyOpFn, analytic_toeplitz, column_operator,
                    default_grid, multiplication_operator, shift_and_embed)
from .lifting import InterpolationProblem, central_C, z_from_C
from .linalg import (RANK_TOL, Subspace, as_operator, haar_unitary,
                     operator_norm, orthonormal_range)
from .schur import random_schur, taylor_coeffs

KERNEL_TOL = 1e-9


@dataclass(frozen=True)
class BlaschkeFactor:
    """Rank-one factor (I - P) + b_a P with P the projection onto w."""

    a: complex
    w: np.ndarray

    def __post_init__(self):
        a = complex(self.a)
        if abs(a) >= 1.0:
            raise DomainError(f"factor zero must lie in the open disk, |a| = {abs(a):.4f}")
        w = np.asarray(self.w, dtype=np.complex128).reshape(-1)
        if not np.all(np.isfinite(w.view(np.float64))):
            raise DomainError("factor direction must be finite")
        nrm = float(np.linalg.norm(w))
        if nrm == 0.0:
            raise DomainError("factor direction must be nonzero")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "w", w / nrm)

    def projector(self) -> np.ndarray:
        return np.outer(self.w, self.w.conj())

    def scalar_coeff(self, n: int) -> complex:
        """Taylor coefficient of b_a (b_0 = lambda by convention)."""
        a = self.a
        if a == 0:
            return 1.0 + 0.0j if n == 1 else 0.0j
        if n == 0:
            return complex(abs(a))
        return -(abs(a) / a) * (1.0 - abs(a) ** 2) * np.conj(a) ** (n - 1)

    def eval_scalar(self, lam: complex) -> complex:
        a = self.a
        if a == 0:
            return complex(lam)
        return (abs(a) / a) * (a - lam) / (1.0 - np.conj(a) * lam)


@dataclass(frozen=True, eq=False)
class InnerFn:
    """Inner function lambda^power * product(factors) * V0, vanishing at 0.

    kind "bp_product": square, factors nonempty allowed to be (), V0
    unitary.  kind "power": Theta = lambda^power * V0 with V0 an isometry
    (possibly rectangular, E smaller than U).
    """

    kind: str
    out_dim: int
    in_dim: int
    power: int = 1
    factors: tuple = ()
    V0: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in ("bp_product", "power"):
            raise DomainError(f"unknown inner-function kind {self.kind!r}")
        if self.power < 1:
            raise DomainError("power must be >= 1 so that Theta(0) = 0")
        if self.kind == "bp_product" and self.out_dim != self.in_dim:
            raise DimensionMismatch("Blaschke-Potapov products must be square")
        if self.kind == "power" and self.factors:
            raise DomainError("power kind takes no factors")
        for fac in self.factors:
            if fac.w.shape[0] != self.out_dim:
                raise DimensionMismatch("factor direction has wrong dimension")
        V0 = self.V0
        if V0 is None:
            V0 = np.eye(self.out_dim, self.in_dim)
        V0 = as_operator(V0, rows=self.out_dim, cols=self.in_dim)
        if operator_norm(V0.conj().T @ V0 - np.eye(self.in_dim)) > 1e-12:
            raise DomainError("V0 must have orthonormal columns")
        object.__setattr__(self, "V0", V0)
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def degree_bound(self) -> int:
        """Blaschke degree: pole count governing dim of the model space."""
        return self.power + len(self.factors)

    def taylor_list(self, N: int) -> list:
        """Exact Taylor coefficients 0..N (products convolve exactly)."""
        u = self.out_dim
        prod = [np.eye(u, dtype=np.complex128)]
        prod.extend(np.zeros((u, u), dtype=np.complex128) for _ in range(N))
        for fac in self.factors:
            P = fac.projector()
            comp = np.eye(u) - P
            fc = [comp + fac.scalar_coeff(0) * P]
            fc.extend(fac.scalar_coeff(n) * P for n in range(1, N + 1))
            new = []
            for n in range(N + 1):
                acc = np.zeros((u, u), dtype=np.complex128)
                for k in range(n + 1):
                    acc += prod[k] @ fc[n - k]
                new.append(acc)
            prod = new
        out = [np.zeros((u, self.in_dim), dtype=np.complex128)
               for _ in range(min(self.power, N + 1))]
        out.extend(prod[n] @ self.V0 for n in range(N + 1 - self.power))
        return out[:N + 1]

    def coeff(self, n: int) -> np.ndarray:
        return self.taylor_list(n)[n]

    def taylor(self, n: int) -> np.ndarray:
        return self.coeff(n)

    def as_poly(self, N: int) -> PolyOpFn:
        return PolyOpFn(self.out_dim, self.in_dim, tuple(self.taylor_list(N)))

    def phi_poly(self, N: int) -> PolyOpFn:
        """Taylor polynomial of Phi = Theta / lambda to degree N."""
        tl = self.taylor_list(N + 1)
        return PolyOpFn(self.out_dim, self.in_dim, tuple(tl[1:]))

    def eval(self, lam: complex) -> np.ndarray:
        """Exact rational evaluation; the closed disk is allowed."""
        lam = complex(lam)
        if abs(lam) > 1.0 + 1e-12:
            raise DomainError(f"|lambda| = {abs(lam):.6f} exceeds 1")
        u = self.out_dim
        acc = np.eye(u, dtype=np.complex128)
        for fac in self.factors:
            P = fac.projector()
            acc = acc @ (np.eye(u) - P + fac.eval_scalar(lam) * P)
        return (lam ** self.power) * (acc @ self.V0)


@dataclass(frozen=True)
class ModelSpace:
    """Truncated realization of H and H0 with their orthonormal bases."""

    N: int
    U_dim: int
    E_dim: int
    basis: Subspace
    H0_basis: Subspace


class DecompositionReport(NamedTuple):
    split_const_residual: float
    split_phi_residual: float
    R_isometry_residual: float
    Q_isometry_residual: float

    def ok(self, tol: float = 1e-9) -> bool:
        return max(self) <= tol


class MultBoundReport(NamedTuple):
    contractive: bool
    norm: float
    tail_mass: float


class PointwiseMultReport(NamedTuple):
    consistent: bool
    intertwining_residual: float
    pointwise_residual: float
    K: PolyOpFn


def model_space(theta: InnerFn, N: int) -> ModelSpace:
    """Bases of H and H0 as near-kernels of the adjoint Toeplitz matrices.

    N must be at least 2*degree_bound + 4; zeros close to the unit circle
    need more (the near-kernel singular value decays like |a|^N and must
    fall below the kernel cutoff 1e-9).
    """
    need = 2 * theta.degree_bound + 4
    if N < need:
        raise DegreeTooSmall(f"truncation degree {N} < {need}")

    def kernel_basis(fn: PolyOpFn) -> Subspace:
        M = analytic_toeplitz(fn, N)
        U, s, _ = np.linalg.svd(M, full_matrices=True)
        cutoff = KERNEL_TOL * max(1.0, float(s[0]) if s.size else 0.0)
        r = int(np.count_nonzero(s > cutoff))
        return Subspace(M.shape[0], U[:, r:])

    return ModelSpace(N=N, U_dim=theta.out_dim, E_dim=theta.in_dim,
                      basis=kernel_basis(theta.as_poly(N)),
                      H0_basis=kernel_basis(theta.phi_poly(N)))


def check_decompositions(theta: InnerFn, ms: ModelSpace) -> DecompositionReport:
    """Residuals of both splittings of H and of the isometries R, Q.

    R embeds H0 into H; Q multiplies H0 by lambda into H.  All four
    residuals vanish up to truncation for a genuine model space.
    """
    u, N = ms.U_dim, ms.N
    msb = ms.basis.basis
    h0b = ms.H0_basis.basis
    S, E = shift_and_embed(u, N)
    PH = msb @ msb.conj().T
    b1 = np.hstack([E, S @ h0b])
    r1 = operator_norm(b1 @ b1.conj().T - PH)
    b2 = np.hstack([h0b, column_operator(theta.phi_poly(N), N)])
    r2 = operator_norm(b2 @ b2.conj().T - PH)
    Rm = msb.conj().T @ h0b
    Qm = msb.conj().T @ (S @ h0b)
    m0 = h0b.shape[1]
    riso = operator_norm(Rm.conj().T @ Rm - np.eye(m0))
    qiso = operator_norm(Qm.conj().T @ Qm - np.eye(m0))
    return DecompositionReport(float(r1), float(r2), float(riso), float(qiso))


def mult_contraction_test(Hfn: PolyOpFn, ms: ModelSpace, N: int | None = None,
                          tol: float = 1e-8) -> MultBoundReport:
    """Norm of multiplication by Hfn restricted to the model space."""
    if N is None:
        N = ms.N
    M, tail = multiplication_operator(Hfn, ms.basis, N)
    nrm = operator_norm(M)
    return MultBoundReport(contractive=bool(nrm <= 1.0 + tol),
                           norm=float(nrm), tail_mass=float(tail))


def h_from_Z_theta(theta: InnerFn, Z, N: int) -> PolyOpFn:
    """Multiplier H = P_Y Z (I - Theta P_E Z)^-1 by Taylor recursion.

    Z maps U into Y + E.  The recursion G_0 = I,
    G_n = sum_(j>=1) (Theta P_E Z)_j G_(n-j) is well founded because
    Theta has no constant term.
    """
    u, e = theta.out_dim, theta.in_dim
    if Z.in_dim != u or Z.out_dim < e:
        raise DimensionMismatch(
            f"Z must map C^{u} into C^y + C^{e}, got {Z.out_dim} x {Z.in_dim}")
    y = Z.out_dim - e
    Zc = taylor_coeffs(Z, N)
    Zy = [c[:y, :] for c in Zc]
    Ze = [c[y:, :] for c in Zc]
    Th = theta.taylor_list(N)
    V = [np.zeros((u, u), dtype=np.complex128)]
    for j in range(1, N + 1):
        acc = np.zeros((u, u), dtype=np.complex128)
        for i in range(1, j + 1):
            acc += Th[i] @ Ze[j - i]
        V.append(acc)
    G = [np.eye(u, dtype=np.complex128)]
    for n in range(1, N + 1):
        acc = np.zeros((u, u), dtype=np.complex128)
        for j in range(1, n + 1):
            acc += V[j] @ G[n - j]
        G.append(acc)
    H = []
    for n in range(N + 1):
        acc = np.zeros((y, u), dtype=np.complex128)
        for k in range(n + 1):
            acc += Zy[k] @ G[n - k]
        H.append(acc)
    return PolyOpFn(y, u, tuple(H))


def z_from_H_theta(theta: InnerFn, Hfn: PolyOpFn, ms: ModelSpace, N: int,
                   tol: float = 1e-8) -> AnalyticFn:
    """Schur parameter recovering a contractive multiplier Hfn.

    The multiplication matrix on the model space solves an interpolation
    problem whose input space is H itself (F = lambda H0, omega1 = 0,
    omega2 undoes the shift); the central fiber member is mapped through
    z_from_C and the resulting [F; G] block pair is compressed to
    Z = [F restricted to constants; const-coeff of Phi* G on constants],
    an element of the Schur class from U into Y + E up to truncation.
    """
    u, e = theta.out_dim, theta.in_dim
    y = Hfn.out_dim
    if Hfn.in_dim != u:
        raise DimensionMismatch("Hfn must act on U-valued functions")
    if ms.N != N or ms.U_dim != u:
        raise DimensionMismatch("model space does not match theta at this degree")
    Gmat, tail = multiplication_operator(Hfn, ms.basis, N)
    nrm = operator_norm(Gmat)
    if nrm > 1.0 + tol:
        raise NotAContraction(f"multiplication norm {nrm:.6e} exceeds 1")
    msb = ms.basis.basis
    h0b = ms.H0_basis.basis
    m = msb.shape[1]
    S, E = shift_and_embed(u, N)
    Fb = orthonormal_range(msb.conj().T @ (S @ h0b), RANK_TOL).basis
    om2 = msb.conj().T @ (S.conj().T @ (msb @ Fb))
    nrm2 = operator_norm(om2)
    if nrm2 > 1.0:
        om2 = om2 / nrm2
    f = Fb.shape[1]
    p_model = InterpolationProblem(U_dim=m, Y_dim=y, F=Subspace(m, Fb),
                                   omega1=np.zeros((y, f)), omega2=om2)
    Htilde = PolyOpFn(y, m, tuple(Gmat[n * y:(n + 1) * y, :] for n in range(N + 1)),
                      column_bound=1.0)
    C0 = central_C(p_model, Gmat, tol)
    Zt = z_from_C(p_model, Htilde, Gmat, C0, N)
    EmU = msb.conj().T @ E
    colPhi = column_operator(theta.phi_poly(N), N)
    left = colPhi.conj().T @ msb

    def compress(Zv: np.ndarray) -> np.ndarray:
        top = Zv[:y, :] @ EmU
        bottom = left @ (Zv[y:, :] @ EmU)
        return np.vstack([top, bottom])

    coeffs = [compress(Zt.taylor(n)) for n in range(N + 1)]
    meta = dict(Zt.meta)
    meta["mult_tail"] = float(tail)
    return AnalyticFn(y + e, u, coeffs, lambda lam: compress(Zt.eval(lam)),
                      meta=meta)


def pointwise_mult_check(Gmat, ms: ModelSpace, tol: float = 1e-8,
                         grid=None) -> PointwiseMultReport:
    """Intertwining S_Y G R = G Q versus pointwise multiplication.

    The two sides of the equivalence are evaluated independently; the
    report says whether they agree (both hold or both fail at tol) and
    carries the candidate symbol K read off the action on constants.
    """
    u, N = ms.U_dim, ms.N
    msb = ms.basis.basis
    h0b = ms.H0_basis.basis
    m = msb.shape[1]
    G = as_operator(Gmat, cols=m)
    if G.shape[0] % (N + 1) != 0:
        raise DimensionMismatch("Gmat rows must fill degree blocks")
    y = G.shape[0] // (N + 1)
    S, E = shift_and_embed(u, N)
    SY, _ = shift_and_embed(y, N)
    Rm = msb.conj().T @ h0b
    Qm = msb.conj().T @ (S @ h0b)
    inter = operator_norm(SY @ (G @ Rm) - G @ Qm)
    K = PolyOpFn(y, u, tuple((G @ (msb.conj().T @ E))[n * y:(n + 1) * y, :]
                             for n in range(N + 1)))
    Gfn = PolyOpFn(y, m, tuple(G[n * y:(n + 1) * y, :] for n in range(N + 1)))
    basis_fn = PolyOpFn(u, m, tuple(msb[n * u:(n + 1) * u, :] for n in range(N + 1)))
    if grid is None:
        grid = default_grid(max(N, 4))
    pw = max(operator_norm(Gfn.eval(z) - K.eval(z) @ basis_fn.eval(z))
             for z in grid.points)
    both = bool((inter <= tol) == (pw <= tol))
    return PointwiseMultReport(consistent=both, intertwining_residual=float(inter),
                               pointwise_residual=float(pw), K=K)


def random_inner(seed: int, dim: int, n_factors: int,
                 max_modulus: float = 0.45) -> InnerFn:
    """Seeded Blaschke-Potapov product with zeros of modulus <= max_modulus.

    The modulus cap keeps near-kernel singular values of the truncated
    Toeplitz matrix well below the kernel cutoff at moderate N.
    """
    rng = np.random.default_rng(seed)
    facs = []
    for _ in range(n_factors):
        r = rng.uniform(0.15, max_modulus)
        ph = rng.uniform(0.0, 2.0 * np.pi)
        w = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
        facs.append(BlaschkeFactor(a=r * np.exp(1j * ph), w=w))
    V0 = haar_unitary(rng, dim)
    return InnerFn(kind="bp_product", out_dim=dim, in_dim=dim,
                   factors=tuple(facs), V0=V0)


def random_multiplier(theta: InnerFn, y: int, N: int, seed: int,
                      state_dim: int = 2, scale: float = 0.6) -> PolyOpFn:
    """Contractive multiplier generated through the forward formula."""
    Z = random_schur(y + theta.in_dim, theta.out_dim, state_dim, seed,
                     scale=scale)
    return h_from_Z_theta(theta, Z, N)


def theta_shift(dim: int) -> InnerFn:
    """Theta(lambda) = lambda * I, the plain shift case."""
    return InnerFn(kind="power", out_dim=dim, in_dim=dim, power=1)
