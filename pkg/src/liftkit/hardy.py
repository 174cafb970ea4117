"""Truncated vector-valued Hardy-space machinery.

The degree-N truncation of the Hardy space over C^d keeps Taylor
coefficients 0..N, stacked as a block column of length (N+1)*d.  The
forward shift drops the degree-N coefficient on overflow, so shift
identities are exact on the retained blocks 0..N-1 and every routine that
multiplies truncated series reports the mass it dropped.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DegreeTooSmall, DimensionMismatch, DomainError
from .linalg import Subspace, as_operator, operator_norm

DEFAULT_DEGREE = 24
DEFAULT_RADII = (0.6, 0.95)
POINTS_PER_CIRCLE = 32


@dataclass(frozen=True)
class PolyOpFn:
    """Operator-valued polynomial sum_n coeffs[n] * lambda^n.

    Each coefficient is an (out_dim x in_dim) matrix.  ``column_bound``,
    when set, declares that every partial sum of coeffs[n]* coeffs[n] has
    operator norm at most that bound (solvers set 1.0 for contractive
    columns).
    """

    out_dim: int
    in_dim: int
    coeffs: tuple
    column_bound: float | None = None

    def __post_init__(self):
        cs = tuple(as_operator(c, rows=self.out_dim, cols=self.in_dim) for c in self.coeffs)
        if not cs:
            raise DimensionMismatch("at least one coefficient required")
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, n: int) -> np.ndarray:
        """Taylor coefficient n, zero beyond the stored degree."""
        if n < 0:
            raise ValueError("negative Taylor index")
        if n < len(self.coeffs):
            return self.coeffs[n]
        return np.zeros((self.out_dim, self.in_dim), dtype=np.complex128)

    # uniform analytic-function access path
    def taylor(self, n: int) -> np.ndarray:
        return self.coeff(n)

    def eval(self, lam: complex) -> np.ndarray:
        """Evaluate at a point of the open unit disk (Horner)."""
        lam = complex(lam)
        if abs(lam) >= 1.0:
            raise DomainError(f"|lambda| = {abs(lam):.6f} is not < 1")
        acc = np.zeros((self.out_dim, self.in_dim), dtype=np.complex128)
        for c in reversed(self.coeffs):
            acc = c + lam * acc
        return acc


class AnalyticFn:
    """Analytic operator function with a pointwise rule plus Taylor data.

    Used for functions that are not polynomials (resolvent-type formulas)
    but still need coefficient access for the truncated recursions.  The
    Taylor data is precomputed to a fixed degree; asking beyond it raises
    DegreeTooSmall.
    """

    def __init__(self, out_dim, in_dim, coeffs, eval_fn, meta=None):
        self.out_dim = int(out_dim)
        self.in_dim = int(in_dim)
        self.coeffs = tuple(as_operator(c, rows=self.out_dim, cols=self.in_dim) for c in coeffs)
        self._eval_fn = eval_fn
        self.meta = dict(meta or {})

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def taylor(self, n: int) -> np.ndarray:
        if n < 0:
            raise ValueError("negative Taylor index")
        if n >= len(self.coeffs):
            raise DegreeTooSmall(f"Taylor data stored to degree {self.degree}, asked for {n}")
        return self.coeffs[n]

    def eval(self, lam: complex) -> np.ndarray:
        lam = complex(lam)
        if abs(lam) >= 1.0:
            raise DomainError(f"|lambda| = {abs(lam):.6f} is not < 1")
        return as_operator(self._eval_fn(lam), rows=self.out_dim, cols=self.in_dim)


@dataclass(frozen=True)
class TruncationGrid:
    """Truncation degree plus the sample points used for grid checks."""

    degree: int
    points: tuple

    def __post_init__(self):
        if self.degree < 4:
            raise ConfigError("truncation degree must be at least 4")
        pts = tuple(complex(z) for z in self.points)
        if not pts:
            raise ConfigError("empty sample grid")
        if any(abs(z) >= 1.0 for z in pts):
            raise ConfigError("sample points must lie in the open unit disk")
        object.__setattr__(self, "points", pts)


def _env_radii():
    raw = os.environ.get("LIFTKIT_GRID")
    if not raw:
        return None
    try:
        radii = tuple(float(tok) for tok in raw.split(","))
    except ValueError as exc:
        raise ConfigError(f"cannot parse LIFTKIT_GRID={raw!r}") from exc
    if not radii or any(not (0.0 < r < 1.0) for r in radii):
        raise ConfigError(f"LIFTKIT_GRID radii must lie in (0, 1), got {raw!r}")
    return radii


def default_grid(degree: int = DEFAULT_DEGREE, radii=None,
                 points_per_circle: int = POINTS_PER_CIRCLE) -> TruncationGrid:
    """Sample grid on concentric circles; LIFTKIT_GRID overrides the radii."""
    if radii is None:
        radii = _env_radii() or DEFAULT_RADII
    pts = []
    for r in radii:
        for k in range(points_per_circle):
            pts.append(r * np.exp(2j * np.pi * k / points_per_circle))
    return TruncationGrid(degree, tuple(pts))


def shift_and_embed(dim: int, N: int) -> tuple[np.ndarray, np.ndarray]:
    """Truncated forward shift S and the embedding E of constants.

    S maps coefficient block n to block n+1 and drops block N; E places a
    vector at block 0.  Both act on the stacked (N+1)*dim coordinates.
    """
    if dim < 0 or N < 0:
        raise ValueError("dim and N must be nonnegative")
    size = (N + 1) * dim
    S = np.zeros((size, size), dtype=np.complex128)
    for n in range(N):
        S[(n + 1) * dim:(n + 2) * dim, n * dim:(n + 1) * dim] = np.eye(dim)
    E = np.zeros((size, dim), dtype=np.complex128)
    E[:dim, :] = np.eye(dim)
    return S, E


def column_operator(H: PolyOpFn, N: int) -> np.ndarray:
    """Stack H_0..H_N into the column operator C^in -> truncated H^2(C^out)."""
    return np.vstack([H.coeff(n) for n in range(N + 1)])


def analytic_toeplitz(H: PolyOpFn, N: int) -> np.ndarray:
    """Block lower-triangular Toeplitz matrix of multiplication by H.

    Block (i, j) is H_(i-j); the result maps stacked degree-N coefficients
    of C^in-valued polynomials to the degree-N part of the product.
    """
    out, inn = H.out_dim, H.in_dim
    T = np.zeros(((N + 1) * out, (N + 1) * inn), dtype=np.complex128)
    for k in range(min(H.degree, N) + 1):
        c = H.coeff(k)
        for j in range(N + 1 - k):
            T[(j + k) * out:(j + k + 1) * out, j * inn:(j + 1) * inn] = c
    return T


def multiplication_operator(H: PolyOpFn, domain: Subspace, N: int) -> tuple[np.ndarray, float]:
    """Multiplication by H restricted to a subspace of the truncated space.

    Returns the matrix (into truncated H^2(C^out_dim)) together with a
    tail-mass diagnostic: the norm of the product coefficients of degree
    > N that the truncation drops on the given domain.
    """
    if domain.ambient_dim != (N + 1) * H.in_dim:
        raise DimensionMismatch(
            f"domain ambient {domain.ambient_dim} != (N+1)*in_dim = {(N + 1) * H.in_dim}")
    M = analytic_toeplitz(H, N) @ domain.basis
    tail = 0.0
    deg = H.degree
    if deg > 0 and domain.dim > 0:
        rows = []
        for m in range(N + 1, N + deg + 1):
            rows.append(np.hstack([H.coeff(m - j) for j in range(N + 1)]))
        tail = operator_norm(np.vstack(rows) @ domain.basis)
    return M, tail
