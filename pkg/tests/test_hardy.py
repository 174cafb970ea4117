import numpy as np
import pytest

from liftkit.errors import (ConfigError, DegreeTooSmall, DimensionMismatch,
                            DomainError)
from liftkit.hardy import (AnalyticFn, PolyOpFn, TruncationGrid,
                           analytic_toeplitz, column_operator, default_grid,
                           multiplication_operator, shift_and_embed)
from liftkit.linalg import Subspace, operator_norm


def geometric_poly(ratio, degree, lead=1.0):
    return PolyOpFn(1, 1, tuple(np.array([[lead * ratio ** n]])
                                for n in range(degree + 1)))


def test_polyopfn_coeff_beyond_degree_is_zero():
    p = PolyOpFn(2, 1, (np.ones((2, 1)),))
    assert p.degree == 0
    assert np.array_equal(p.coeff(5), np.zeros((2, 1)))
    assert np.array_equal(p.taylor(0), np.ones((2, 1)))


def test_polyopfn_requires_a_coefficient():
    with pytest.raises(DimensionMismatch):
        PolyOpFn(1, 1, ())


def test_polyopfn_eval_geometric():
    # sum_{n<=20} (0.4 * 0.5)^n = (1 - 0.2^21) / 0.8, frozen
    p = geometric_poly(0.4, 20)
    assert p.eval(0.5)[0, 0] == pytest.approx(1.2499999999999973, abs=1e-14)
    assert p.eval(0.0)[0, 0] == 1.0


def test_polyopfn_eval_outside_disk():
    p = geometric_poly(0.4, 3)
    with pytest.raises(DomainError):
        p.eval(1.0)


def test_analyticfn_taylor_is_bounded_by_stored_degree():
    fn = AnalyticFn(1, 1, [np.eye(1)] * 4, lambda lam: np.eye(1))
    assert fn.degree == 3
    with pytest.raises(DegreeTooSmall):
        fn.taylor(4)
    with pytest.raises(DomainError):
        fn.eval(1.2)


def test_truncation_grid_validation():
    with pytest.raises(ConfigError):
        TruncationGrid(3, (0.5,))
    with pytest.raises(ConfigError):
        TruncationGrid(8, ())
    with pytest.raises(ConfigError):
        TruncationGrid(8, (1.0,))
    g = TruncationGrid(8, (0.5, 0.5j))
    assert g.points == (0.5 + 0j, 0.5j)


def test_default_grid_shape():
    g = default_grid(10)
    assert g.degree == 10
    assert len(g.points) == 64  # two circles, 32 points each
    radii = sorted({round(abs(z), 12) for z in g.points})
    assert radii == [0.6, 0.95]


def test_default_grid_env_override(monkeypatch):
    monkeypatch.setenv("LIFTKIT_GRID", "0.3,0.7")
    g = default_grid(6)
    assert sorted({round(abs(z), 12) for z in g.points}) == [0.3, 0.7]
    monkeypatch.setenv("LIFTKIT_GRID", "junk")
    with pytest.raises(ConfigError):
        default_grid(6)


def test_shift_and_embed_structure():
    S, E = shift_and_embed(2, 3)
    x = np.arange(8.0).reshape(8, 1)
    shifted = S @ x
    assert np.array_equal(shifted[:2], np.zeros((2, 1)))
    assert np.array_equal(shifted[2:], x[:6])  # top block dropped
    assert operator_norm(np.linalg.matrix_power(S, 4)) == 0.0  # nilpotent
    assert operator_norm(E.conj().T @ E - np.eye(2)) == 0.0
    assert np.array_equal((S @ E)[2:4], np.eye(2))


def test_column_operator_fixture_norm():
    # H_n = 0.6 * 0.8^n at N = 24: squared column norm 1 - 0.64^25
    H = geometric_poly(0.8, 24, lead=0.6)
    col = column_operator(H, 24)
    assert col.shape == (25, 1)
    assert np.linalg.norm(col) == pytest.approx(0.9999928637360733, abs=1e-14)


def test_analytic_toeplitz_matches_convolution():
    rng = np.random.default_rng(10)
    N = 7
    H = PolyOpFn(2, 3, tuple(rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
                             for _ in range(3)))
    x = [rng.standard_normal((3, 1)) for _ in range(N + 1)]
    T = analytic_toeplitz(H, N)
    got = T @ np.vstack(x)
    for n in range(N + 1):
        want = sum(H.coeff(k) @ x[n - k] for k in range(min(n, 2) + 1))
        assert operator_norm(got[2 * n:2 * n + 2] - want) < 1e-13


def test_analytic_toeplitz_truncates_high_degree_symbols():
    # only coefficients up to degree N enter the block triangle
    H = PolyOpFn(1, 1, (np.zeros((1, 1)), np.zeros((1, 1)), np.eye(1)))
    T = analytic_toeplitz(H, 1)
    assert operator_norm(T) == 0.0


def test_multiplication_operator_restricts_toeplitz():
    rng = np.random.default_rng(11)
    N = 6
    H = PolyOpFn(1, 2, tuple(0.3 * rng.standard_normal((1, 2)) for _ in range(2)))
    B = np.linalg.qr(rng.standard_normal(((N + 1) * 2, 3)))[0]
    dom = Subspace((N + 1) * 2, B)
    M, tail = multiplication_operator(H, dom, N)
    assert operator_norm(M - analytic_toeplitz(H, N) @ B) == 0.0
    assert tail >= 0.0


def test_multiplication_operator_tail_of_shift():
    # H = lambda on the full truncated space: the top block falls off
    H = PolyOpFn(1, 1, (np.zeros((1, 1)), np.eye(1)))
    dom = Subspace(5, np.eye(5))
    M, tail = multiplication_operator(H, dom, 4)
    assert tail == pytest.approx(1.0)
    S, _ = shift_and_embed(1, 4)
    assert operator_norm(M - S) == 0.0


def test_multiplication_operator_checks_ambient():
    H = PolyOpFn(1, 2, (np.ones((1, 2)),))
    with pytest.raises(DimensionMismatch):
        multiplication_operator(H, Subspace(3, np.eye(3)), 4)
