"""Shared test oracles: brute-force payoff grids and finite differences."""

from __future__ import annotations

import numpy as np

P_GRID = np.arange(1001) / 1000.0  # exact tenths/thousandths for membership checks
TIE_TOL = 1e-9


def wage_phi_complex(theta: int, sigma: float, wage: float, p0, p1):
    """Vectorized complex-rule payoff of the wage game with threshold = prior."""
    p0 = np.asarray(p0, dtype=float)
    p1 = np.asarray(p1, dtype=float)
    accuracy = 0.5 + 2.0 * sigma * theta
    four = 4.0 * sigma
    return np.select(
        [p1 * (1.0 + four) < p0, p1 * (1.0 - four) < p0],
        [accuracy, accuracy + accuracy * wage],
        default=accuracy + wage,
    )


def wage_phi_simple(wage: float, p0, p1):
    return np.where(np.asarray(p0, dtype=float) >= np.asarray(p1, dtype=float), 0.5 + wage, 0.5)


def wage_omega_profile(theta: int, sigma: float, wage: float, p_other: float, own: np.ndarray) -> np.ndarray:
    """Mixing value of a type over its own probabilities, conjecture included."""
    if theta == 0:
        p0, p1 = own, np.full_like(own, p_other)
    else:
        p0, p1 = np.full_like(own, p_other), own
    phi_c = wage_phi_complex(theta, sigma, wage, p0, p1)
    phi_s = wage_phi_simple(wage, p0, p1)
    return own * phi_c + (1.0 - own) * phi_s


def grid_best_response(theta: int, sigma: float, wage: float, p_other: float, grid: np.ndarray = P_GRID, tol: float = TIE_TOL) -> np.ndarray:
    """Grid probabilities within tol of the maximal mixing value."""
    values = wage_omega_profile(theta, sigma, wage, p_other, grid)
    return grid[values >= values.max() - tol]


def mutual_best_response_mask(sigma: float, wage: float, grid: np.ndarray = P_GRID, tol: float = TIE_TOL) -> np.ndarray:
    """Boolean matrix over (p0, p1) pairs that are mutual grid best responses."""
    p0 = grid[:, None]
    p1 = grid[None, :]
    omega0 = p0 * wage_phi_complex(0, sigma, wage, p0, p1) + (1.0 - p0) * wage_phi_simple(wage, p0, p1)
    omega1 = p1 * wage_phi_complex(1, sigma, wage, p0, p1) + (1.0 - p1) * wage_phi_simple(wage, p0, p1)
    br0 = omega0 >= omega0.max(axis=0, keepdims=True) - tol  # best p0 against each p1
    br1 = omega1 >= omega1.max(axis=1, keepdims=True) - tol  # best p1 against each p0
    return br0 & br1


def central_difference(f, x: float, h: float = 1e-6) -> float:
    return (f(x + h) - f(x - h)) / (2.0 * h)


def bisect_sign_change(f, lo: float, hi: float, tol: float = 1e-9) -> float | None:
    """Root of f by bisection; None when f has the same sign at both ends."""
    f_lo, f_hi = f(lo), f(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0.0) == (f_hi > 0.0):
        return None
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
