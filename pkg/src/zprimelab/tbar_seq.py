"""Enumeration of the phase grid theta(t) = pi*nu + pi/2.

Each index nu has exactly one solution because theta is strictly increasing
past its minimum; consecutive solutions are spaced ~ pi/theta'(t) apart.
Solutions are found by Newton iteration on theta with analytic theta',
seeded by inverting the two leading asymptotic terms through the Lambert W
function, with a bisection fallback for any straggler.  Residuals are
measured in theta-space where the solver tolerance of 1e-9 corresponds to
a few 1e-10 in t at t = 1e6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import lambertw

from .constants import TWO_PI
from .errors import DomainError, SolverError
from .special_fns import (DEFAULT_CONFIG, EvalConfig, _theta_arr,
                          _theta_prime_arr, theta)

SOLVER_TOL = 1e-9  # absolute, in theta-space
_NEWTON_ROUNDS = 8


@dataclass(frozen=True)
class TbarPoint:
    """One grid point: index nu, abscissa t, and the parity of nu."""

    nu: int
    t: float
    parity: str


def _parity_of(nu: int) -> str:
    return "odd" if nu % 2 else "even"


def _seed(targets):
    """Invert (t/2)(ln(t/2pi) - 1) - pi/8 = target via t = 2pi e^(1+W(w/e))."""
    w = (np.asarray(targets, dtype=np.float64) + math.pi / 8.0) / math.pi
    u = math.e * np.exp(np.real(lambertw(w / math.e)))
    return TWO_PI * u


def _solve_targets(targets):
    """Vectorized Newton for theta(t) = target, bisection fallback."""
    t = _seed(targets)
    for _ in range(_NEWTON_ROUNDS):
        r = _theta_arr(t) - targets
        if np.max(np.abs(r)) <= 0.25 * SOLVER_TOL:
            break
        t = t - r / _theta_prime_arr(t)
    resid = _theta_arr(t) - targets
    bad = np.abs(resid) > SOLVER_TOL
    if bad.any():
        for i in np.flatnonzero(bad):
            t[i] = _bisect_target(float(targets[i]), float(t[i]))
        resid = _theta_arr(t) - targets
        if np.max(np.abs(resid)) > SOLVER_TOL:
            raise SolverError(
                f"theta-grid solver: worst residual {np.max(np.abs(resid)):.2e} "
                f"exceeds tolerance {SOLVER_TOL:.0e}")
    return t


def _bisect_target(target: float, guess: float) -> float:
    # theta is monotone here; expand a bracket around the Newton output.
    step = max(1.0, abs(guess) * 1e-6)
    lo, hi = guess - step, guess + step
    for _ in range(60):
        if float(_theta_arr(lo)) <= target:
            break
        lo -= step
        step *= 2.0
    step = max(1.0, abs(guess) * 1e-6)
    for _ in range(60):
        if float(_theta_arr(hi)) >= target:
            break
        hi += step
        step *= 2.0
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if float(_theta_arr(mid)) < target:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-12 * max(1.0, hi):
            break
    return 0.5 * (lo + hi)


def min_index(config: EvalConfig = DEFAULT_CONFIG) -> int:
    """Smallest nu whose solution lies at or above the domain floor."""
    return int(math.ceil((theta(config.min_t, config) - math.pi / 2.0) / math.pi))


def tbar(nu: int, config: EvalConfig = DEFAULT_CONFIG) -> TbarPoint:
    """Solve theta(t) = pi*nu + pi/2 for the nu-th grid point."""
    if nu < min_index(config):
        raise DomainError(
            f"tbar: nu={nu} solves below the domain floor t={config.min_t}")
    target = np.array([math.pi * nu + math.pi / 2.0])
    t = float(_solve_targets(target)[0])
    return TbarPoint(nu=int(nu), t=t, parity=_parity_of(nu))


def tbar_range(T: float, H: float, parity: str = "all",
               config: EvalConfig = DEFAULT_CONFIG) -> list[TbarPoint]:
    """All grid points with T <= t <= T + H of the requested index parity.

    The index window is exact: nu runs from ceil((theta(T) - pi/2)/pi) to
    floor((theta(T+H) - pi/2)/pi), so the count identity against the theta
    increment holds by construction.
    """
    if parity not in ("even", "odd", "all"):
        raise ValueError(f"parity must be even|odd|all, got {parity!r}")
    _ = theta(T, config)  # domain check
    if not H > 0.0:
        raise DomainError(f"tbar_range: H must be positive, got {H!r}")
    nu_lo = math.ceil((float(_theta_arr(T)) - math.pi / 2.0) / math.pi)
    nu_hi = math.floor((float(_theta_arr(T + H)) - math.pi / 2.0) / math.pi)
    if nu_hi < nu_lo:
        return []
    nus = np.arange(nu_lo, nu_hi + 1, dtype=np.int64)
    if parity == "odd":
        nus = nus[nus % 2 == 1]
    elif parity == "even":
        nus = nus[nus % 2 == 0]
    if len(nus) == 0:
        return []
    ts = _solve_targets(math.pi * nus.astype(np.float64) + math.pi / 2.0)
    return [TbarPoint(nu=int(n), t=float(t), parity=_parity_of(int(n)))
            for n, t in zip(nus, ts)]


def _tbar_range_arrays(T: float, H: float, parity: str,
                       config: EvalConfig = DEFAULT_CONFIG):
    """Array variant used by the summation paths (indices, abscissas)."""
    pts = tbar_range(T, H, parity, config)
    nus = np.array([p.nu for p in pts], dtype=np.int64)
    ts = np.array([p.t for p in pts], dtype=np.float64)
    return nus, ts
