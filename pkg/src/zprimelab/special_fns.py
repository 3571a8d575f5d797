"""Evaluation of theta, Z and Z' on the critical line.

Z(t) is the real-valued rotation of zeta on the critical line,
Z(t) = e^{i theta(t)} zeta(1/2 + it), with theta the phase that makes it
real.  Everything here reduces to finite oscillatory sums:

* theta(t) and theta'(t) from the asymptotic expansion
      theta(t) = (t/2) ln(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760 t^3) + ...
  (absolute error below 1e-12 for t >= 100).

* Z(t) from the Riemann-Siegel main sum over n <= sqrt(t/2pi), optionally
  with the leading correction term
      (-1)^(N-1) (t/2пи)^(-1/4) Psi(p),
      Psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p),
  which drops the error from O(t^-1/4) to O(t^-3/4).

* Z'(t) from two closed sum formulas: the term-by-term derivative of the
  main sum ("formula 1", valid everywhere), and a fixed-anchor variant
  ("formula 2") whose oscillator amplitudes ln(P0/n) vanish at the cutoff,
  valid for t in [T, T + T^(1/4)] with P0 = sqrt(T/2pi) frozen at T.

* A slow independent oracle for zeta(1/2 + it) by Euler-Maclaurin summation
  with N ~ t terms, with phase arguments t ln n reduced mod 2pi in 80-bit
  arithmetic.  It is accurate to ~1e-11 absolute up to t = 1e7 and exists so
  that every fast path above can be checked against a different algorithm.

All functions are pure in (t, config); the module only caches immutable
term tables (ln n, 1/sqrt(n)).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass

import numpy as np
from scipy.special import bernoulli

from .constants import RS_REMAINDER_C, TWO_PI, TWO_PI_F128, ZPRIME_REMAINDER_C
from .errors import AccuracyError, DomainError, WindowError

_ORACLE_TARGET = 1e-10
_ORACLE_BERNOULLI_TERMS = 10
_B2K = bernoulli(2 * _ORACLE_BERNOULLI_TERMS + 2)


@dataclass(frozen=True)
class EvalConfig:
    """Accuracy and domain knobs shared by all evaluation routines.

    rs_correction_order counts Riemann-Siegel correction terms beyond the
    main sum (0 or 1).  oracle_terms pins the Euler-Maclaurin series length
    (0 selects it from t).  fd_step is the base central-difference step,
    applied as fd_step / ln(t).  min_t is the domain floor; the asymptotic
    theta expansion and the correction term need t >= 20.
    """

    rs_correction_order: int = 1
    oracle_terms: int = 0
    fd_step: float = 1e-3
    min_t: float = 100.0

    def __post_init__(self):
        if self.rs_correction_order not in (0, 1):
            raise ValueError("rs_correction_order must be 0 or 1")
        if not 0.0 < self.fd_step <= 0.1:
            raise ValueError("fd_step must be in (0, 0.1]")
        if self.min_t < 20.0:
            raise ValueError("min_t must be >= 20")
        if self.oracle_terms < 0:
            raise ValueError("oracle_terms must be >= 0")


DEFAULT_CONFIG = EvalConfig()


@dataclass(frozen=True)
class ZValue:
    """A value of Z or Z' together with its truncation-error envelope."""

    t: float
    value: float
    remainder_bound: float


def _check_domain(t: float, config: EvalConfig, what: str) -> None:
    if not t >= config.min_t:
        raise DomainError(f"{what}: t={t!r} below domain floor min_t={config.min_t}")


# ----------------------------------------------------------------------
# theta and theta'
# ----------------------------------------------------------------------

def _theta_arr(t):
    t = np.asarray(t, dtype=np.float64)
    return ((t / 2.0) * (np.log(t / TWO_PI) - 1.0) - math.pi / 8.0
            + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t ** 3))


def _theta_prime_arr(t):
    t = np.asarray(t, dtype=np.float64)
    return 0.5 * np.log(t / TWO_PI) - 1.0 / (48.0 * t * t) - 7.0 / (1920.0 * t ** 4)


def _theta_main_terms(t: float) -> float:
    """Leading terms only: (t/2) ln(t/2pi) - t/2 - pi/8."""
    return (t / 2.0) * (math.log(t / TWO_PI) - 1.0) - math.pi / 8.0


def theta(t: float, config: EvalConfig = DEFAULT_CONFIG) -> float:
    """Phase function, asymptotic expansion through the 7/(5760 t^3) term."""
    _check_domain(t, config, "theta")
    return float(_theta_arr(t))


def theta_prime(t: float, config: EvalConfig = DEFAULT_CONFIG) -> float:
    """d theta/dt = (1/2) ln(t/2pi) + O(1/t^2)."""
    _check_domain(t, config, "theta_prime")
    return float(_theta_prime_arr(t))


# ----------------------------------------------------------------------
# shared term tables
# ----------------------------------------------------------------------

class _TermTable:
    """Lazily grown ln(n) / n^(-1/2) tables shared by the sum kernels."""

    def __init__(self):
        self._lock = threading.Lock()
        self._n = 0
        self.ln = np.empty(0)
        self.inv_sqrt = np.empty(0)

    def ensure(self, n: int):
        if n <= self._n:
            return
        with self._lock:
            if n <= self._n:
                return
            m = max(n, 2 * self._n, 64)
            ns = np.arange(1, m + 1, dtype=np.float64)
            self.ln = np.log(ns)
            self.inv_sqrt = 1.0 / np.sqrt(ns)
            self._n = m


class _F128LogTable:
    """ln(n) in 80-bit precision for the oracle's phase reduction."""

    def __init__(self):
        self._lock = threading.Lock()
        self._n = 0
        self.ln = np.empty(0, dtype=np.float128)

    def ensure(self, n: int):
        if n <= self._n:
            return
        with self._lock:
            if n <= self._n:
                return
            m = max(n, int(1.3 * self._n), 4096)
            self.ln = np.log(np.arange(1, m + 1, dtype=np.float128))
            self._n = m


_TERMS = _TermTable()
_F128_LOGS = _F128LogTable()


# ----------------------------------------------------------------------
# Riemann-Siegel main sum with leading correction
# ----------------------------------------------------------------------

def _psi_c0(p):
    """Correction kernel Psi(p); removable singularities at p = 1/4, 3/4.

    Within |cos(2pi p)| < 1e-4 of a singularity both numerator and
    denominator are replaced by their first-order Taylor ratios around the
    evaluation point, which keeps the error below ~1e-9 there.
    """
    p = np.asarray(p, dtype=np.float64)
    g = p * p - p - 0.0625
    num = np.cos(TWO_PI * g)
    den = np.cos(TWO_PI * p)
    near = np.abs(den) < 1e-4
    if not near.any():
        return num / den
    # num(p)/eps = num'(p) - num''(p) eps/2 and likewise for den,
    # with eps the distance to the nearest zero of cos(2pi p).
    p0 = np.where(p < 0.5, 0.25, 0.75)
    eps = p - p0
    gp = 2.0 * p - 1.0
    sin_g = np.sin(TWO_PI * g)
    num1 = -TWO_PI * gp * sin_g
    num2 = -2.0 * TWO_PI * sin_g - TWO_PI ** 2 * gp * gp * num
    den1 = -TWO_PI * np.sin(TWO_PI * p)
    den2 = -TWO_PI ** 2 * den
    safe = np.where(near, num1 - 0.5 * num2 * eps, num)
    safe_d = np.where(near, den1 - 0.5 * den2 * eps, den)
    return safe / safe_d


def _grouped_sum(ts, per_point, accumulate):
    """Dispatch points grouped by main-sum length N = floor(sqrt(t/2pi)).

    accumulate(chunk_slice, n_cols) fills the output for one group chunk;
    grouping keeps every kernel free of per-term masking.
    """
    a = np.sqrt(ts / TWO_PI)
    N = a.astype(np.int64)
    order = np.argsort(N, kind="stable")
    Ns = N[order]
    out = np.zeros(len(ts))
    _TERMS.ensure(int(Ns[-1]) if len(Ns) else 1)
    start = 0
    while start < len(Ns):
        stop = int(np.searchsorted(Ns, Ns[start], side="right"))
        n_cols = int(Ns[start])
        idx = order[start:stop]
        for lo in range(0, len(idx), per_point):
            sl = idx[lo:lo + per_point]
            out[sl] = accumulate(sl, n_cols)
        start = stop
    return out, a, N


def _z_arr(ts, order: int = 1, chunk: int = 8192):
    """Z(t) for an array of abscissas, no domain checks (internal)."""
    ts = np.asarray(ts, dtype=np.float64)
    th = _theta_arr(ts)

    def main_sum(sl, n_cols):
        if n_cols == 0:
            return np.zeros(len(sl))
        ph = th[sl, None] - ts[sl, None] * _TERMS.ln[None, :n_cols]
        return 2.0 * (np.cos(ph) * _TERMS.inv_sqrt[None, :n_cols]).sum(axis=1)

    out, a, N = _grouped_sum(ts, chunk, main_sum)
    if order >= 1:
        p = a - N
        sign = np.where(N % 2 == 1, 1.0, -1.0)
        out = out + sign * _psi_c0(p) / np.sqrt(a)
    return out


def _z_prime_f1_arr(ts, chunk: int = 8192):
    """Formula-1 Z'(t) for an array of abscissas (internal)."""
    ts = np.asarray(ts, dtype=np.float64)
    th = _theta_arr(ts)
    thp = _theta_prime_arr(ts)

    def deriv_sum(sl, n_cols):
        if n_cols == 0:
            return np.zeros(len(sl))
        ln_n = _TERMS.ln[None, :n_cols]
        ph = th[sl, None] - ts[sl, None] * ln_n
        amp = (thp[sl, None] - ln_n) * _TERMS.inv_sqrt[None, :n_cols]
        return -2.0 * (amp * np.sin(ph)).sum(axis=1)

    out, _, _ = _grouped_sum(ts, chunk, deriv_sum)
    return out


def _zprime_bound(t: float) -> float:
    return ZPRIME_REMAINDER_C * t ** -0.25 * max(math.log(t), 4.0)


def z(t: float, config: EvalConfig = DEFAULT_CONFIG) -> ZValue:
    """Z(t) by the Riemann-Siegel sum at the configured correction order."""
    _check_domain(t, config, "z")
    val = float(_z_arr(np.array([t]), order=config.rs_correction_order)[0])
    bound = RS_REMAINDER_C[config.rs_correction_order] * t ** -0.25
    return ZValue(t=t, value=val, remainder_bound=bound)


def z_prime_f1(t: float, config: EvalConfig = DEFAULT_CONFIG) -> ZValue:
    """Z'(t) = -2 sum_{n <= sqrt(t/2pi)} n^(-1/2) (theta' - ln n) sin(theta - t ln n)."""
    _check_domain(t, config, "z_prime_f1")
    val = float(_z_prime_f1_arr(np.array([t]))[0])
    return ZValue(t=t, value=val, remainder_bound=_zprime_bound(t))


def z_prime_f2(t: float, T: float, config: EvalConfig = DEFAULT_CONFIG) -> ZValue:
    """Fixed-anchor Z' sum with amplitudes ln(P0/n), P0 = sqrt(T/2pi).

    Valid on the window t in [T, T + T^(1/4)]; the anchor keeps the term
    count independent of t so no oscillator enters or leaves inside it.
    """
    _check_domain(T, config, "z_prime_f2")
    if not T <= t <= T + T ** 0.25:
        raise WindowError(
            f"z_prime_f2: t={t!r} outside window [T, T+T^(1/4)] = "
            f"[{T!r}, {T + T ** 0.25!r}]")
    P0 = math.sqrt(T / TWO_PI)
    n_max = int(math.ceil(P0)) - 1  # largest integer strictly below P0
    _TERMS.ensure(max(n_max, 1))
    ln_n = _TERMS.ln[:n_max]
    amp = (math.log(P0) - ln_n) * _TERMS.inv_sqrt[:n_max]
    ph = float(_theta_arr(t)) - t * ln_n
    val = -2.0 * float((amp * np.sin(ph)).sum())
    return ZValue(t=t, value=val,
                  remainder_bound=ZPRIME_REMAINDER_C * T ** -0.25 * max(math.log(T), 4.0))


# ----------------------------------------------------------------------
# Euler-Maclaurin oracle
# ----------------------------------------------------------------------

def _oracle_n_terms(t: float, config: EvalConfig) -> int:
    if config.oracle_terms > 0:
        return config.oracle_terms
    return max(64, int(math.ceil(1.05 * t)) + 8)


def zeta_half_oracle(t: float, config: EvalConfig = DEFAULT_CONFIG) -> complex:
    """zeta(1/2 + it) by Euler-Maclaurin summation (slow reference path).

    Independent of the Riemann-Siegel machinery: plain truncated Dirichlet
    sum over n <= N ~ t plus tail and Bernoulli corrections.  Phases t ln n
    are reduced mod 2pi in 80-bit precision, so the result stays accurate to
    ~1e-11 absolute up to t = 1e7.  Negative t is evaluated by conjugation.
    """
    if t < 0:
        return zeta_half_oracle(-t, config).conjugate()
    N = _oracle_n_terms(t, config)
    if N <= t / TWO_PI:
        raise AccuracyError(
            f"oracle_terms={N} insufficient: Euler-Maclaurin corrections "
            f"diverge for N <= t/2pi = {t / TWO_PI:.1f}")
    _F128_LOGS.ensure(N)
    t128 = np.float128(t)
    s = complex(0.5, t)

    # sum_{n=1}^{N-1} n^{-s}, chunked with pairwise partial sums
    total = 0.0 + 0.0j
    for lo in range(0, N - 1, 1 << 20):
        hi = min(lo + (1 << 20), N - 1)
        ph = np.mod(t128 * _F128_LOGS.ln[lo:hi], TWO_PI_F128).astype(np.float64)
        inv_sqrt = 1.0 / np.sqrt(np.arange(lo + 1, hi + 1, dtype=np.float64))
        total += complex((inv_sqrt * np.cos(ph)).sum(), -(inv_sqrt * np.sin(ph)).sum())

    # N^{1-s}/(s-1) + N^{-s}/2
    phN = float(np.mod(t128 * _F128_LOGS.ln[N - 1], TWO_PI_F128))
    N_minus_s = N ** -0.5 * complex(math.cos(phN), -math.sin(phN))
    total += N * N_minus_s / (s - 1.0) + 0.5 * N_minus_s

    # Bernoulli tail: sum_k B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    term = N_minus_s / N
    rising = s
    last = 0.0
    for k in range(1, _ORACLE_BERNOULLI_TERMS + 1):
        contrib = (_B2K[2 * k] / math.factorial(2 * k)) * rising * term
        total += contrib
        last = abs(contrib)
        rising = rising * (s + 2 * k - 1) * (s + 2 * k)
        term = term / (N * N)
    # crude remainder estimate: next term magnitude
    est = last * (abs(s) + 2 * _ORACLE_BERNOULLI_TERMS) ** 2 / (TWO_PI * N) ** 2
    if est > _ORACLE_TARGET:
        raise AccuracyError(
            f"oracle remainder estimate {est:.2e} exceeds target "
            f"{_ORACLE_TARGET:.0e}; increase oracle_terms (N={N}, t={t})")
    return total


def z_oracle(t: float, config: EvalConfig = DEFAULT_CONFIG) -> float:
    """Z(t) through the oracle path: Re(e^{i theta} zeta(1/2+it))."""
    th = float(_theta_arr(t))
    zeta = zeta_half_oracle(t, config)
    return math.cos(th) * zeta.real - math.sin(th) * zeta.imag


def z_prime_fd(t: float, config: EvalConfig = DEFAULT_CONFIG) -> float:
    """Central difference of oracle-backed Z with step fd_step / ln t."""
    _check_domain(t, config, "z_prime_fd")
    h = config.fd_step / math.log(t)
    return (z_oracle(t + h, config) - z_oracle(t - h, config)) / (2.0 * h)
