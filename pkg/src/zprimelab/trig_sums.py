"""Elementary trigonometric sums S(a,b) and the empirical exponent probe.

S(a,b) = sum of n^(it) over integers a <= n < b, restricted to sub-dyadic
ranges b <= 2a with b <= sqrt(t/2pi).  The working hypothesis under test is
the bound |S(a,b)| < A * sqrt(a) * t^Delta; the probe reports the smallest
exponent on a 1e-3 grid for which a supplied constant A suffices over a
sample of (a, b, t) triples.

Phases t*ln(n) reach ~1e8 before reduction, which exhausts a double
mantissa, so ln(n) and the reduction mod 2pi are carried out in 80-bit
arithmetic before the final trig evaluation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import LN_GRID_STEP, TWO_PI, TWO_PI_F128
from .errors import ConstraintError


@dataclass(frozen=True)
class ExponentFit:
    """Smallest admissible exponent found for a fixed constant.

    max_violation_ratio is the worst |S| / (A sqrt(a) t^delta_hat) over the
    sample (<= 1 by construction); A_hat is the smallest constant that
    would itself suffice at delta_hat.
    """

    delta_hat: float
    A_hat: float
    samples: int
    max_violation_ratio: float


def _integer_range(a: float, b: float):
    return np.arange(math.ceil(a), math.ceil(b), dtype=np.int64)


def _check_constraints(a: float, b: float, t: float) -> None:
    if not 0.0 < a <= b:
        raise ConstraintError(f"s_sum: need 0 < a <= b, got a={a!r} b={b!r}")
    if b > 2.0 * a:
        raise ConstraintError(f"s_sum: need b <= 2a, got a={a!r} b={b!r}")
    if b > math.sqrt(t / TWO_PI):
        raise ConstraintError(
            f"s_sum: need b <= sqrt(t/2pi) = {math.sqrt(t / TWO_PI):.3f}, got b={b!r}")


def s_sum(a: float, b: float, t: float) -> complex:
    """Exact finite sum of e^{i t ln n} over integers a <= n < b."""
    _check_constraints(a, b, t)
    ns = _integer_range(a, b)
    if len(ns) == 0:
        return 0.0 + 0.0j
    ph = np.mod(np.float128(t) * np.log(ns.astype(np.float128)), TWO_PI_F128)
    ph = ph.astype(np.float64)
    return complex(np.cos(ph).sum(), np.sin(ph).sum())


def check_bound(a: float, b: float, t: float, delta: float, A: float) -> bool:
    """Whether |S(a,b)| < A sqrt(a) t^delta holds for this triple."""
    return abs(s_sum(a, b, t)) < A * math.sqrt(a) * t ** delta


def fit_delta(t_grid, dyadic_pairs, target_A: float) -> ExponentFit:
    """Smallest grid exponent making the bound hold over the whole sample.

    For each (a, b) pair and each t, the minimal admissible exponent is
    ln(|S| / (A sqrt(a))) / ln(t); the fit rounds the sample maximum up to
    the 1e-3 grid and clips into [0, 1/2] (the 1/2 endpoint always holds
    because b <= sqrt(t/2pi) caps the term count).
    """
    t_grid = list(t_grid)
    dyadic_pairs = list(dyadic_pairs)
    if not t_grid or not dyadic_pairs:
        raise ConstraintError("fit_delta: empty t grid or pair list")
    need = 0.0
    worst_scale = 0.0  # max |S| / sqrt(a) at delta_hat, for A_hat
    count = 0
    records = []
    for t in t_grid:
        for a, b in dyadic_pairs:
            mag = abs(s_sum(a, b, t))
            count += 1
            base = target_A * math.sqrt(a)
            if mag >= base:
                need = max(need, math.log(mag / base) / math.log(t))
            records.append((mag, a, t))
    delta_hat = min(0.5, math.ceil(max(need, 0.0) / LN_GRID_STEP) * LN_GRID_STEP)
    ratio = 0.0
    for mag, a, t in records:
        ratio = max(ratio, mag / (target_A * math.sqrt(a) * t ** delta_hat))
        worst_scale = max(worst_scale, mag / (math.sqrt(a) * t ** delta_hat))
    return ExponentFit(delta_hat=delta_hat, A_hat=worst_scale,
                       samples=count, max_violation_ratio=ratio)
