"""Checks on the partial sums of the alternating log-cosine Fourier series.

The series sum_k (-1)^k cos(k theta)/k converges to -log(2 cos(theta/2)) on
(-pi, pi) but its partial sums overshoot near the endpoints.  This module
evaluates the partial sums, the overshoot bound with an additive constant,
the extremum structure of the even-order defect

    f(theta) = sum_{k=1}^{2n} (-1)^k cos(k theta)/k + log(2 cos(theta/2)),

the positivity of the gap-growth derivative, and the n^-3 asymptotics of the
gap between the first two local maxima.  Sums are accumulated with
compensated summation (math.fsum on materialized terms, Kahan accumulation
in the streaming grid scan) because the pieces cancel to many digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .kernels import cosine_integral

_EDGE_GAP = 1e-6


@dataclass(frozen=True)
class PartialSumProbe:
    """A partial-sum order together with the evaluation grid in (-pi, pi)."""

    n: int
    theta_grid: tuple

    def __post_init__(self):
        grid = tuple(float(t) for t in self.theta_grid)
        if self.n < 1:
            raise ValueError("n must be positive")
        if not grid:
            raise ValueError("theta_grid must be nonempty")
        if max(abs(t) for t in grid) > math.pi - _EDGE_GAP:
            raise ValueError(f"grid points must stay {_EDGE_GAP} away from +/-pi")
        object.__setattr__(self, "theta_grid", grid)

    def partial_sum_values(self) -> np.ndarray:
        return np.array([log_partial_sum(self.n, t) for t in self.theta_grid])


def log_partial_sum(n: int, theta: float) -> float:
    """sum_{k=1}^n (-1)^k cos(k theta)/k, exactly as a finite sum."""
    ks = np.arange(1, int(n) + 1)
    signs = np.where(ks % 2 == 1, -1.0, 1.0)
    return math.fsum(signs * np.cos(ks * float(theta)) / ks)


def bound_check(n_max: int, theta_grid, M: float) -> float:
    """Worst-case margin of |partial sum| <= |limit| + M over the grid and n <= n_max.

    The limit function is -log(cos(theta/2)) - log 2, whose magnitude equals
    |log(1 + cos theta) + log 2| / 2.  A nonnegative return value means the
    bound holds everywhere scanned.  cos(k theta) is advanced by the
    three-term recurrence so the scan is O(n_max * grid) without
    trigonometric calls in the inner loop.
    """
    probe = PartialSumProbe(int(n_max), tuple(theta_grid))
    th = np.asarray(probe.theta_grid, dtype=float)
    limit = 0.5 * np.abs(np.log1p(np.cos(th)) + math.log(2.0))

    partial = np.zeros_like(th)
    comp = np.zeros_like(th)
    worst = np.zeros_like(th)
    cos_prev = np.ones_like(th)
    cos_cur = np.cos(th)
    two_cos = 2.0 * np.cos(th)
    for k in range(1, int(n_max) + 1):
        sign = -1.0 if k % 2 else 1.0
        term = sign * cos_cur / k
        # Kahan step
        y = term - comp
        t = partial + y
        comp = (t - partial) - y
        partial = t
        np.maximum(worst, np.abs(partial), out=worst)
        cos_prev, cos_cur = cos_cur, two_cos * cos_cur - cos_prev
    return float(np.min(limit + float(M) - worst))


def f_appendix(n: int, theta: float) -> float:
    """Even-order defect f(theta) = partial sum to 2n plus log(2 cos(theta/2))."""
    th = float(theta)
    if not -math.pi < th < math.pi:
        raise DomainError("theta must lie in (-pi, pi)")
    ks = np.arange(1, 2 * int(n) + 1)
    signs = np.where(ks % 2 == 1, -1.0, 1.0)
    return math.fsum(signs * np.cos(ks * th) / ks) + math.log(2.0 * math.cos(0.5 * th))


def f_appendix_prime(n: int, theta: float) -> float:
    """Derivative of f_appendix: -sin((4n+1) theta / 2) / (2 cos(theta/2))."""
    th = float(theta)
    if not -math.pi < th < math.pi:
        raise DomainError("theta must lie in (-pi, pi)")
    return -math.sin(0.5 * (4 * int(n) + 1) * th) / (2.0 * math.cos(0.5 * th))


def extremum_angle(n: int, k: int) -> float:
    """k-th critical angle 2 pi k / (4n + 1); even k are the local maxima."""
    if not 0 <= k <= 2 * n:
        raise DomainError("k must satisfy 0 <= k <= 2n")
    return 2.0 * math.pi * k / (4 * int(n) + 1)


def omega_window(t: float, k: int, n: int) -> float:
    """Asymmetry of adjacent-maximum increments of f under a window shift t.

    Positive values for all t in (0, pi] mean the gap between consecutive
    local maxima grows with k.
    """
    _check_window_args(t, k, n)
    q = 4 * int(n) + 1
    c = 4.0 * math.pi / q
    d = 2.0 * float(t) / q
    up = f_appendix(n, c * (k + 0.5) + d) - f_appendix(n, c * (k - 0.5) + d)
    dn = f_appendix(n, c * (k + 0.5) - d) - f_appendix(n, c * (k - 0.5) - d)
    return up - dn


def omega_prime(t: float, k: int, n: int) -> float:
    """Closed-form derivative of omega_window with respect to t.

        16 sin t sin(pi/q) sin(t/q) cos(2 pi k / q)
        -------------------------------------------- ,  q = 4n + 1,
        q (cos((4 pi k + 2t)/q) + cos(2 pi / q))

    strictly positive throughout 1 <= k <= n-1, 0 < t <= pi.
    """
    _check_window_args(t, k, n)
    q = 4 * int(n) + 1
    t = float(t)
    num = (16.0 * math.sin(t) * math.sin(math.pi / q)
           * math.sin(t / q) * math.cos(2.0 * math.pi * k / q))
    den = q * (math.cos((4.0 * math.pi * k + 2.0 * t) / q) + math.cos(2.0 * math.pi / q))
    return num / den


def _check_window_args(t: float, k: int, n: int):
    if not 1 <= int(k) <= int(n) - 1:
        raise DomainError("k must satisfy 1 <= k <= n-1")
    if not 0.0 < float(t) <= math.pi:
        raise DomainError("t must lie in (0, pi]")


def gap_asymptotic(n: int) -> float:
    """Gap f(theta_2) - f(theta_0) between the first two local maxima.

    Evaluated through the explicit finite form
        -2 sum_{k=1}^{2n} (-1)^k sin^2(2 pi k / (4n+1)) / k + log cos(2 pi/(4n+1)),
    which scales like pi^2 / (32 n^3) for large n.
    """
    q = 4 * int(n) + 1
    ks = np.arange(1, 2 * int(n) + 1)
    signs = np.where(ks % 2 == 1, -1.0, 1.0)
    s = np.sin(2.0 * math.pi * ks / q)
    total = math.fsum(signs * s * s / ks)
    u = 2.0 * math.pi / q
    log_term = math.log1p(-2.0 * math.sin(0.5 * u) ** 2)
    return -2.0 * total + log_term


def riemann_expansion_check(n: int) -> tuple[float, float, float]:
    """Scaled defects of the even/odd endpoint Riemann sums and the log term.

    Returns (even_defect, odd_defect, log_defect) where the even and odd
    defects are n^2 times the distance of the respective half-sums from
    their common limit pi*x/2, x = (-Ci(2 pi) + euler_gamma + log 2 pi)/(2 pi),
    and log_defect is n^3 times the remainder of log cos(2 pi/(4n+1)) after
    removing the leading -pi^2/(8 n^2).  The three converge to
    -pi^2/24, +pi^2/48 and pi^2/16; the O(1/n) drift of the first two is
    reported by the CLI verify command rather than asserted here.
    """
    n = int(n)
    q = 4 * n + 1
    ks = np.arange(1, n + 1)
    even = math.fsum(np.sin(4.0 * math.pi * ks / q) ** 2 / (2.0 * ks))
    odd = math.fsum(np.sin(2.0 * math.pi * (2 * ks - 1) / q) ** 2 / (2.0 * ks - 1.0))
    x = (-cosine_integral(2.0 * math.pi) + np.euler_gamma + math.log(2.0 * math.pi)) / (2.0 * math.pi)
    half_limit = 0.5 * math.pi * x
    u = 2.0 * math.pi / q
    log_term = math.log1p(-2.0 * math.sin(0.5 * u) ** 2)
    even_defect = n * n * (even - half_limit)
    odd_defect = n * n * (odd - half_limit)
    log_defect = n ** 3 * (log_term + math.pi ** 2 / (8.0 * n * n))
    return even_defect, odd_defect, log_defect
