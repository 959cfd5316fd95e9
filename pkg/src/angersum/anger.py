"""Generalized Anger functions and harmonic-sum closed forms.

The central object is the order-``alpha`` integral

    A_alpha(x, y) = (1/2pi) * int_{-pi}^{pi} p_alpha(theta) dtheta,

whose integrand ``p_alpha`` carries a multi-tone phase.  At integer order it
coincides with the generalized Bessel coefficients of the same modulation
(`gbf_12` gives the two-tone convolution form) while remaining defined for
arbitrary complex order.  Also provided are the piecewise closed forms of
the alternating and plain exponential harmonic sums

    sum_n (-1)^n e^{i n theta} / (n + mu)   and   sum_n e^{i n theta} / (n + mu),

which drive the summation identities in the lnsum module.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import BranchPoint, DomainError, NoConvergence, PoleError
from .kernels import SeriesConfig, bessel_j
from .quadrature import QuadratureSpec, panel_integral_1d, periodic_trapezoid

MU_GUARD = 1e-8
_MAX_TONES = 16
_AMPLITUDE_BUDGET = 100.0
_INT_SNAP = 1e-12


@dataclass(frozen=True)
class ModulationCoefficients:
    """Tone amplitudes of the phase: x[k-1] multiplies sin(k*theta), y[k-1] cos(k*theta)."""

    x: tuple = (0j,)
    y: tuple = (0j,)

    def __post_init__(self):
        x = tuple(complex(v) for v in self.x)
        y = tuple(complex(v) for v in self.y)
        if len(x) != len(y):
            raise ValueError("x and y must have the same number of tones")
        if not 1 <= len(x) <= _MAX_TONES:
            raise ValueError(f"tone count must be between 1 and {_MAX_TONES}")
        budget = sum(abs(v) for v in x) + sum(abs(v) for v in y)
        if budget > _AMPLITUDE_BUDGET:
            raise ValueError(f"total tone amplitude {budget:.3g} exceeds {_AMPLITUDE_BUDGET}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def zero(cls, m: int = 1) -> "ModulationCoefficients":
        return cls((0j,) * m, (0j,) * m)

    @classmethod
    def of(cls, x=(), y=()) -> "ModulationCoefficients":
        """Build from possibly unequal-length sequences, padding with zeros."""
        x = tuple(complex(v) for v in x)
        y = tuple(complex(v) for v in y)
        m = max(len(x), len(y), 1)
        return cls(x + (0j,) * (m - len(x)), y + (0j,) * (m - len(y)))

    @property
    def m(self) -> int:
        return len(self.x)

    @property
    def is_zero(self) -> bool:
        return all(v == 0 for v in self.x) and all(v == 0 for v in self.y)

    def l1_norm(self) -> float:
        return sum(abs(v) for v in self.x) + sum(abs(v) for v in self.y)

    def harmonic_weight(self) -> float:
        """sum_k k * (|x_k| + |y_k|), the oscillation budget of the phase."""
        return sum(k * (abs(xk) + abs(yk))
                   for k, (xk, yk) in enumerate(zip(self.x, self.y), start=1))

    def decay_cutoff(self) -> int:
        """Integer order beyond which |A_n| has dropped below ~1e-12."""
        return int(math.ceil(self.harmonic_weight())) + 60


def check_mu(mu: complex) -> complex:
    """Reject mu within the guard band of an integer, where 1/sin(pi*mu) blows up."""
    mu = complex(mu)
    k = round(mu.real)
    if abs(mu - k) < MU_GUARD:
        raise PoleError(f"mu={mu} lies within {MU_GUARD} of the integer {k}")
    return mu


def phase_integrand(alpha: complex, theta, mods: ModulationCoefficients):
    """p_alpha(theta) = exp[i(alpha*theta - sum_k (x_k sin k theta + y_k cos k theta))].

    Vectorized in theta; 2*pi-periodic exactly when alpha is an integer.
    """
    alpha = complex(alpha)
    th = np.asarray(theta, dtype=float)
    phase = alpha * th.astype(complex)
    for k, (xk, yk) in enumerate(zip(mods.x, mods.y), start=1):
        if xk != 0:
            phase = phase - xk * np.sin(k * th)
        if yk != 0:
            phase = phase - yk * np.cos(k * th)
    out = np.exp(1j * phase)
    if th.ndim == 0:
        return complex(out)
    return out


def anger(alpha: complex, mods: ModulationCoefficients | None = None,
          spec: QuadratureSpec | None = None) -> complex:
    """Generalized Anger function A_alpha of the given modulation.

    Integer orders use the spectrally accurate trapezoid rule (the integrand
    is periodic there); any other order goes through composite Gauss panels.
    """
    mods = mods or ModulationCoefficients.zero()
    spec = spec or QuadratureSpec()
    alpha = complex(alpha)
    n = round(alpha.real)
    if abs(alpha - n) < _INT_SNAP:
        val = periodic_trapezoid(lambda th: phase_integrand(n, th, mods), spec)
    else:
        val = panel_integral_1d(lambda th: phase_integrand(alpha, th, mods),
                                -math.pi, math.pi, spec)
    return val / (2.0 * math.pi)


def gbf_12(n: int, x: complex, y: complex, cfg: SeriesConfig | None = None) -> complex:
    """Two-tone generalized Bessel coefficient as the convolution sum_k J_{n-2k}(x) J_k(y).

    Equals anger(n, ModulationCoefficients((x, y), (0, 0))) at integer n.
    """
    cfg = cfg or SeriesConfig()
    if round(n) != n:
        raise DomainError("gbf_12 is defined for integer order only")
    n = int(n)
    x = complex(x)
    y = complex(y)
    total = bessel_j(n, x, cfg) * bessel_j(0, y, cfg)
    quiet = 0
    for k in range(1, cfg.max_terms + 1):
        up = bessel_j(n - 2 * k, x, cfg) * bessel_j(k, y, cfg)
        dn = bessel_j(n + 2 * k, x, cfg) * bessel_j(-k, y, cfg)
        total += up + dn
        if max(abs(up), abs(dn)) < cfg.tol:
            quiet += 1
            if quiet >= 3:
                return total
        else:
            quiet = 0
    raise NoConvergence(f"generalized Bessel convolution did not stall within {cfg.max_terms} terms")


def _reject_near(theta: float, offset: float, what: str):
    # distance from theta to the lattice offset + 2*pi*Z
    r = (theta - offset) / (2.0 * math.pi)
    if abs(r - round(r)) * 2.0 * math.pi < 1e-9:
        raise BranchPoint(f"theta={theta} is within 1e-9 of a {what}")


def alt_harmonic_closed(mu: complex, theta: float) -> complex:
    """Closed form of sum_n (-1)^n e^{i n theta}/(n+mu) for theta in (-3pi, 3pi).

    On (-pi, pi) the value is pi/sin(pi*mu) * e^{-i mu theta}; the adjacent
    periods are handled by an explicit branch table (the function is
    2*pi-periodic, so shifting theta by one period reproduces the phase
    factor the outer branches require).  Odd multiples of pi are branch
    points of the piecewise form and are rejected.
    """
    mu = check_mu(mu)
    theta = float(theta)
    if not -3.0 * math.pi < theta < 3.0 * math.pi:
        raise DomainError("theta must lie in (-3pi, 3pi)")
    _reject_near(theta, math.pi, "branch point (odd multiple of pi)")
    if theta > math.pi:
        shifted = theta - 2.0 * math.pi
    elif theta < -math.pi:
        shifted = theta + 2.0 * math.pi
    else:
        shifted = theta
    return math.pi / cmath.sin(math.pi * mu) * cmath.exp(-1j * mu * shifted)


def plain_harmonic_closed(mu: complex, theta: float) -> complex:
    """Closed form of sum_n e^{i n theta}/(n+mu) for theta in (-3pi, 3pi).

    Piecewise over (0, 2pi) and (-2pi, 0) with phase factors e^{+i mu pi}
    and e^{-i mu pi}; even multiples of 2pi (including 0) are branch points.
    """
    mu = check_mu(mu)
    theta = float(theta)
    if not -3.0 * math.pi < theta < 3.0 * math.pi:
        raise DomainError("theta must lie in (-3pi, 3pi)")
    _reject_near(theta, 0.0, "branch point (even multiple of pi)")
    if theta > 2.0 * math.pi:
        theta -= 2.0 * math.pi
    elif theta < -2.0 * math.pi:
        theta += 2.0 * math.pi
    base = math.pi / cmath.sin(math.pi * mu)
    if theta > 0.0:
        return base * cmath.exp(1j * mu * math.pi) * cmath.exp(-1j * mu * theta)
    return base * cmath.exp(-1j * mu * math.pi) * cmath.exp(-1j * mu * theta)


def cos_sin_fourier_pair(mu: complex, theta: float) -> tuple[complex, complex]:
    """(sum of cosine series, sum of sine series) with the 1/(n+mu) weight.

    Returns (pi cos(mu theta)/sin(pi mu), -pi sin(mu theta)/sin(pi mu)) for
    theta in [-pi, pi]; these are the real/imaginary building blocks of
    alt_harmonic_closed under e^{i n theta} = cos + i sin.
    """
    mu = check_mu(mu)
    theta = float(theta)
    if not -math.pi <= theta <= math.pi:
        raise DomainError("theta must lie in [-pi, pi]")
    s = cmath.sin(math.pi * mu)
    return (math.pi * cmath.cos(mu * theta) / s,
            -math.pi * cmath.sin(mu * theta) / s)
