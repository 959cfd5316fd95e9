"""Transition rate of a periodically driven two-level system.

The steady-state transition rate under a single-tone drive is the
Lorentzian-weighted photon-resonance sum

    W = (Delta^2 / 2) * sum_n Gamma2 * J_n(x)^2 / ((eps - omega n)^2 + Gamma2^2),

with modulation index x = A / omega.  ``rate_direct`` evaluates the sum as
written (the oracle route, integer-order Bessel via scipy), while
``rate_closed`` uses the partial-fraction resolvent: with
mu_pm = (eps +/- i Gamma2) / omega,

    W = Re{ i pi Delta^2 / (4 omega) * [ J_{mu+}(x) J_{-mu+}(x) / sin(pi mu+)
                                        - J_{mu-}(x) J_{-mu-}(x) / sin(pi mu-) ] }.

The 1/omega in the prefactor was fixed by the same oracle-calibration
protocol as the lnsum constants (the A = 0 Lorentzian limit pins it down
analytically as well).  Multi-tone drives replace J_n by the generalized
Anger coefficients A_n of the tone vector and route the two partial
fractions through the squared-coefficient closed form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from scipy import special as _sp

from .anger import ModulationCoefficients, anger
from .errors import DomainError, NoConvergence, NumericsError
from .kernels import bessel_j
from .lnsum import TruncationSpec, gbf_square_closed
from .quadrature import QuadratureSpec

_DEFAULT_TRUNC = TruncationSpec()
_REALNESS_TOL = 1e-9


@dataclass(frozen=True)
class QubitParams:
    """Drive and decoherence parameters of the two-level system.

    ``a_tones[k-1]`` and ``b_tones[k-1]`` are the two quadrature amplitudes
    of the k-th drive harmonic; the derived modulation amplitudes are
    a_tones/omega and b_tones/omega.  ``delta`` is the tunnel coupling and
    enters only as the overall scale delta^2/2.
    """

    gamma2: float
    epsilon: float
    omega: float
    a_tones: tuple = (0.0,)
    b_tones: tuple | None = None
    delta: float = 1.0

    def __post_init__(self):
        a = tuple(float(v) for v in self.a_tones)
        b = self.b_tones
        b = (0.0,) * len(a) if b is None else tuple(float(v) for v in b)
        object.__setattr__(self, "a_tones", a)
        object.__setattr__(self, "b_tones", b)
        if not self.omega > 0.0:
            raise ValueError("omega must be positive")
        if not self.gamma2 > 0.0:
            raise ValueError("gamma2 must be positive")
        if len(a) < 1 or len(a) != len(b):
            raise ValueError("a_tones and b_tones must be equally long, with at least one tone")

    @property
    def single_tone(self) -> bool:
        return len(self.a_tones) == 1 and all(v == 0.0 for v in self.b_tones)

    def mods(self) -> ModulationCoefficients:
        return ModulationCoefficients(
            tuple(a / self.omega for a in self.a_tones),
            tuple(b / self.omega for b in self.b_tones),
        )

    def mu_pair(self) -> tuple[complex, complex]:
        mu = complex(self.epsilon, self.gamma2) / self.omega
        return mu, mu.conjugate()


@dataclass(frozen=True)
class SweepSpec:
    """A scan of one drive parameter over [start, stop] with ``count`` points."""

    parameter: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.parameter not in ("epsilon", "A", "omega"):
            raise ValueError("parameter must be one of epsilon, A, omega")
        if not self.start < self.stop:
            raise ValueError("start must be smaller than stop")
        if self.count < 2:
            raise ValueError("count must be at least 2")


@dataclass(frozen=True)
class SweepPoint:
    value: float
    rate: float
    error: str = ""


def _lorentzian_point(q: QubitParams) -> float:
    return 0.5 * q.delta ** 2 * q.gamma2 / (q.epsilon ** 2 + q.gamma2 ** 2)


def rate_direct(q: QubitParams, trunc: TruncationSpec | None = None) -> float:
    """Single-tone rate by direct truncation of the resonance sum."""
    trunc = trunc or _DEFAULT_TRUNC
    if not q.single_tone:
        raise DomainError("rate_direct handles the single-tone drive; "
                          "use rate_multitone_direct otherwise")
    x = abs(q.a_tones[0]) / q.omega
    g2 = q.gamma2

    def term(n: int) -> float:
        jn = float(_sp.jv(n, x))
        return g2 * jn * jn / ((q.epsilon - q.omega * n) ** 2 + g2 * g2)

    # the Lorentzian peak sits near epsilon/omega; never stall before it
    n_floor = int(abs(q.epsilon) / q.omega) + 5
    total = term(0)
    quiet = 0
    for n in range(1, trunc.n_max + 1):
        up = term(n)
        dn = term(-n)
        total += up + dn
        if max(up, dn) < trunc.tail_tol and n >= n_floor:
            quiet += 1
            if quiet >= trunc.stall_count:
                return 0.5 * q.delta ** 2 * total
        else:
            quiet = 0
    raise NoConvergence(f"resonance sum did not stall within n_max={trunc.n_max}")


def _enforce_real(w: complex, context: str) -> float:
    if abs(w.imag) > _REALNESS_TOL * max(abs(w.real), 1e-300):
        raise NumericsError(
            f"{context}: imaginary residue {w.imag:.3e} exceeds "
            f"{_REALNESS_TOL} of the real part {w.real:.3e}"
        )
    return w.real


def rate_closed(q: QubitParams) -> float:
    """Single-tone rate through the partial-fraction Bessel-product closed form."""
    if not q.single_tone:
        raise DomainError("rate_closed handles the single-tone drive; "
                          "use rate_multitone otherwise")
    x = abs(q.a_tones[0]) / q.omega
    if x == 0.0:
        return _lorentzian_point(q)
    mu_p, mu_m = q.mu_pair()

    def bracket(mu: complex) -> complex:
        import cmath
        return bessel_j(mu, x) * bessel_j(-mu, x) / cmath.sin(math.pi * mu)

    w = 1j * math.pi * q.delta ** 2 / (4.0 * q.omega) * (bracket(mu_p) - bracket(mu_m))
    return _enforce_real(w, "rate_closed")


def rate_multitone_direct(q: QubitParams, trunc: TruncationSpec | None = None,
                          spec: QuadratureSpec | None = None) -> complex:
    """Direct truncation of the multi-tone sum with squared Anger coefficients.

    Returns the formal complex value: the coefficients enter squared (not in
    modulus), so drives with cosine-quadrature tones give a complex number
    whose real part is the rate-like quantity.
    """
    trunc = trunc or _DEFAULT_TRUNC
    mods = q.mods()
    if mods.is_zero:
        return complex(_lorentzian_point(q))
    g2 = q.gamma2

    def term(n: int) -> complex:
        an = anger(n, mods, spec)
        return g2 * an * an / ((q.epsilon - q.omega * n) ** 2 + g2 * g2)

    n_floor = int(abs(q.epsilon) / q.omega) + 5
    total = term(0)
    quiet = 0
    for n in range(1, trunc.n_max + 1):
        up = term(n)
        dn = term(-n)
        total += up + dn
        if max(abs(up), abs(dn)) < trunc.tail_tol and n >= n_floor:
            quiet += 1
            if quiet >= trunc.stall_count:
                return 0.5 * q.delta ** 2 * total
        else:
            quiet = 0
    raise NoConvergence(f"multi-tone sum did not stall within n_max={trunc.n_max}")


def _rate_multitone_complex(q: QubitParams, spec: QuadratureSpec | None = None) -> complex:
    mods = q.mods()
    if mods.is_zero:
        return complex(_lorentzian_point(q))
    mu_p, mu_m = q.mu_pair()
    s_p = gbf_square_closed(mods, -mu_p, spec)
    s_m = gbf_square_closed(mods, -mu_m, spec)
    return -1j * q.delta ** 2 / (4.0 * q.omega) * (s_p - s_m)


def rate_multitone(q: QubitParams, spec: QuadratureSpec | None = None,
                   trunc: TruncationSpec | None = None) -> float:
    """Multi-tone rate through the squared-coefficient closed form.

    For sine-quadrature drives (all b_tones zero) the value is real up to
    roundoff and that is enforced; with cosine-quadrature tones present the
    formal sum is genuinely complex and the real part is returned.
    """
    w = _rate_multitone_complex(q, spec)
    if all(v == 0.0 for v in q.b_tones):
        return _enforce_real(w, "rate_multitone")
    return w.real


def _with_parameter(q: QubitParams, name: str, value: float) -> QubitParams:
    if name == "epsilon":
        return replace(q, epsilon=value)
    if name == "omega":
        return replace(q, omega=value)
    if name == "A":
        return replace(q, a_tones=(value,) + q.a_tones[1:])
    raise ValueError(f"unknown sweep parameter {name!r}")


def sweep(q: QubitParams, s: SweepSpec, method: str = "direct",
          trunc: TruncationSpec | None = None,
          spec: QuadratureSpec | None = None) -> list[SweepPoint]:
    """Scan one parameter and collect (value, rate) rows in ascending order.

    A numerical failure at one point is recorded in that row's ``error``
    field (with a NaN rate) and never aborts the rest of the sweep.
    """
    if method not in ("direct", "closed"):
        raise ValueError("method must be 'direct' or 'closed'")
    step = (s.stop - s.start) / (s.count - 1)
    rows = []
    for i in range(s.count):
        v = s.start + step * i
        try:
            qq = _with_parameter(q, s.parameter, v)
            if qq.single_tone:
                rate = rate_direct(qq, trunc) if method == "direct" else rate_closed(qq)
            else:
                rate = (rate_multitone_direct(qq, trunc, spec).real
                        if method == "direct" else rate_multitone(qq, spec, trunc))
            rows.append(SweepPoint(v, rate))
        except (NumericsError, ValueError, OverflowError) as exc:
            rows.append(SweepPoint(v, math.nan, f"{type(exc).__name__}: {exc}"))
    return rows
