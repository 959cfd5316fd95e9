"""Harmonic sums of Bessel/Anger products and their closed forms.

Each closed form here is paired with a brute-force truncated-sum oracle so
the identities can be validated end to end:

  * ``ln1d_*``: sum_n (-1)^n J_{alpha-gamma n}(z) J_{beta+gamma n}(z) / (n+mu)
    equals pi/sin(pi mu) * J_{alpha+gamma mu}(z) * J_{beta-gamma mu}(z).
  * ``anger_ln_*``: the same sum built from generalized Anger functions of a
    multi-tone modulation.  The product closed form is exact for
    gamma <= 1/2; for gamma in (1/2, 1] and integer alpha, beta two corner
    triangles of the (theta, phi) period box pick up phase factors and
    contribute explicit correction integrals (``anger_ln_corrected``).
  * ``gbf_square_*``: sum_n A_n(x, y)^2 / (n+mu), resolved into an Anger
    square plus a sign-split integral over the box.

Two scalar prefactors below were fixed by fitting against the oracles (see
tests/test_lnsum.py, the calibration tests): the correction term enters as
2*pi*i * e^{+i pi mu} * I_plus - 2*pi*i * e^{-i pi mu} * I_minus with I_pm
the (1/4pi^2)-normalized triangle integrals, and the squared-sum closed
form carries an overall factor pi.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from scipy.special import loggamma as _loggamma

from .anger import ModulationCoefficients, anger, check_mu, phase_integrand
from .errors import DomainError, NoConvergence
from .kernels import SeriesConfig, bessel_j, gamma_complex
from .quadrature import (
    QuadratureSpec,
    phase_shift_triangle,
    sign_split_integral,
    triangle_integral,
)

# Fitted against the truncated-sum oracles; see the calibration tests.
CORRECTION_PREFACTOR = 2j * math.pi
GBF_SQUARE_PREFACTOR = math.pi

_MIN_AREA = 1e-14


@dataclass(frozen=True)
class LNParams:
    """Parameters (alpha, beta, gamma, mu, z) of the one-dimensional sum."""

    alpha: complex
    beta: complex
    gamma: float
    mu: complex
    z: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))
        object.__setattr__(self, "gamma", float(self.gamma))
        object.__setattr__(self, "mu", complex(self.mu))
        object.__setattr__(self, "z", complex(self.z))
        if not 0.0 < self.gamma <= 1.0:
            raise ValueError("gamma must lie in (0, 1]")
        check_mu(self.mu)


@dataclass(frozen=True)
class TruncationSpec:
    """Stall-based truncation control for the brute-force sums.

    The sums stop once ``stall_count`` consecutive index shells have both
    wing terms below ``tail_tol``; hitting ``n_max`` first is an error.
    """

    n_max: int = 500
    tail_tol: float = 1e-12
    stall_count: int = 10

    def __post_init__(self):
        if self.n_max < 10:
            raise ValueError("n_max must be at least 10")
        if not self.tail_tol > 0.0:
            raise ValueError("tail_tol must be positive")
        if self.stall_count < 1:
            raise ValueError("stall_count must be positive")


_DEFAULT_TRUNC = TruncationSpec()

# beyond this order magnitude the Bessel factors individually overflow
# float64 and the product is computed in fused log-scaled form
_ORDER_SWITCH = 60.0


def _stalled_shell_sum(term, trunc: TruncationSpec, label: str):
    """term(0) + sum of shells [term(n) + term(-n)] under the stall criterion.

    Returns (value, None) once ``stall_count`` consecutive shells have both
    wings below ``tail_tol``, else (partial value, next shell index) after
    ``n_max`` shells so the caller can decide how to treat the tail.
    """
    total = term(0)
    quiet = 0
    for n in range(1, trunc.n_max + 1):
        up = term(n)
        dn = term(-n)
        total += up + dn
        if max(abs(up), abs(dn)) < trunc.tail_tol:
            quiet += 1
            if quiet >= trunc.stall_count:
                return total, None
        else:
            quiet = 0
    return total, trunc.n_max + 1


def _smooth_window(u: float) -> float:
    """C-infinity smoothstep: 1 for u <= 0, 0 for u >= 1."""
    if u <= 0.0:
        return 1.0
    if u >= 1.0:
        return 0.0
    e0 = math.exp(-1.0 / u)
    e1 = math.exp(-1.0 / (1.0 - u))
    return e1 / (e0 + e1)


def _windowed_tail_sum(term, start: int, partial: complex, n_total: int) -> complex:
    """Finish a slowly decaying oscillatory shell sum with a smooth taper.

    Shells up to n_total/2 enter with weight one, then a C-infinity window
    ramps to zero at n_total.  For tails of the form (oscillation) * n^-s
    this converges superalgebraically in the window width, where a sharp
    truncation would leave an O(N^(1-s)) error.
    """
    total = partial
    half = 0.5 * n_total
    for n in range(start, n_total + 1):
        w = _smooth_window((n - half) / half)
        if w == 0.0:
            break
        up = term(n)
        dn = term(-n)
        total += w * (up + dn)
    return total


def _richardson_tail_sum(term, start: int, partial: complex, exponent: complex,
                         levels: int = 4) -> complex:
    """Finish a pure power-law shell sum by Richardson extrapolation.

    The partial sums satisfy S(L) = S_inf - A L^-p (1 + a1/L + ...) with the
    exponent p known exactly, so a ladder over L, 2L, ..., 2^levels L removes
    the leading ``levels + 1`` powers.  Used when the tail has no usable
    oscillation (the gamma = 1 case, where the phase factors collapse to a
    constant sign).
    """
    base = 1 << max(9, (start - 1).bit_length())
    checkpoints = [base * 2 ** k for k in range(levels + 1)]
    sums = []
    total = partial
    n = start
    for mark in checkpoints:
        while n <= mark:
            total += term(n) + term(-n)
            n += 1
        sums.append(total)
    order = exponent
    vals = sums
    while len(vals) > 1:
        r = cmath.exp(-order * math.log(2.0))
        if abs(1.0 - r) < 1e-3:
            raise NoConvergence("power-law tail exponent too close to a Richardson degeneracy")
        vals = [(vals[i + 1] - r * vals[i]) / (1.0 - r) for i in range(len(vals) - 1)]
        order = order + 1
    return vals[0]


def _normalized_bessel_series(nu: complex, z: complex, cfg: SeriesConfig) -> complex:
    """Ascending Bessel series divided by its leading term.

    O(1)-sized for any order, including deeply negative real parts where the
    leading term itself would overflow; the interior near-pole terms around
    k = -Re(nu) are damped by (z^2/4)^k / k! and negligible once
    |Re(nu)| >> z^2/4.
    """
    ratio = -0.25 * z * z
    term = 1.0 + 0j
    total = term
    quiet = 0
    for k in range(1, cfg.max_terms + 1):
        term = term * ratio / (k * (nu + k))
        total += term
        if abs(term) < cfg.tol:
            quiet += 1
            if quiet >= 3:
                return total
        else:
            quiet = 0
    raise NoConvergence(f"normalized Bessel series stalled past {cfg.max_terms} terms")


def _bessel_pair_product(p_ord: complex, q_ord: complex, z: complex,
                         cfg: SeriesConfig) -> complex:
    """J_{p}(z) * J_{q}(z), stable when one order is deeply negative.

    The growing and shrinking leading factors are fused in log space
    (reflection turns 1/Gamma(p+1) into Gamma(-p) sin(pi (p+1))/pi), so the
    product never overflows even though the factors individually would.
    """
    if min(p_ord.real, q_ord.real) > -_ORDER_SWITCH:
        return bessel_j(p_ord, z, cfg) * bessel_j(q_ord, z, cfg)
    if p_ord.real > q_ord.real:
        p_ord, q_ord = q_ord, p_ord
    n_near = round(p_ord.real)
    if abs(p_ord - n_near) < 1e-12:
        # exact negative integer order: J_{-m} = (-1)^m J_m underflows to
        # zero at these magnitudes, and so does the product
        return 0j
    log_pref = ((p_ord + q_ord) * cmath.log(z / 2.0)
                + complex(_loggamma(complex(-p_ord)))
                - complex(_loggamma(complex(q_ord + 1.0)))
                + cmath.log(cmath.sin(math.pi * (p_ord + 1.0)))
                - math.log(math.pi))
    pref = cmath.exp(log_pref)
    return (pref * _normalized_bessel_series(p_ord, z, cfg)
            * _normalized_bessel_series(q_ord, z, cfg))


def ln1d_oracle(p: LNParams, trunc: TruncationSpec | None = None,
                cfg: SeriesConfig | None = None) -> complex:
    """Brute-force evaluation of the alternating Bessel-product harmonic sum.

    Shells are summed outward under the stall criterion, which terminates
    quickly whenever the orders hit the super-exponential Bessel decay
    (integer-order ladders, z = 0, small z).  For generic non-integer
    orders the product tail only decays like n^-(2 + Re(alpha+beta)) times
    an oscillation, so when the stall never fires the sum is finished by a
    smooth-window taper (oscillatory tails, gamma < 1) or by known-exponent
    Richardson extrapolation (the sign-constant tail at gamma = 1).  Tail
    terms beyond the float64 overflow order use the fused product form.
    """
    trunc = trunc or _DEFAULT_TRUNC
    cfg = cfg or SeriesConfig()
    if not (p.alpha + p.beta).real > -1.0:
        raise DomainError("the sum requires Re(alpha + beta) > -1")

    def term(n: int) -> complex:
        sign = -1.0 if n % 2 else 1.0
        prod = _bessel_pair_product(p.alpha - p.gamma * n, p.beta + p.gamma * n, p.z, cfg)
        return sign * prod / (n + p.mu)

    partial, resume = _stalled_shell_sum(term, trunc, "Bessel-product sum")
    if resume is None:
        return partial

    beat = 1.0 - p.gamma
    if beat <= 1e-8:
        return _richardson_tail_sum(term, resume, partial, 1.0 + p.alpha + p.beta)
    if beat < 6e-4:
        raise NoConvergence(
            "tail oscillation period exceeds the supported window budget "
            f"(gamma={p.gamma}); use gamma = 1 exactly or gamma <= {1 - 6e-4:.4f}"
        )
    n_total = min(max(4 * trunc.n_max, int(30.0 / beat)), 60000)
    return _windowed_tail_sum(term, resume, partial, n_total)


def ln1d_closed(p: LNParams, cfg: SeriesConfig | None = None) -> complex:
    """Closed form pi/sin(pi mu) * J_{alpha+gamma mu}(z) * J_{beta-gamma mu}(z).

    At z = 0 the Bessel factors individually degenerate (one order has
    negative real part whenever the other is positive), so the product is
    replaced by its limit 1/(Gamma(1+a) Gamma(1+b)) when alpha + beta = 0,
    and by 0 when Re(alpha + beta) > 0.
    """
    if not (p.alpha + p.beta).real > -1.0:
        raise DomainError("the closed form requires Re(alpha + beta) > -1")
    mu = check_mu(p.mu)
    a = p.alpha + p.gamma * mu
    b = p.beta - p.gamma * mu
    prefactor = math.pi / cmath.sin(math.pi * mu)
    if p.z == 0:
        order_sum = p.alpha + p.beta
        if abs(order_sum) < 1e-12:
            return prefactor / (gamma_complex(1.0 + a) * gamma_complex(1.0 + b))
        if order_sum.real > 0:
            return 0j
        raise DomainError("closed form diverges at z=0 for Re(alpha+beta) < 0")
    return prefactor * bessel_j(a, p.z, cfg) * bessel_j(b, p.z, cfg)


def anger_ln_oracle(alpha: complex, beta: complex, gamma: float, mu: complex,
                    mods: ModulationCoefficients,
                    trunc: TruncationSpec | None = None,
                    spec: QuadratureSpec | None = None) -> complex:
    """Brute-force evaluation of the Anger-product harmonic sum.

    Integer-order ladders stall quickly (the coefficients decay faster than
    any power past the modulation bandwidth).  Non-integer orders leave a
    sinc-like boundary contribution, so each factor only decays like 1/n
    and the shell tail like n^-3 times an oscillation; when the stall never
    fires, the sum is finished with the smooth-window taper.
    """
    trunc = trunc or _DEFAULT_TRUNC
    if not 0.0 < gamma <= 1.0:
        raise DomainError("gamma must lie in (0, 1]")
    mu = check_mu(mu)
    alpha = complex(alpha)
    beta = complex(beta)

    def term(n: int) -> complex:
        sign = -1.0 if n % 2 else 1.0
        return (sign * anger(alpha - gamma * n, mods, spec)
                * anger(beta + gamma * n, mods, spec) / (n + mu))

    partial, resume = _stalled_shell_sum(term, trunc, "Anger-product sum")
    if resume is None:
        return partial
    beat = 1.0 - gamma
    if beat < 6e-4:
        raise NoConvergence(
            "Anger-product tail did not stall and its oscillation is too slow "
            f"to window (gamma={gamma})"
        )
    n_total = min(max(4 * trunc.n_max, int(30.0 / beat)), 20000)
    return _windowed_tail_sum(term, resume, partial, n_total)


def anger_ln_closed(alpha: complex, beta: complex, gamma: float, mu: complex,
                    mods: ModulationCoefficients,
                    spec: QuadratureSpec | None = None) -> complex:
    """Closed form pi/sin(pi mu) * A_{alpha+gamma mu} * A_{beta-gamma mu}.

    Exact for gamma in (0, 1/2]; beyond that the phase identity behind the
    derivation breaks on two corner triangles and anger_ln_corrected must be
    used instead.
    """
    if not 0.0 < gamma <= 0.5:
        raise DomainError("product closed form is valid for gamma in (0, 1/2]; "
                          "use anger_ln_corrected for gamma > 1/2")
    mu = check_mu(mu)
    prefactor = math.pi / cmath.sin(math.pi * mu)
    return (prefactor * anger(complex(alpha) + gamma * mu, mods, spec)
            * anger(complex(beta) - gamma * mu, mods, spec))


def anger_ln_corrected(alpha: int, beta: int, gamma: float, mu: complex,
                       mods: ModulationCoefficients,
                       spec: QuadratureSpec | None = None) -> complex:
    """Anger-product closed form plus the corner-triangle corrections.

    For gamma in (1/2, 1] and integer alpha, beta the sum equals

        pi/sin(pi mu) A_a A_b
          + 2 pi i [e^{+i pi mu} I_plus - e^{-i pi mu} I_minus],

    with a = alpha + gamma mu, b = beta - gamma mu, and I_pm the triangle
    integrals of p_a(theta) p_b(phi) over the corners where
    gamma*(phi - theta) leaves (-pi, pi), normalized by 1/(4 pi^2).  The
    triangles shrink to points as gamma -> 1/2+, restoring the plain
    product form continuously.
    """
    if not 0.5 < gamma <= 1.0:
        raise DomainError("correction form applies for gamma in (1/2, 1]")
    if round(alpha) != alpha or round(beta) != beta:
        raise DomainError("correction form requires integer alpha and beta")
    mu = check_mu(mu)
    spec = spec or QuadratureSpec()
    a = int(alpha) + gamma * mu
    b = int(beta) - gamma * mu
    main = (math.pi / cmath.sin(math.pi * mu)) * anger(a, mods, spec) * anger(b, mods, spec)

    leg = 2.0 * math.pi - math.pi / gamma
    if 0.5 * leg * leg < _MIN_AREA:
        return main

    def f2(th, ph):
        return phase_integrand(a, th, mods) * phase_integrand(b, ph, mods)

    norm = 1.0 / (4.0 * math.pi ** 2)
    i_plus = triangle_integral(f2, phase_shift_triangle(gamma, True), spec) * norm
    i_minus = triangle_integral(f2, phase_shift_triangle(gamma, False), spec) * norm
    twist = cmath.exp(1j * math.pi * mu)
    return main + CORRECTION_PREFACTOR * (twist * i_plus - i_minus / twist)


def gbf_square_oracle(mods: ModulationCoefficients, mu: complex,
                      trunc: TruncationSpec | None = None,
                      spec: QuadratureSpec | None = None) -> complex:
    """Brute-force truncation of sum_n A_n(x, y)^2 / (n + mu)."""
    trunc = trunc or _DEFAULT_TRUNC
    mu = check_mu(mu)

    def term(n: int) -> complex:
        val = anger(n, mods, spec)
        return val * val / (n + mu)

    return _stalled_shell_sum(term, trunc, "squared-coefficient sum")


def gbf_square_closed(mods: ModulationCoefficients, mu: complex,
                      spec: QuadratureSpec | None = None) -> complex:
    """Closed form pi * (cot(pi mu) A_{-mu}^2 + i B_{-mu}).

    B_{-mu} is the sign-split box integral of p_{-mu}(theta) p_{-mu}(phi)
    normalized by 1/(4 pi^2); the split keeps the sgn(theta + phi)
    discontinuity on panel boundaries only.
    """
    mu = check_mu(mu)
    spec = spec or QuadratureSpec()
    a = anger(-mu, mods, spec)

    def f2(th, ph):
        return phase_integrand(-mu, th, mods) * phase_integrand(-mu, ph, mods)

    b = sign_split_integral(f2, spec) / (4.0 * math.pi ** 2)
    cot = cmath.cos(math.pi * mu) / cmath.sin(math.pi * mu)
    return GBF_SQUARE_PREFACTOR * (cot * a * a + 1j * b)
