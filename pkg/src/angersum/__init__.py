"""Harmonic sums of Bessel and generalized Anger functions, in closed form
and by brute force, with an application to driven two-level transition rates."""

from .anger import (
    ModulationCoefficients,
    alt_harmonic_closed,
    anger,
    cos_sin_fourier_pair,
    gbf_12,
    phase_integrand,
    plain_harmonic_closed,
)
from .appendix import (
    PartialSumProbe,
    bound_check,
    f_appendix,
    f_appendix_prime,
    extremum_angle,
    gap_asymptotic,
    log_partial_sum,
    omega_prime,
    omega_window,
    riemann_expansion_check,
)
from .errors import (
    BranchCutWarning,
    BranchPoint,
    DegenerateRegion,
    DomainError,
    NoConvergence,
    NumericsError,
    PoleError,
)
from .kernels import (
    SeriesConfig,
    bessel_j,
    bessel_product_integral,
    cosine_integral,
    gamma_complex,
)
from .lnsum import (
    CORRECTION_PREFACTOR,
    GBF_SQUARE_PREFACTOR,
    LNParams,
    TruncationSpec,
    anger_ln_closed,
    anger_ln_corrected,
    anger_ln_oracle,
    gbf_square_closed,
    gbf_square_oracle,
    ln1d_closed,
    ln1d_oracle,
)
from .quadrature import (
    QuadratureSpec,
    TriangleRegion,
    lower_antidiagonal_half,
    panel_integral_1d,
    periodic_trapezoid,
    phase_shift_triangle,
    sign_split_integral,
    tanh_sinh,
    triangle_integral,
    upper_antidiagonal_half,
)
from .qubit import (
    QubitParams,
    SweepPoint,
    SweepSpec,
    rate_closed,
    rate_direct,
    rate_multitone,
    rate_multitone_direct,
    sweep,
)

__version__ = "0.1.0"
