"""Deterministic one- and two-dimensional quadrature rules.

Periodic integrands are handled by the equispaced trapezoid rule, which is
spectrally accurate over a full period.  Smooth non-periodic integrands use
composite Gauss-Legendre panels with panel doubling as the convergence test.
Two-dimensional integrals are taken over triangles through an affine map
composed with a collapsed tensor rule, so that piecewise integrands (the
sign-split integral below) are never sampled across their discontinuity
line.  Integrands with an integrable algebraic endpoint singularity go
through the tanh-sinh rule.

All rules accept complex-valued integrands.  Callables are probed with a
numpy array of abscissae first and fall back to pointwise evaluation, so
both vectorized and scalar-only integrands work.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DegenerateRegion, NoConvergence

_TWO_PI = 2.0 * math.pi
_MIN_AREA = 1e-14


@dataclass(frozen=True)
class QuadratureSpec:
    """Resolution and tolerance knobs shared by the quadrature routines.

    ``nodes_1d`` is the starting node count for the trapezoid rule and sets
    the starting panel count for the 1D Gauss rule.  ``panels_2d`` is the
    target number of panels per axis for triangle integration (Gauss order 8
    within each panel).  ``tol`` is the stopping tolerance of the doubling
    tests, applied absolutely for results of modest size and relatively for
    large ones.
    """

    nodes_1d: int = 512
    panels_2d: int = 64
    tol: float = 1e-10

    def __post_init__(self):
        if self.nodes_1d < 16:
            raise ValueError("nodes_1d must be at least 16")
        if self.panels_2d < 1:
            raise ValueError("panels_2d must be positive")
        if not self.tol > 0.0:
            raise ValueError("tol must be positive")


@dataclass(frozen=True)
class TriangleRegion:
    """A triangle with vertices inside the closed period box [-pi, pi]^2."""

    vertices: tuple

    def __post_init__(self):
        verts = tuple((float(t), float(p)) for t, p in self.vertices)
        if len(verts) != 3:
            raise ValueError("a triangle needs exactly three vertices")
        bound = math.pi + 1e-9
        for t, p in verts:
            if abs(t) > bound or abs(p) > bound:
                raise ValueError("vertices must lie inside the period box")
        object.__setattr__(self, "vertices", verts)

    @property
    def area(self) -> float:
        (t0, p0), (t1, p1), (t2, p2) = self.vertices
        return 0.5 * abs((t1 - t0) * (p2 - p0) - (t2 - t0) * (p1 - p0))


def upper_antidiagonal_half() -> TriangleRegion:
    """Half of the period box where theta + phi > 0."""
    p = math.pi
    return TriangleRegion(((-p, p), (p, p), (p, -p)))


def lower_antidiagonal_half() -> TriangleRegion:
    """Half of the period box where theta + phi < 0."""
    p = math.pi
    return TriangleRegion(((-p, p), (-p, -p), (p, -p)))


def phase_shift_triangle(gamma: float, positive: bool = True) -> TriangleRegion:
    """Corner triangle of the box where gamma*(phi - theta) leaves (-pi, pi).

    Nonempty only for gamma > 1/2; at gamma = 1/2 the triangle collapses to
    a corner point, and callers integrating over it should short-circuit to
    zero instead of constructing it.
    """
    if not 0.5 < gamma <= 1.0:
        raise ValueError("phase-shift triangles exist only for gamma in (1/2, 1]")
    p = math.pi
    s = p / gamma
    if positive:
        return TriangleRegion(((-p, s - p), (-p, p), (p - s, p)))
    return TriangleRegion(((p, p - s), (p, -p), (s - p, -p)))


def _sample(f, x: np.ndarray) -> np.ndarray:
    """Evaluate f on a 1D array of abscissae, tolerating scalar-only callables."""
    try:
        y = np.asarray(f(x))
    except (TypeError, ValueError):
        return np.array([complex(f(t)) for t in x])
    if y.shape == x.shape:
        return y.astype(complex, copy=False)
    if y.ndim == 0:
        return np.full(x.shape, complex(y))
    return np.array([complex(f(t)) for t in x])


def _sample2(f2, th: np.ndarray, ph: np.ndarray) -> np.ndarray:
    try:
        y = np.asarray(f2(th, ph))
    except (TypeError, ValueError):
        return np.array([complex(f2(t, p)) for t, p in zip(th, ph)])
    if y.shape == th.shape:
        return y.astype(complex, copy=False)
    if y.ndim == 0:
        return np.full(th.shape, complex(y))
    return np.array([complex(f2(t, p)) for t, p in zip(th, ph)])


def _stable(curr: complex, prev: complex, tol: float) -> bool:
    return abs(curr - prev) < tol * max(1.0, abs(curr))


def periodic_trapezoid(f, spec: QuadratureSpec | None = None) -> complex:
    """Integrate a smooth 2*pi-periodic function over [-pi, pi].

    Uses the equispaced trapezoid rule at ``nodes_1d`` nodes and accepts the
    value once doubling the node count moves it by less than ``tol``.
    """
    spec = spec or QuadratureSpec()
    n = spec.nodes_1d
    prev = None
    for _ in range(3):
        nodes = -math.pi + _TWO_PI * np.arange(n) / n
        val = complex(_TWO_PI * np.sum(_sample(f, nodes)) / n)
        if prev is not None and _stable(val, prev, spec.tol):
            return val
        prev = val
        n *= 2
    raise NoConvergence(
        f"trapezoid rule not stable at {n // 2} nodes (last change {abs(val - prev):.3e})"
    )


@lru_cache(maxsize=None)
def _gauss_rule(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    return x, w


def _composite_nodes(a: float, b: float, panels: int, order: int):
    x, w = _gauss_rule(order)
    edges = np.linspace(a, b, panels + 1)
    mid = 0.5 * (edges[1:] + edges[:-1])
    half = 0.5 * (edges[1:] - edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def panel_integral_1d(f, a: float, b: float, spec: QuadratureSpec | None = None,
                      order: int = 8) -> complex:
    """Composite Gauss-Legendre integral of a continuous function on [a, b]."""
    spec = spec or QuadratureSpec()
    panels = max(4, spec.nodes_1d // 64)
    prev = None
    while panels <= 4096:
        nodes, weights = _composite_nodes(a, b, panels, order)
        val = complex(np.sum(weights * _sample(f, nodes)))
        if prev is not None and _stable(val, prev, spec.tol):
            return val
        prev = val
        panels *= 2
    raise NoConvergence("composite Gauss rule not stable at 4096 panels")


def triangle_integral(f2, region: TriangleRegion, spec: QuadratureSpec | None = None,
                      order: int = 8) -> complex:
    """Integrate f2(theta, phi) over a triangle.

    The triangle is mapped affinely from the reference triangle, which is in
    turn covered by a tensor Gauss rule collapsed along one edge (the Duffy
    map xi = u(1-v), eta = u*v with Jacobian u).  Panels are doubled per
    axis until the result is stable to ``tol``.
    """
    spec = spec or QuadratureSpec()
    area = region.area
    if area < _MIN_AREA:
        raise DegenerateRegion(f"triangle area {area:.3e} below {_MIN_AREA}")
    (t0, p0), (t1, p1), (t2, p2) = region.vertices
    e1t, e1p = t1 - t0, p1 - p0
    e2t, e2p = t2 - t0, p2 - p0
    jac = 2.0 * area

    panels = max(2, spec.panels_2d // 4)
    prev = None
    while panels <= 4 * spec.panels_2d:
        u, wu = _composite_nodes(0.0, 1.0, panels, order)
        xi = u[:, None] * (1.0 - u[None, :])
        eta = u[:, None] * u[None, :]
        th = t0 + e1t * xi + e2t * eta
        ph = p0 + e1p * xi + e2p * eta
        wgt = (wu[:, None] * wu[None, :]) * u[:, None] * jac
        vals = _sample2(f2, th.ravel(), ph.ravel())
        val = complex(np.sum(wgt.ravel() * vals))
        if prev is not None and _stable(val, prev, spec.tol):
            return val
        prev = val
        panels *= 2
    raise NoConvergence(
        f"triangle rule not stable at {panels // 2} panels per axis"
    )


def sign_split_integral(f2, spec: QuadratureSpec | None = None) -> complex:
    """Integral of f2(theta, phi) * sgn(theta + phi) over the period box.

    Computed as the difference of the two triangle integrals on either side
    of the line theta + phi = 0, so no quadrature panel ever straddles the
    sign discontinuity.
    """
    spec = spec or QuadratureSpec()
    plus = triangle_integral(f2, upper_antidiagonal_half(), spec)
    minus = triangle_integral(f2, lower_antidiagonal_half(), spec)
    return plus - minus


def tanh_sinh(f, a: float, b: float, tol: float = 1e-12, max_level: int = 12) -> complex:
    """Double-exponential quadrature on (a, b).

    Converges geometrically in the level for analytic integrands and still
    converges for integrable algebraic endpoint singularities, which defeat
    fixed-order panel rules.  The endpoints themselves are never sampled.
    """
    half = 0.5 * (b - a)
    # wide enough that even a dist^(-0.95) endpoint singularity has a
    # negligible transformed tail; nodes whose endpoint distance underflows
    # double precision are dropped below
    t_max = 6.9
    prev = None
    for level in range(2, max_level + 1):
        h = 2.0 ** (1 - level)
        t = np.arange(-int(t_max / h), int(t_max / h) + 1) * h
        s = (math.pi / 2.0) * np.sinh(t)
        # dm = 1 - |tanh(s)|, formed without cancellation so nodes keep
        # approaching the endpoints long after tanh saturates in float64;
        # an endpoint at coordinate 0 is then resolved to ~1e-280
        with np.errstate(over="ignore"):
            dm = 2.0 / (np.exp(2.0 * np.abs(s)) + 1.0)
        w = (math.pi / 2.0) * np.cosh(t) * dm * (2.0 - dm)
        keep = dm * abs(half) > 1e-280
        nodes = np.where(t >= 0.0, b - half * dm, a + half * dm)[keep]
        val = complex(half * h * np.sum(w[keep] * _sample(f, nodes)))
        if prev is not None and abs(val - prev) < tol * max(1.0, abs(val)):
            return val
        prev = val
    raise NoConvergence(f"tanh-sinh rule not stable at level {max_level}")
