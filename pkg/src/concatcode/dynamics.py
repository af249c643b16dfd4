"""Orbits under concatenation, fixed points, Jacobians and thresholds.

Concatenating a code with itself k times composes its coding map k times;
a noise channel is tamed when its orbit converges to the identity.  This
module iterates orbits, locates one-dimensional fixed points, searches
noise thresholds along rays of diagonal channels, and evaluates the
closed form of the quadratic error recursion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .channel import DiagonalChannel, StokesChannel, max_entry_distance
from .codingmap import COMPONENTS, c_constants, diagonal_map, general_map
from .stabilizer import StabilizerCode

DEFAULT_K_MAX = 60
DEFAULT_CONV_TOL = 1e-9


@dataclass(frozen=True)
class OrbitLevel:
    k: int
    channel: DiagonalChannel | StokesChannel
    distance: float


@dataclass(frozen=True)
class OrbitRecord:
    levels: tuple[OrbitLevel, ...]
    converged: bool
    iterations_used: int


@dataclass(frozen=True)
class RaySpec:
    """A one-parameter family [1,1,1] - eps * direction of diagonal channels."""

    family: str
    direction: tuple[float, float, float]

    def __post_init__(self):
        if max(abs(v) for v in self.direction) <= 0.0:
            raise ValueError("ray direction must be nonzero")

    @classmethod
    def depolarizing_ray(cls) -> "RaySpec":
        return cls("depolarizing", (1.0, 1.0, 1.0))

    @classmethod
    def dephasing_ray(cls) -> "RaySpec":
        return cls("dephasing", (0.0, 1.0, 1.0))

    @classmethod
    def custom(cls, direction: Sequence[float]) -> "RaySpec":
        dx, dy, dz = (float(v) for v in direction)
        return cls("custom", (dx, dy, dz))

    def channel_at(self, eps: float) -> DiagonalChannel:
        dx, dy, dz = self.direction
        return DiagonalChannel(1.0 - eps * dx, 1.0 - eps * dy, 1.0 - eps * dz)


def iterate(
    code: StabilizerCode,
    t0: DiagonalChannel | StokesChannel,
    k_max: int = DEFAULT_K_MAX,
    tol: float = DEFAULT_CONV_TOL,
) -> OrbitRecord:
    """Apply the coding map up to k_max times, recording every level.

    Diagonal inputs iterate through the exact polynomial reduction,
    general inputs through the full 4x4 map.  Divergence is a recorded
    outcome, not an error.
    """
    diagonal = isinstance(t0, DiagonalChannel)
    poly = diagonal_map(code) if diagonal else None
    state = t0
    levels = [OrbitLevel(0, state, max_entry_distance(state))]
    converged = levels[0].distance < tol
    k = 0
    while not converged and k < k_max:
        state = poly.apply(state) if diagonal else general_map(code, state)
        k += 1
        dist = max_entry_distance(state)
        levels.append(OrbitLevel(k, state, dist))
        converged = dist < tol
    return OrbitRecord(levels=tuple(levels), converged=converged, iterations_used=k)


@dataclass(frozen=True)
class FixedPointScan:
    roots: tuple[float, ...]
    degenerate: bool


def fixed_points_1d(
    coeffs: Sequence[float],
    interval: tuple[float, float] = (-1.0, 1.0),
    tol: float = 1e-12,
    step: float = 1e-3,
) -> FixedPointScan:
    """All real solutions of poly(x) = x in the interval.

    Scans a uniform grid for sign changes of poly(x) - x and bisects each
    bracket down to width `tol`; exact zeros at grid points are taken
    directly.  A polynomial that is the identity on the whole grid is
    flagged as degenerate instead of producing roots.
    """
    lo, hi = interval
    if not -1.0 <= lo < hi <= 1.0:
        raise ValueError(f"interval must be inside [-1, 1], got {interval}")
    cs = [float(v) for v in coeffs]

    def g(x: float) -> float:
        acc = 0.0
        for coeff in reversed(cs):
            acc = acc * x + coeff
        return acc - x

    count = max(2, int(math.ceil((hi - lo) / step)))
    xs = [lo + (hi - lo) * i / count for i in range(count + 1)]
    vals = [g(x) for x in xs]
    if all(abs(v) < 1e-14 for v in vals):
        return FixedPointScan(roots=(), degenerate=True)

    roots: list[float] = []
    for x, v in zip(xs, vals):
        if abs(v) < 1e-14:
            roots.append(x)
    for (x0, v0), (x1, v1) in zip(zip(xs, vals), zip(xs[1:], vals[1:])):
        if abs(v0) < 1e-14 or abs(v1) < 1e-14 or (v0 > 0) == (v1 > 0):
            continue
        a, b, va = x0, x1, v0
        while b - a > tol:
            mid = 0.5 * (a + b)
            vm = g(mid)
            if vm == 0.0:
                a = b = mid
                break
            if (vm > 0) == (va > 0):
                a, va = mid, vm
            else:
                b = mid
        roots.append(0.5 * (a + b))

    roots.sort()
    deduped: list[float] = []
    for r in roots:
        if not deduped or r - deduped[-1] > 1e-9:
            deduped.append(r)
    return FixedPointScan(roots=tuple(deduped), degenerate=False)


def threshold(
    code: StabilizerCode,
    ray: RaySpec,
    tol_eps: float = 1e-6,
    tol_conv: float = DEFAULT_CONV_TOL,
    k_max: int = DEFAULT_K_MAX,
) -> float:
    """Largest noise strength along the ray whose orbit still converges.

    Bisection over eps in [0, 1]; reports the last converging probe, so
    the result is conservative (never above the true threshold by more
    than the orbit tolerance allows).
    """

    def converges(eps: float) -> bool:
        return iterate(code, ray.channel_at(eps), k_max=k_max, tol=tol_conv).converged

    if converges(1.0):
        return 1.0
    lo, hi = 0.0, 1.0
    while hi - lo > tol_eps:
        mid = 0.5 * (lo + hi)
        if converges(mid):
            lo = mid
        else:
            hi = mid
    return lo


def jacobian_fd(code: StabilizerCode, at: DiagonalChannel, h: float = 1e-5) -> np.ndarray:
    """Central-difference 3x3 Jacobian of the diagonal-reduced coding map."""
    if h <= 0:
        raise ValueError("step size must be positive")
    poly = diagonal_map(code)
    base = np.array(at.as_tuple())
    out = np.empty((3, 3))
    for c in range(3):
        plus = base.copy()
        minus = base.copy()
        plus[c] += h
        minus[c] -= h
        fp = poly.apply(DiagonalChannel(*plus)).as_tuple()
        fm = poly.apply(DiagonalChannel(*minus)).as_tuple()
        for r in range(3):
            out[r, c] = (fp[r] - fm[r]) / (2.0 * h)
    return out


def jacobian_fd_full(code: StabilizerCode, at: StokesChannel, h: float = 1e-5) -> np.ndarray:
    """Central-difference 16x16 Jacobian of the full coding map on Stokes space.

    Entries are row-major over (output entry, input entry).  Exposed as an
    experiment hook; no attracting-fixed-point claim is attached to it.
    """
    if h <= 0:
        raise ValueError("step size must be positive")
    base = at.matrix
    out = np.empty((16, 16))
    for c in range(16):
        i, j = divmod(c, 4)
        plus = base.copy()
        minus = base.copy()
        plus[i, j] += h
        minus[i, j] -= h
        fp = general_map(code, StokesChannel(plus)).matrix
        fm = general_map(code, StokesChannel(minus)).matrix
        out[:, c] = ((fp - fm) / (2.0 * h)).ravel()
    return out


def error_series(alpha: float, eps0: float, k: int) -> float:
    """Closed form (1/alpha) * (alpha * eps0)^(2^k) of eps_{j+1} = alpha * eps_j^2.

    Overflow clamps to +inf; k = 0 returns eps0 exactly.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if k == 0:
        return float(eps0)
    if eps0 == 0:
        return 0.0
    log_value = (1 << k) * math.log(alpha * abs(eps0)) - math.log(alpha)
    if log_value > math.log(np.finfo(float).max):
        return math.inf
    return math.exp(log_value)


FIVE_QUBIT_DEPOL_FIXED_POINT = math.sqrt(2.0 / 3.0)
FIVE_QUBIT_QUADRATIC_CONSTANT = 1.0 / (1.0 - FIVE_QUBIT_DEPOL_FIXED_POINT)


@dataclass(frozen=True)
class GeneralBound:
    """A convergence guarantee (c_N + c_M)^-1 for arbitrary channel noise."""

    c_n: float
    c_m: float
    c_m_source: str
    value: float
    bounds_guaranteed: bool


def general_bound_check(
    code: StabilizerCode, c_m: float | None = None, seed: int = 0
) -> GeneralBound:
    """Evaluate the arbitrary-channel convergence bound (c_N + c_M)^-1.

    For the built-in five-qubit code the closed-form quadratic constant
    (1 - sqrt(2/3))^-1 is used; other codes fall back to the operational
    grid constant.  An explicit `c_m` overrides either.
    """
    constants = c_constants(code, seed=seed)
    if c_m is not None:
        source = "user"
    elif code.name == "five-qubit":
        c_m = FIVE_QUBIT_QUADRATIC_CONSTANT
        source = "closed-form"
    else:
        c_m = constants.c_m
        source = "grid"
    value = 1.0 / (float(constants.c_n) + c_m)
    if code.name == "five-qubit" and source == "closed-form" and value < 0.014:
        raise ArithmeticError("five-qubit bound fell below 0.014; inconsistent constants")
    return GeneralBound(
        c_n=float(constants.c_n),
        c_m=c_m,
        c_m_source=source,
        value=value,
        bounds_guaranteed=constants.bounds_guaranteed,
    )


def fixed_point_cross_check(code: StabilizerCode, ray: RaySpec) -> dict | None:
    """One-dimensional fixed-point reduction of a threshold search, if the
    ray admits one.

    The depolarizing ray reduces when the three diagonal components agree
    on the line x = y = z; the dephasing ray reduces when the X component
    is identically 1 at x = 1 and the Z component is autonomous in z.
    Returns the univariate coefficients, its fixed points in [0, 1], and
    the implied threshold, or None when no reduction applies.
    """
    poly = diagonal_map(code)
    coeffs = None
    variable = None
    if ray.family == "depolarizing":
        lines = [poly.depolarizing_line(s) for s in COMPONENTS]
        if lines[0] == lines[1] == lines[2]:
            coeffs, variable = lines[0], "t"
    elif ray.family == "dephasing":
        x_line = poly.restricted_univariate("X", "x", fixed={})
        if x_line is not None and sum(x_line) == 1:
            z_line = poly.restricted_univariate("Z", "z", fixed={"x": Fraction(1)})
            if z_line is not None:
                coeffs, variable = z_line, "z"
    if coeffs is None:
        return None
    scan = fixed_points_1d([float(v) for v in coeffs], interval=(0.0, 1.0))
    below_one = [r for r in scan.roots if r < 1.0 - 1e-9]
    implied = 1.0 - max(below_one) if below_one else 1.0
    return {
        "variable": variable,
        "coefficients": [float(v) for v in coeffs],
        "fixed_points": list(scan.roots),
        "threshold_from_fixed_point": implied,
    }
