"""Series solutions of the slab diffusion problem with zero-flux walls.

Three families share the cosine-series coefficients of the initial profile:

* parabolic: each mode decays as exp(-(2*m*pi)^2 * v);
* hyperbolic (telegraph): each mode solves
  eps*V'' + V' + (2*m*pi)^2 * V = 0 with V(0)=k_m, V'(0)=0, evaluated through
  real closed forms per damping class so the result is real by construction;
* two-timescale (WKB-type): a fast boundary-layer decay exp(-v/eps)
  superposed on the parabolic relaxation.

Series are summed over descending mode index with compensated (Kahan)
summation so the small high-m contributions are not absorbed into the
dominant low-m terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .core import HALF_WIDTH, Grid1D, TimeGrid
from .errors import (
    DomainError,
    InvalidParameterError,
    ReferenceInvalidError,
    ResonantModeError,
)
from .profiles import GaussianProfile, SpectralCoefficients

#: Discriminant tolerance below which a mode is treated as critically damped;
#: the overdamped formula divides by mu2 - mu1 which vanishes there.
CRITICAL_DISC_TOL = 1e-12

#: |1 - eps*(2*m*pi)^2| below this is a resonant two-timescale mode.
RESONANCE_TOL = 1e-9

#: The wall-free reference requires the Gaussian support to stay this far
#: from the walls: 1/sqrt(sharpness) + sqrt(4*v) <= WALL_CLEARANCE.
WALL_CLEARANCE = 0.25

DampingClass = Literal["overdamped", "critical", "underdamped"]
ModelTag = Literal["parabolic", "hyperbolic", "wkb", "fd"]

SPECTRAL_MODELS = ("parabolic", "hyperbolic", "wkb")


def decay_rate(m: int) -> float:
    """Parabolic decay rate (2*m*pi)^2 of mode m."""
    return (2.0 * math.pi * m) ** 2


def _check_u(u):
    u_arr = np.asarray(u, dtype=float)
    if np.any(u_arr < -HALF_WIDTH) or np.any(u_arr > HALF_WIDTH):
        raise DomainError(f"u must lie in [-1/2, 1/2], got {u!r}")
    return u_arr


def _check_v(v):
    v_arr = np.asarray(v, dtype=float)
    if np.any(v_arr < 0):
        raise DomainError(f"v must be >= 0, got {v!r}")
    return v_arr


def _sum_modes(k0: float, truncation: int, term: Callable[[int], np.ndarray], shape):
    """k0 + sum of term(m) for m = truncation..1, Kahan-compensated."""
    total = np.zeros(shape)
    comp = np.zeros(shape)
    for m in range(truncation, 0, -1):
        y = term(m) - comp
        t = total + y
        comp = (t - total) - y
        total = t
    return k0 + total


def _scalarize(value, *inputs) -> float | np.ndarray:
    if all(np.isscalar(x) or np.ndim(x) == 0 for x in inputs):
        return float(value)
    return value


# ---------------------------------------------------------------------------
# Parabolic family
# ---------------------------------------------------------------------------

def parabolic_density(coefficients: SpectralCoefficients, u, v):
    """Density of the instant-flux (parabolic) model at (u, v).

    Either u or v may be an array; the truncated series
    k0 + sum k_m exp(-(2*m*pi)^2 v) cos(2*m*pi*u) is returned.
    """
    u_arr = _check_u(u)
    v_arr = _check_v(v)
    shape = np.broadcast_shapes(u_arr.shape, v_arr.shape)
    k = coefficients.modes

    def term(m: int):
        return (k[m - 1] * np.exp(-decay_rate(m) * v_arr)) * np.cos(
            2.0 * math.pi * m * u_arr
        )

    out = _sum_modes(coefficients.mean, coefficients.truncation, term, shape)
    return _scalarize(out, u, v)


# ---------------------------------------------------------------------------
# Hyperbolic (telegraph) family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModeEvolution:
    """Damped-oscillator parameters of one telegraph mode.

    The per-mode amplitude V_m(v) solves eps*V'' + V' + (2*m*pi)^2 V = 0 with
    V(0) = k_m and V'(0) = 0. Depending on the sign of the discriminant
    1 - (4*m*pi)^2*eps the mode is overdamped (two real decay exponents
    mu2 < mu1 < 0 with amplitudes c1, c2), critically damped, or underdamped
    (decay sigma = -1/(2*eps) with angular frequency omega).
    """

    index: int
    damping: DampingClass
    mu1: float | None = None
    mu2: float | None = None
    c1: float | None = None
    c2: float | None = None
    sigma: float | None = None
    omega: float | None = None


def classify_mode(eps: float, m: int) -> ModeEvolution:
    """Build the evolution parameters of mode m without amplitude weights."""
    return _build_mode(eps, m, k_m=1.0)


def _build_mode(eps: float, m: int, k_m: float) -> ModeEvolution:
    disc = 1.0 - (4.0 * math.pi * m) ** 2 * eps
    if disc > CRITICAL_DISC_TOL:
        sq = math.sqrt(disc)
        # 1 - sq cancels for small eps; the rate is formed from the
        # equivalent product form instead.
        mu1 = -((4.0 * math.pi * m) ** 2) / (2.0 * (1.0 + sq))
        mu2 = -(1.0 + sq) / (2.0 * eps)
        c1 = mu2 / (mu2 - mu1) * k_m
        c2 = -mu1 / (mu2 - mu1) * k_m
        return ModeEvolution(index=m, damping="overdamped", mu1=mu1, mu2=mu2, c1=c1, c2=c2)
    if disc < -CRITICAL_DISC_TOL:
        omega = math.sqrt(-disc) / (2.0 * eps)
        return ModeEvolution(
            index=m, damping="underdamped", sigma=-1.0 / (2.0 * eps), omega=omega
        )
    return ModeEvolution(index=m, damping="critical", sigma=-1.0 / (2.0 * eps))


def build_mode_evolutions(
    eps: float, coefficients: SpectralCoefficients
) -> list[ModeEvolution]:
    """Classify and parameterize every retained mode for a given eps > 0."""
    if not (eps > 0):
        raise InvalidParameterError(f"eps must be > 0 for the telegraph model, got {eps!r}")
    return [
        _build_mode(eps, m, float(coefficients.modes[m - 1]))
        for m in range(1, coefficients.truncation + 1)
    ]


def hyperbolic_mode_factor(mode: ModeEvolution, eps: float, v):
    """Normalized time factor V_m(v)/k_m; equals 1 at v = 0 with zero slope.

    All three damping classes are evaluated through real closed forms, so the
    result is real for every v >= 0.
    """
    v_arr = _check_v(v)
    if mode.damping == "overdamped":
        mu1, mu2 = mode.mu1, mode.mu2
        out = (mu2 * np.exp(mu1 * v_arr) - mu1 * np.exp(mu2 * v_arr)) / (mu2 - mu1)
    elif mode.damping == "underdamped":
        sigma, omega = mode.sigma, mode.omega
        out = np.exp(sigma * v_arr) * (
            np.cos(omega * v_arr) + (1.0 / (2.0 * eps * omega)) * np.sin(omega * v_arr)
        )
    else:
        sigma = mode.sigma
        out = np.exp(sigma * v_arr) * (1.0 - sigma * v_arr)
    return _scalarize(out, v)


def hyperbolic_density(
    coefficients: SpectralCoefficients,
    eps: float,
    u,
    v,
    modes: list[ModeEvolution] | None = None,
):
    """Density of the finite-speed (telegraph) model at (u, v), eps > 0."""
    if modes is None:
        modes = build_mode_evolutions(eps, coefficients)
    u_arr = _check_u(u)
    v_arr = _check_v(v)
    shape = np.broadcast_shapes(u_arr.shape, v_arr.shape)
    k = coefficients.modes

    def term(m: int):
        factor = hyperbolic_mode_factor(modes[m - 1], eps, v_arr)
        return (k[m - 1] * factor) * np.cos(2.0 * math.pi * m * u_arr)

    out = _sum_modes(coefficients.mean, coefficients.truncation, term, shape)
    return _scalarize(out, u, v)


# ---------------------------------------------------------------------------
# Two-timescale (WKB-type) family
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WkbCoefficients:
    """Mode weights of the two-timescale approximation.

    fast[m-1] multiplies the boundary-layer decay exp(-v/eps) and slow[m-1]
    the parabolic decay exp(-(2*m*pi)^2 v); their sum reproduces k_m, which
    keeps the v = 0 reconstruction identical to the other families.
    """

    fast: np.ndarray
    slow: np.ndarray

    def __post_init__(self):
        fast = np.asarray(self.fast, dtype=float)
        slow = np.asarray(self.slow, dtype=float)
        if fast.shape != slow.shape or fast.ndim != 1:
            raise InvalidParameterError("fast and slow must be 1D arrays of equal length")
        object.__setattr__(self, "fast", fast)
        object.__setattr__(self, "slow", slow)


def wkb_coefficients(coefficients: SpectralCoefficients, eps: float) -> WkbCoefficients:
    """Split k_m into fast/slow weights:

        fast_m = -eps*(2*m*pi)^2 / (1 - eps*(2*m*pi)^2) * k_m
        slow_m = k_m / (1 - eps*(2*m*pi)^2)

    Raises:
        ResonantModeError: eps*(2*m*pi)^2 is within 1e-9 of 1 for some
            retained m; the closed form is singular there and silently
            dropping the mode would break the v = 0 reconstruction.
    """
    if not (eps >= 0):
        raise InvalidParameterError(f"eps must be >= 0, got {eps!r}")
    M = coefficients.truncation
    fast = np.empty(M)
    slow = np.empty(M)
    for m in range(1, M + 1):
        q = eps * decay_rate(m)
        if abs(1.0 - q) < RESONANCE_TOL:
            raise ResonantModeError(m, eps)
        fast[m - 1] = -q / (1.0 - q) * coefficients.modes[m - 1]
        slow[m - 1] = coefficients.modes[m - 1] / (1.0 - q)
    return WkbCoefficients(fast=fast, slow=slow)


def wkb_density(
    coefficients: SpectralCoefficients,
    eps: float,
    u,
    v,
    weights: WkbCoefficients | None = None,
):
    """Density of the two-timescale approximation at (u, v).

    For eps = 0 the fast weights vanish and the result coincides with
    parabolic_density exactly.
    """
    if weights is None:
        weights = wkb_coefficients(coefficients, eps)
    u_arr = _check_u(u)
    v_arr = _check_v(v)
    shape = np.broadcast_shapes(u_arr.shape, v_arr.shape)
    # exp(-v/eps) is never formed for eps = 0; the fast weights are all zero
    # there so the factor value is irrelevant.
    fast_factor = np.exp(-v_arr / eps) if eps > 0 else np.zeros_like(v_arr)

    def term(m: int):
        amplitude = weights.fast[m - 1] * fast_factor + weights.slow[m - 1] * np.exp(
            -decay_rate(m) * v_arr
        )
        return amplitude * np.cos(2.0 * math.pi * m * u_arr)

    out = _sum_modes(coefficients.mean, coefficients.truncation, term, shape)
    return _scalarize(out, u, v)


# ---------------------------------------------------------------------------
# Wall-free short-time reference
# ---------------------------------------------------------------------------

def free_space_reference(profile: GaussianProfile, v: float) -> Callable[[np.ndarray], np.ndarray]:
    """Exact evolution of the Gaussian profile with the walls removed.

    Diffusing a Gaussian adds 4*v to the squared-width parameter:
    1/b' = 1/b + 4*v. Valid only while the support stays clear of the walls
    (1/sqrt(b) + sqrt(4*v) <= 1/4); used as a short-time oracle for the
    parabolic series, never as a production solution.

    Returns:
        A closure mapping u to the reference density.
    """
    if not isinstance(profile, GaussianProfile):
        raise InvalidParameterError("the wall-free reference is defined for Gaussian profiles")
    if not (v > 0):
        raise DomainError(f"v must be > 0, got {v!r}")
    support = 1.0 / math.sqrt(profile.sharpness) + math.sqrt(4.0 * v)
    if support > WALL_CLEARANCE:
        raise ReferenceInvalidError(
            f"wall influence is not negligible: 1/sqrt(b) + sqrt(4v) = {support:.4g} "
            f"> {WALL_CLEARANCE}"
        )
    b_eff = 1.0 / (1.0 / profile.sharpness + 4.0 * v)
    amp = profile.amplitude * math.sqrt(b_eff / math.pi)

    def reference(u):
        return amp * np.exp(-b_eff * np.asarray(u, dtype=float) ** 2)

    return reference


# ---------------------------------------------------------------------------
# Sampled results
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FieldSlice:
    """Density sampled over a spatial grid at one time."""

    grid: Grid1D
    v: float
    values: np.ndarray
    model_tag: str

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if vals.shape != (len(self.grid),):
            raise InvalidParameterError(
                f"values shape {vals.shape} does not match grid of {len(self.grid)} points"
            )
        if not np.all(np.isfinite(vals)):
            raise InvalidParameterError("values must be finite")

    def mass(self) -> float:
        """Trapezoid integral of the slice over its grid."""
        return float(np.trapezoid(self.values, self.grid.points))


@dataclass(frozen=True)
class TimeTrace:
    """Density sampled over time at one spatial point."""

    u: float
    times: TimeGrid
    values: np.ndarray
    model_tag: str

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", vals)
        if vals.shape != (len(self.times),):
            raise InvalidParameterError(
                f"values shape {vals.shape} does not match {len(self.times)} times"
            )
        if not np.all(np.isfinite(vals)):
            raise InvalidParameterError("values must be finite")


def _family_evaluator(model: str, coefficients: SpectralCoefficients, eps: float):
    if model == "parabolic":
        return lambda u, v: parabolic_density(coefficients, u, v)
    if model == "hyperbolic":
        modes = build_mode_evolutions(eps, coefficients)
        return lambda u, v: hyperbolic_density(coefficients, eps, u, v, modes=modes)
    if model == "wkb":
        weights = wkb_coefficients(coefficients, eps)
        return lambda u, v: wkb_density(coefficients, eps, u, v, weights=weights)
    raise InvalidParameterError(f"unknown spectral model {model!r}")


def field_slice(
    model: str,
    coefficients: SpectralCoefficients,
    eps: float,
    grid: Grid1D,
    v: float,
) -> FieldSlice:
    """Sample one spectral family over a grid at time v."""
    evaluate = _family_evaluator(model, coefficients, eps)
    return FieldSlice(grid=grid, v=float(v), values=evaluate(grid.points, v), model_tag=model)


def time_trace(
    model: str,
    coefficients: SpectralCoefficients,
    eps: float,
    u: float,
    times: TimeGrid,
) -> TimeTrace:
    """Sample one spectral family over a time grid at position u."""
    evaluate = _family_evaluator(model, coefficients, eps)
    return TimeTrace(u=float(u), times=times, values=evaluate(u, times.points), model_tag=model)
