"""Explicit finite-difference oracles for the heat and telegraph equations.

These solvers share no code with the spectral families and exist to
cross-validate them. Both use a cell-centered uniform grid with mirror
ghost cells, which makes the zero-flux walls exact and lets the discrete
mass telescope to a conserved quantity.

Heat (eps = 0), forward Euler:        stable for dv <= 0.5*du^2
Telegraph (eps > 0), three-level:     stable for dv <= sqrt(eps)*du,
                                      with dv <= 0.45*du^2 also enforced
                                      as a safety bound on the diffusive
                                      term (0.9 * the heat bound)

The first telegraph step uses n1 = n0 + dv^2/(2*eps) * Lap(n0), which
follows from the zero initial rate together with the equation itself at
v = 0 and keeps the scheme second-order accurate from the start.

Requested snapshot times are snapped to the nearest step boundary; the
actually recorded time j*dv is reported so comparisons use matching times.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import Grid1D, TimeGrid
from .errors import InvalidParameterError, StabilityError
from .profiles import InitialProfile, evaluate_profile
from .spectral import FieldSlice

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency, but the
    HAS_NUMBA = False  # pure-numpy path keeps the solvers usable without it.

#: Safety factor applied to the stability bounds when choosing a step.
DEFAULT_SAFETY = 0.9

#: Refuse configurations needing more steps than this.
MAX_STEPS = 50_000_000


def cell_centers(nu: int) -> np.ndarray:
    """Centers of nu uniform cells over [-1/2, 1/2], symmetric about 0."""
    du = 1.0 / nu
    return (np.arange(nu) - (nu - 1) / 2.0) * du


@dataclass(frozen=True)
class FdConfig:
    """Grid, step and output plan for one explicit run.

    Attributes:
        nu: number of spatial cells (du = 1/nu).
        dv: time step; must satisfy the stability bound of the selected
            equation (eps == 0 selects heat, eps > 0 telegraph).
        v_end: final time; all snapshot times must not exceed it.
        eps: relaxation ratio of the telegraph equation, >= 0.
        snapshot_times: times at which slices are recorded (snapped to the
            nearest step boundary).
    """

    nu: int
    dv: float
    v_end: float
    eps: float
    snapshot_times: TimeGrid

    def __post_init__(self):
        if not (isinstance(self.nu, int) and self.nu >= 3):
            raise InvalidParameterError(f"nu must be an integer >= 3, got {self.nu!r}")
        if not (self.dv > 0):
            raise InvalidParameterError(f"dv must be > 0, got {self.dv!r}")
        if not (self.eps >= 0):
            raise InvalidParameterError(f"eps must be >= 0, got {self.eps!r}")
        if not (self.v_end > 0):
            raise InvalidParameterError(f"v_end must be > 0, got {self.v_end!r}")
        if self.snapshot_times.points[-1] > self.v_end * (1 + 1e-12):
            raise InvalidParameterError(
                f"snapshot times exceed v_end={self.v_end!r}"
            )
        du = self.du
        slack = 1 + 1e-12
        if self.eps == 0.0:
            bound = 0.5 * du * du
            if self.dv > bound * slack:
                raise StabilityError(
                    f"heat mode requires dv <= 0.5*du^2 = {bound!r}, got dv={self.dv!r}"
                )
        else:
            wave_bound = math.sqrt(self.eps) * du
            diff_bound = 0.45 * du * du
            if self.dv > wave_bound * slack:
                raise StabilityError(
                    f"telegraph mode requires dv <= sqrt(eps)*du = {wave_bound!r}, "
                    f"got dv={self.dv!r}"
                )
            if self.dv > diff_bound * slack:
                raise StabilityError(
                    f"telegraph mode requires dv <= 0.45*du^2 = {diff_bound!r}, "
                    f"got dv={self.dv!r}"
                )
        if self.v_end / self.dv > MAX_STEPS:
            raise InvalidParameterError(
                f"configuration needs {self.v_end / self.dv:.3g} steps, "
                f"more than the cap of {MAX_STEPS}"
            )

    @property
    def du(self) -> float:
        return 1.0 / self.nu

    @classmethod
    def auto(
        cls,
        nu: int,
        eps: float,
        snapshot_times: TimeGrid,
        safety: float = DEFAULT_SAFETY,
    ) -> "FdConfig":
        """Pick the largest stable dv (with a safety factor) for the grid."""
        du = 1.0 / nu
        if eps == 0.0:
            dv = safety * 0.5 * du * du
        else:
            dv = min(safety * math.sqrt(eps) * du, 0.45 * du * du)
        v_end = float(snapshot_times.points[-1])
        return cls(nu=nu, dv=dv, v_end=v_end, eps=eps, snapshot_times=snapshot_times)


# ---------------------------------------------------------------------------
# Stepping kernels. The index-0 and index-(nu-1) updates inline the mirror
# ghost cells n[-1] = n[0] and n[nu] = n[nu-1].
# ---------------------------------------------------------------------------

def _heat_steps_numpy(cur: np.ndarray, r: float, steps: int) -> np.ndarray:
    new = np.empty_like(cur)
    for _ in range(steps):
        new[1:-1] = cur[1:-1] + r * (cur[2:] - 2.0 * cur[1:-1] + cur[:-2])
        new[0] = cur[0] + r * (cur[1] - cur[0])
        new[-1] = cur[-1] + r * (cur[-2] - cur[-1])
        cur, new = new, cur
    return cur


def _telegraph_steps_numpy(prev, cur, p_lap, p_prev, steps):
    new = np.empty_like(cur)
    for _ in range(steps):
        new[1:-1] = (
            cur[1:-1]
            + p_lap * (cur[2:] - 2.0 * cur[1:-1] + cur[:-2])
            + p_prev * (cur[1:-1] - prev[1:-1])
        )
        new[0] = cur[0] + p_lap * (cur[1] - cur[0]) + p_prev * (cur[0] - prev[0])
        new[-1] = cur[-1] + p_lap * (cur[-2] - cur[-1]) + p_prev * (cur[-1] - prev[-1])
        prev, cur, new = cur, new, prev
    return prev, cur


if HAS_NUMBA:

    @njit(cache=True)
    def _heat_steps_numba(cur, scratch, r, steps):  # pragma: no cover - compiled
        nu = cur.size
        a, b = cur, scratch
        for _ in range(steps):
            b[0] = a[0] + r * (a[1] - a[0])
            for i in range(1, nu - 1):
                b[i] = a[i] + r * (a[i + 1] - 2.0 * a[i] + a[i - 1])
            b[nu - 1] = a[nu - 1] + r * (a[nu - 2] - a[nu - 1])
            a, b = b, a
        return a

    @njit(cache=True)
    def _telegraph_steps_numba(
        prev, cur, scratch, p_lap, p_prev, steps
    ):  # pragma: no cover - compiled
        nu = cur.size
        a, b, c = prev, cur, scratch
        for _ in range(steps):
            c[0] = b[0] + p_lap * (b[1] - b[0]) + p_prev * (b[0] - a[0])
            for i in range(1, nu - 1):
                c[i] = (
                    b[i]
                    + p_lap * (b[i + 1] - 2.0 * b[i] + b[i - 1])
                    + p_prev * (b[i] - a[i])
                )
            c[nu - 1] = (
                b[nu - 1]
                + p_lap * (b[nu - 2] - b[nu - 1])
                + p_prev * (b[nu - 1] - a[nu - 1])
            )
            a, b, c = b, c, a
        return a, b


def _heat_advance(cur: np.ndarray, r: float, steps: int) -> np.ndarray:
    if steps == 0:
        return cur
    if HAS_NUMBA:
        out = _heat_steps_numba(cur, np.empty_like(cur), r, steps)
        return out.copy() if out is not cur else out
    return _heat_steps_numpy(cur, r, steps)


def _mirror_laplacian(n: np.ndarray) -> np.ndarray:
    lap = np.empty_like(n)
    lap[1:-1] = n[2:] - 2.0 * n[1:-1] + n[:-2]
    lap[0] = n[1] - n[0]
    lap[-1] = n[-2] - n[-1]
    return lap


def _snapshot_steps(cfg: FdConfig) -> list[int]:
    return [int(round(t / cfg.dv)) for t in cfg.snapshot_times.points]


def fd_solve_heat(profile: InitialProfile, cfg: FdConfig) -> list[FieldSlice]:
    """Forward-Euler solution of dn/dv = d2n/du2 with zero-flux walls.

    Returns one slice per requested snapshot time, tagged "fd", with the
    snapped time recorded in each slice.
    """
    if cfg.eps != 0.0:
        raise InvalidParameterError(
            f"fd_solve_heat requires a heat-mode config (eps == 0), got eps={cfg.eps!r}"
        )
    u = cell_centers(cfg.nu)
    grid = Grid1D(points=u, uniform=True, spacing=cfg.du)
    r = cfg.dv / cfg.du**2
    cur = np.asarray(evaluate_profile(profile, u), dtype=float).copy()
    slices: list[FieldSlice] = []
    step = 0
    for target in _snapshot_steps(cfg):
        cur = _heat_advance(cur, r, target - step)
        step = target
        slices.append(
            FieldSlice(grid=grid, v=step * cfg.dv, values=cur.copy(), model_tag="fd")
        )
    return slices


def fd_solve_telegraph(profile: InitialProfile, cfg: FdConfig) -> list[FieldSlice]:
    """Three-level explicit solution of eps*d2n/dv2 + dn/dv = d2n/du2.

    The zero initial rate is built into the special first step; afterwards
    the centered three-level update is used. Returns one slice per
    requested snapshot time, tagged "fd".
    """
    if not (cfg.eps > 0):
        raise InvalidParameterError(
            f"fd_solve_telegraph requires eps > 0, got eps={cfg.eps!r}"
        )
    u = cell_centers(cfg.nu)
    grid = Grid1D(points=u, uniform=True, spacing=cfg.du)
    eps, dv, du = cfg.eps, cfg.dv, cfg.du
    # Update in increment form, new = cur + p_lap*lap + p_prev*(cur - prev),
    # algebraically identical to the centered three-level scheme but with
    # the mass-conservation telescoping exact in floating point as well
    # (the equivalent p_cur = 1 + p_prev never needs to round).
    denom = eps + 0.5 * dv
    p_lap = dv * dv / (du * du) / denom
    p_prev = (eps - 0.5 * dv) / denom

    prev = np.asarray(evaluate_profile(profile, u), dtype=float).copy()
    slices: list[FieldSlice] = []
    targets = _snapshot_steps(cfg)
    idx = 0
    while idx < len(targets) and targets[idx] == 0:
        slices.append(FieldSlice(grid=grid, v=0.0, values=prev.copy(), model_tag="fd"))
        idx += 1
    if idx == len(targets):
        return slices

    # First step from the equation at v = 0 with zero initial rate.
    cur = prev + (dv * dv / (2.0 * eps)) / (du * du) * _mirror_laplacian(prev)
    step = 1
    for target in targets[idx:]:
        missing = target - step
        if missing > 0:
            if HAS_NUMBA:
                a, b = _telegraph_steps_numba(
                    prev, cur, np.empty_like(cur), p_lap, p_prev, missing
                )
                prev, cur = a.copy(), b.copy()
            else:
                prev, cur = _telegraph_steps_numpy(prev, cur, p_lap, p_prev, missing)
                prev, cur = prev.copy(), cur.copy()
            step = target
        slices.append(
            FieldSlice(grid=grid, v=step * cfg.dv, values=cur.copy(), model_tag="fd")
        )
    return slices
