"""First-order acoustic wave solver on the unit square.

Pressure lives at cell centers, velocity components at face centers
(staggered grid), advanced with a leapfrog scheme:

    dp/dt = -kappa * div(v) + f(x, t)
    dv/dt = -(1/rho) * grad(p)

Boundaries are rigid walls (zero normal velocity), so with the forcing
disabled the discrete acoustic energy is conserved up to time-staggering
effects.  The forcing is a Ricker pulse in time with a Gaussian spatial
footprint, peaking at ``tau/pi`` at the source location and center time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import StabilityViolation

# Any field magnitude above this trips StabilityViolation (fail fast
# instead of emitting NaN traces).
OVERFLOW_GUARD = 1e12


@dataclass(frozen=True)
class MediumParams:
    """Homogeneous medium: bulk modulus and density (both dimensionless)."""

    kappa: float = 1.0
    rho: float = 1.0

    def __post_init__(self):
        if not (self.kappa > 0 and self.rho > 0):
            raise ValueError(f"kappa and rho must be positive, got {self.kappa}, {self.rho}")

    @property
    def wave_speed(self) -> float:
        return math.sqrt(self.kappa / self.rho)


@dataclass(frozen=True)
class SourceParams:
    """Forcing-term parameters: location, center time, frequency, spatial sharpness."""

    y_s: tuple[float, float]
    t0: float = 0.2
    omega: float = 1.0
    tau: float = 200.0

    def __post_init__(self):
        x, y = self.y_s
        if not (0.0 <= x <= 1.0 and 0.0 <= y <= 1.0):
            raise ValueError(f"source location {self.y_s} outside the unit square")
        if not (self.omega > 0 and self.tau > 0):
            raise ValueError("omega and tau must be strictly positive")
        if self.t0 < 0:
            raise ValueError("t0 must be nonnegative")


@dataclass(frozen=True)
class SimGrid:
    """Solver grid: nx-by-ny cells on [0,1]^2, nt internal steps of dt up to t_end.

    Receiver traces are recorded at ``n_times`` uniformly spaced output
    times (every ``nt // n_times``-th step), decoupled from the internal
    step size, which is chosen from the CFL bound.
    """

    nx: int
    ny: int
    dt: float
    nt: int
    t_end: float
    n_times: int

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid needs at least 2 cells per axis")
        if self.nt < 1 or self.n_times < 1 or self.nt % self.n_times != 0:
            raise ValueError("nt must be a positive multiple of n_times")
        if not math.isclose(self.dt * self.nt, self.t_end, rel_tol=1e-12):
            raise ValueError("dt * nt must equal t_end")

    @classmethod
    def for_domain(cls, nx: int, ny: int, t_end: float = 2.0, n_times: int = 50,
                   cfl: float = 0.5, wave_speed: float = 1.0) -> "SimGrid":
        """Pick the internal step from the stability bound.

        The step is the largest divisor of the output interval that
        satisfies dt <= cfl * min(dx, dy) / (c * sqrt(2)).
        """
        if not (0 < cfl <= 1):
            raise ValueError("cfl must be in (0, 1]")
        dx = 1.0 / nx
        dy = 1.0 / ny
        dt_max = cfl * min(dx, dy) / (wave_speed * math.sqrt(2.0))
        dt_out = t_end / n_times
        per_sample = max(1, math.ceil(dt_out / dt_max - 1e-12))
        nt = n_times * per_sample
        return cls(nx=nx, ny=ny, dt=t_end / nt, nt=nt, t_end=t_end, n_times=n_times)

    @property
    def dx(self) -> float:
        return 1.0 / self.nx

    @property
    def dy(self) -> float:
        return 1.0 / self.ny

    @property
    def output_stride(self) -> int:
        return self.nt // self.n_times

    def stability_limit(self, wave_speed: float, cfl: float = 0.5) -> float:
        return cfl * min(self.dx, self.dy) / (wave_speed * math.sqrt(2.0))

    def cell_centers(self) -> tuple[np.ndarray, np.ndarray]:
        """Center coordinates along each axis: shapes (nx,), (ny,)."""
        xs = (np.arange(self.nx) + 0.5) * self.dx
        ys = (np.arange(self.ny) + 0.5) * self.dy
        return xs, ys

    def output_times(self) -> np.ndarray:
        """The n_times recording instants: k * t_end / n_times, k = 1..n_times."""
        return (np.arange(1, self.n_times + 1) * self.output_stride) * self.dt


@dataclass
class WaveState:
    """Pressure at cell centers plus staggered face velocities at one time level.

    Under leapfrog, ``p`` is at time ``t`` and the velocities at ``t - dt/2``.
    """

    p: np.ndarray    # (nx, ny)
    vx: np.ndarray   # (nx+1, ny)
    vy: np.ndarray   # (nx, ny+1)
    t: float = 0.0

    def __post_init__(self):
        nx, ny = self.p.shape
        if self.vx.shape != (nx + 1, ny) or self.vy.shape != (nx, ny + 1):
            raise ValueError("velocity arrays inconsistent with staggering convention")

    @classmethod
    def at_rest(cls, nx: int, ny: int) -> "WaveState":
        return cls(p=np.zeros((nx, ny)), vx=np.zeros((nx + 1, ny)),
                   vy=np.zeros((nx, ny + 1)), t=0.0)

    @property
    def shape(self) -> tuple[int, int]:
        return self.p.shape


@dataclass(frozen=True)
class TraceTable:
    """Pressure sampled at fixed receivers over the output times."""

    times: np.ndarray       # (n_times,)
    receivers: np.ndarray   # (n_rec, 2)
    values: np.ndarray      # (n_rec, n_times)

    def __post_init__(self):
        if self.values.shape != (len(self.receivers), len(self.times)):
            raise ValueError("trace table shape mismatch")


def ricker_source(x, t, sp: SourceParams):
    """Forcing value (pressure rate) at position(s) x and time t.

    ``x`` may be a single (2,) point or an (..., 2) array; broadcasting over
    an array of times works when x is a single point.
    """
    x = np.asarray(x, dtype=float)
    dxs = x[..., 0] - sp.y_s[0]
    dys = x[..., 1] - sp.y_s[1]
    a2 = (2.0 * np.pi * sp.omega) ** 2 * (np.asarray(t, dtype=float) - sp.t0) ** 2
    r2 = dxs * dxs + dys * dys
    return (sp.tau / np.pi) * (1.0 - a2) * np.exp(-0.5 * (a2 + 2.0 * sp.tau * r2))


def _check_overflow(p: np.ndarray, vx: np.ndarray, vy: np.ndarray) -> None:
    m = max(np.max(np.abs(p)), np.max(np.abs(vx)), np.max(np.abs(vy)))
    if not np.isfinite(m) or m > OVERFLOW_GUARD:
        raise StabilityViolation(f"field magnitude {m:.3e} exceeds overflow guard "
                                 f"{OVERFLOW_GUARD:.0e}; reduce dt")


def step(state: WaveState, mp: MediumParams, sp: SourceParams | None, dt: float) -> WaveState:
    """One leapfrog update: velocity kick to the next half level, then pressure.

    The forcing is evaluated at cell centers at the midpoint of the pressure
    step (second order).  ``sp=None`` disables the forcing.  Boundary-normal
    velocities are untouched (rigid walls keep them at zero).
    """
    nx, ny = state.p.shape
    dx, dy = 1.0 / nx, 1.0 / ny
    p, vx, vy = state.p, state.vx.copy(), state.vy.copy()

    vx[1:-1, :] -= (dt / mp.rho) * (p[1:, :] - p[:-1, :]) / dx
    vy[:, 1:-1] -= (dt / mp.rho) * (p[:, 1:] - p[:, :-1]) / dy

    div = (vx[1:, :] - vx[:-1, :]) / dx + (vy[:, 1:] - vy[:, :-1]) / dy
    p_new = p - dt * mp.kappa * div
    if sp is not None:
        xs = (np.arange(nx) + 0.5) * dx
        ys = (np.arange(ny) + 0.5) * dy
        centers = np.stack(np.meshgrid(xs, ys, indexing="ij"), axis=-1)
        p_new = p_new + dt * ricker_source(centers, state.t + 0.5 * dt, sp)

    _check_overflow(p_new, vx, vy)
    return WaveState(p=p_new, vx=vx, vy=vy, t=state.t + dt)


def energy(state: WaveState, mp: MediumParams) -> float:
    """Discrete acoustic energy: 0.5 * sum(p^2/kappa + rho*|v|^2) * cell area."""
    nx, ny = state.p.shape
    cell_area = (1.0 / nx) * (1.0 / ny)
    quad = (np.sum(state.p ** 2) / mp.kappa
            + mp.rho * (np.sum(state.vx ** 2) + np.sum(state.vy ** 2)))
    return 0.5 * cell_area * float(quad)


def _interp_weights(grid: SimGrid, receivers: np.ndarray):
    """Bilinear interpolation stencil on the cell-center lattice.

    Near walls the stencil clamps to the outermost center pair, which
    linearly extrapolates; receivers must lie in the closed unit square.
    """
    rx, ry = receivers[:, 0], receivers[:, 1]
    if np.any(rx < 0) or np.any(rx > 1) or np.any(ry < 0) or np.any(ry > 1):
        raise ValueError("receivers must lie inside the closed unit square")
    gx = rx * grid.nx - 0.5
    gy = ry * grid.ny - 0.5
    ix = np.clip(np.floor(gx), 0, grid.nx - 2).astype(int)
    iy = np.clip(np.floor(gy), 0, grid.ny - 2).astype(int)
    wx = gx - ix
    wy = gy - iy
    return ix, iy, wx, wy


def _sample_receivers(p: np.ndarray, ix, iy, wx, wy) -> np.ndarray:
    """Bilinear sample of pressure field(s) at precomputed stencils.

    Works on a single field (nx, ny) or a batch (B, nx, ny); evaluated as
    two axis lerps so mirror-symmetric configurations sample identically.
    """
    p00 = p[..., ix, iy]
    p10 = p[..., ix + 1, iy]
    p01 = p[..., ix, iy + 1]
    p11 = p[..., ix + 1, iy + 1]
    low = (1.0 - wx) * p00 + wx * p10
    high = (1.0 - wx) * p01 + wx * p11
    return (1.0 - wy) * low + wy * high


def simulate_many(sources: np.ndarray, mp: MediumParams, grid: SimGrid,
                  receivers, wavelet: SourceParams | None = None,
                  record_fields: bool = False,
                  t0: float | None = None, omega: float | None = None,
                  tau: float | None = None):
    """Run one simulation per source location, vectorized over sources.

    ``sources`` is (B, 2); wavelet parameters (t0/omega/tau) are shared and
    taken from ``wavelet`` or given explicitly.  Returns
    (times, traces (B, n_rec, n_times)) and, when ``record_fields`` is set,
    the pressure fields (B, n_times, nx, ny) as a third element.

    Element-wise identical to running :func:`simulate` per source.
    """
    sources = np.atleast_2d(np.asarray(sources, dtype=float))
    if wavelet is not None:
        t0, omega, tau = wavelet.t0, wavelet.omega, wavelet.tau
    if t0 is None or omega is None or tau is None:
        raise ValueError("wavelet parameters t0, omega, tau are required")
    if not (0.0 <= t0 <= grid.t_end):
        raise ValueError(f"t0={t0} outside the simulated window [0, {grid.t_end}]")

    nb = len(sources)
    nx, ny, dx, dy, dt = grid.nx, grid.ny, grid.dx, grid.dy, grid.dt
    receivers = np.asarray(receivers, dtype=float).reshape(-1, 2)
    ix, iy, wx, wy = _interp_weights(grid, receivers) if len(receivers) else (None,) * 4

    # Separable forcing: per-source spatial footprint times a shared pulse.
    xs, ys = grid.cell_centers()
    r2 = ((xs[None, :, None] - sources[:, 0, None, None]) ** 2
          + (ys[None, None, :] - sources[:, 1, None, None]) ** 2)
    spatial = np.exp(-tau * r2)                      # (B, nx, ny)
    a = 2.0 * np.pi * omega

    p = np.zeros((nb, nx, ny))
    vx = np.zeros((nb, nx + 1, ny))
    vy = np.zeros((nb, nx, ny + 1))

    traces = np.zeros((nb, len(receivers), grid.n_times))
    fields = np.zeros((nb, grid.n_times, nx, ny)) if record_fields else None
    stride = grid.output_stride

    for n in range(grid.nt):
        t_mid = (n + 0.5) * dt
        vx[:, 1:-1, :] -= (dt / mp.rho) * (p[:, 1:, :] - p[:, :-1, :]) / dx
        vy[:, :, 1:-1] -= (dt / mp.rho) * (p[:, :, 1:] - p[:, :, :-1]) / dy
        div = (vx[:, 1:, :] - vx[:, :-1, :]) / dx + (vy[:, :, 1:] - vy[:, :, :-1]) / dy
        a2 = a * a * (t_mid - t0) ** 2
        pulse = (tau / np.pi) * (1.0 - a2) * np.exp(-0.5 * a2)
        p = p - dt * mp.kappa * div + (dt * pulse) * spatial

        if (n + 1) % stride == 0:
            k = (n + 1) // stride - 1
            if len(receivers):
                traces[:, :, k] = _sample_receivers(p, ix, iy, wx, wy)
            if record_fields:
                fields[:, k] = p
            _check_overflow(p, vx, vy)

    times = grid.output_times()
    if record_fields:
        return times, traces, fields
    return times, traces


def simulate(sp: SourceParams, mp: MediumParams, grid: SimGrid, receivers) -> TraceTable:
    """Forward-simulate from rest and record receiver traces.

    Deterministic: identical inputs give bit-identical trace tables.
    """
    receivers = np.asarray(receivers, dtype=float).reshape(-1, 2)
    times, traces = simulate_many(np.asarray([sp.y_s]), mp, grid, receivers, wavelet=sp)
    return TraceTable(times=times, receivers=receivers, values=traces[0])
