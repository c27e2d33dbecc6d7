"""Unduloid profile construction and embedding.

The profile rho(t) of a constant-mean-curvature surface of revolution
(normalized so the mean curvature, taken as the sum of the principal
curvatures, equals 1) satisfies

    rho_tt = v^2 / rho - v^3,    v = sqrt(1 + rho_t^2).

Solutions are periodic, pinned down by the neck radius epsilon in (0, 1];
epsilon = 1 is the unit cylinder.  The first integral

    E = rho / v - rho^2 / 2

is constant along solutions, which pairs the neck radius with the maximal
bulge radius: both are roots of x - x^2/2 = E, so they sum to 2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from .errors import DomainError, NumericError, PeriodDetectionError

# Below this neck radius the meridian curvature 1/epsilon makes the family
# numerically singular (the limit is a chain of tangent spheres of radius 2).
EPSILON_MIN = 1e-3

CYLINDER_PERIOD = 2.0 * np.pi  # period of the linearized profile at epsilon = 1

DEFAULT_TOL = 1e-12
DEFAULT_HORIZON = 100.0


def check_epsilon(epsilon: float) -> float:
    if not np.isfinite(epsilon) or epsilon <= 0.0 or epsilon > 1.0:
        raise DomainError(f"neck radius must lie in (0, 1], got {epsilon}")
    if epsilon < EPSILON_MIN:
        raise DomainError(
            f"neck radius {epsilon} below supported minimum {EPSILON_MIN}"
        )
    return float(epsilon)


def conserved_energy(rho: float, rho_t: float) -> float:
    """First integral E = rho/sqrt(1 + rho_t^2) - rho^2/2 of the profile ODE."""
    rho = np.asarray(rho, dtype=float)
    if np.any(rho <= 0.0):
        raise DomainError("radius must be positive")
    return rho / np.sqrt(1.0 + np.asarray(rho_t, dtype=float) ** 2) - 0.5 * rho**2


def bulge_of(epsilon: float) -> float:
    """Maximal radius paired with neck radius epsilon (the other root of the
    energy level, hence 2 - epsilon)."""
    epsilon = check_epsilon(epsilon)
    return 2.0 - epsilon


def extremal_neck(k_ends: int) -> float:
    """Neck radius whose neck-to-bulge ratio equals 1/(k_ends - 1).

    Solving eps / (2 - eps) = 1/(k - 1) gives eps = 2/k.
    """
    if k_ends < 3:
        raise DomainError(f"need at least 3 ends, got {k_ends}")
    return 2.0 / float(k_ends)


def _profile_rhs(t, y):
    rho, rho_t = y
    v_sq = 1.0 + rho_t * rho_t
    v = np.sqrt(v_sq)
    return (rho_t, v_sq / rho - v_sq * v)


def _turning_event(direction: int):
    def event(t, y):
        return y[1]

    event.terminal = True
    event.direction = direction
    return event


@dataclass(frozen=True)
class DelaunayProfile:
    """One period of an unduloid profile, sampled uniformly from the neck.

    samples cover [0, period) at spacing period / n; samples[0] is the neck
    (rho = epsilon, rho_t = 0).
    """

    epsilon: float
    period: float
    t: np.ndarray
    rho: np.ndarray
    rho_t: np.ndarray
    energy: float
    bulge: float

    @property
    def n_samples(self) -> int:
        return self.t.size

    @property
    def spacing(self) -> float:
        return self.period / self.t.size

    def rho_tt(self) -> np.ndarray:
        """Second derivative recovered from the ODE itself."""
        v_sq = 1.0 + self.rho_t**2
        return v_sq / self.rho - v_sq * np.sqrt(v_sq)

    def steepness(self) -> np.ndarray:
        return np.sqrt(1.0 + self.rho_t**2)

    def energy_drift(self) -> float:
        """Sup deviation of the first integral from its neck value."""
        along = conserved_energy(self.rho, self.rho_t)
        return float(np.max(np.abs(along - self.energy)))


def _cylinder_profile(n_samples: int) -> DelaunayProfile:
    t = CYLINDER_PERIOD * np.arange(n_samples) / n_samples
    ones = np.ones(n_samples)
    return DelaunayProfile(
        epsilon=1.0,
        period=CYLINDER_PERIOD,
        t=t,
        rho=ones,
        rho_t=np.zeros(n_samples),
        energy=float(conserved_energy(1.0, 0.0)),
        bulge=1.0,
    )


def _half_period(y0, direction: int, tol: float, horizon: float):
    """Integrate from a zero of rho_t to the next one crossing in `direction`.

    Returns (duration, state at the event).  Starting exactly on an event of
    the opposite direction keeps the event finder from firing at t = 0.
    """
    sol = solve_ivp(
        _profile_rhs,
        (0.0, horizon),
        y0,
        method="DOP853",
        rtol=tol,
        atol=tol * 1e-2,
        events=_turning_event(direction),
        dense_output=False,
    )
    if sol.status == -1:
        raise NumericError(f"profile integration failed: {sol.message}")
    if sol.status != 1 or sol.t_events[0].size == 0:
        raise PeriodDetectionError(
            f"no return to a turning point within horizon {horizon}"
        )
    return float(sol.t_events[0][0]), sol.y_events[0][0]


def solve_profile(
    epsilon: float,
    n_samples: int = 256,
    tol: float = DEFAULT_TOL,
    horizon: float = DEFAULT_HORIZON,
) -> DelaunayProfile:
    """Integrate the profile ODE from the neck over exactly one period.

    The period is located by event detection on rho_t sign changes: the neck
    to bulge leg (rho_t falling through 0) plus the bulge to neck leg (rho_t
    rising through 0).  The sampled profile is then re-integrated onto a
    uniform grid of n_samples points starting at the neck.

    At epsilon = 1 the ODE solution is the constant cylinder; its period is
    taken to be 2*pi, the period of the linearization, so the family is
    continuous at the cylinder.
    """
    epsilon = check_epsilon(epsilon)
    if n_samples < 16:
        raise DomainError(f"need at least 16 samples, got {n_samples}")
    if not tol > 0.0:
        raise DomainError("tolerance must be positive")
    if epsilon == 1.0:
        return _cylinder_profile(n_samples)

    to_bulge, bulge_state = _half_period(
        (epsilon, 0.0), direction=-1, tol=tol, horizon=horizon
    )
    to_neck, neck_state = _half_period(
        bulge_state, direction=+1, tol=tol, horizon=horizon
    )
    period = to_bulge + to_neck

    t_grid = period * np.arange(n_samples) / n_samples
    sol = solve_ivp(
        _profile_rhs,
        (0.0, period),
        (epsilon, 0.0),
        method="DOP853",
        rtol=tol,
        atol=tol * 1e-2,
        t_eval=t_grid,
        dense_output=False,
    )
    if not sol.success:
        raise NumericError(f"profile resampling failed: {sol.message}")

    return DelaunayProfile(
        epsilon=epsilon,
        period=period,
        t=t_grid,
        rho=sol.y[0].copy(),
        rho_t=sol.y[1].copy(),
        energy=float(conserved_energy(epsilon, 0.0)),
        bulge=float(bulge_state[0]),
    )


def profile_state(epsilon: float, times, tol: float = DEFAULT_TOL):
    """(rho, rho_t) of the neck-started profile at the requested times."""
    epsilon = check_epsilon(epsilon)
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if np.any(times < 0.0):
        raise DomainError("profile times must be nonnegative")
    if epsilon == 1.0:
        return np.ones_like(times), np.zeros_like(times)
    order = np.argsort(times)
    sorted_times = times[order]
    sol = solve_ivp(
        _profile_rhs,
        (0.0, float(sorted_times[-1]) if sorted_times[-1] > 0 else 1.0),
        (epsilon, 0.0),
        method="DOP853",
        rtol=tol,
        atol=tol * 1e-2,
        t_eval=sorted_times,
    )
    if not sol.success:
        raise NumericError(f"profile evaluation failed: {sol.message}")
    rho = np.empty_like(times)
    rho_t = np.empty_like(times)
    rho[order] = sol.y[0]
    rho_t[order] = sol.y[1]
    return rho, rho_t


def bulge_from_energy(epsilon: float) -> float:
    """Independent bulge value: the second root of x - x^2/2 = E(epsilon).

    Root finding only, no use of the closed-form pairing; used to validate
    bulge_of.
    """
    epsilon = check_epsilon(epsilon)
    if epsilon == 1.0:
        return 1.0
    level = float(conserved_energy(epsilon, 0.0))
    return brentq(lambda x: x - 0.5 * x * x - level, 1.0, 2.0, xtol=1e-14)


def orthonormal_frame(axis_direction) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Right-handed orthonormal frame (a, b, c) with a along axis_direction."""
    a = np.asarray(axis_direction, dtype=float)
    norm = np.linalg.norm(a)
    if not np.isfinite(norm) or norm < 1e-12:
        raise DomainError("axis direction is degenerate")
    a = a / norm
    seed = np.array([1.0, 0.0, 0.0]) if abs(a[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    b = seed - np.dot(seed, a) * a
    b /= np.linalg.norm(b)
    c = np.cross(a, b)
    return a, b, c


@dataclass(frozen=True)
class CylindricalGraph:
    """Surface given in cylinder coordinates about a fixed axis.

    Points are axis_point + t*a + rho(t, theta)*(b cos theta + c sin theta).
    theta_grid covers [0, 2*pi) periodically.  axial_period, when set, is the
    wrap length L with rho(t + L) = rho(t); None marks an open t window.
    """

    axis_point: np.ndarray
    axis_direction: np.ndarray
    frame_b: np.ndarray
    frame_c: np.ndarray
    t_grid: np.ndarray
    theta_grid: np.ndarray
    rho: np.ndarray
    axial_period: float | None = None

    def __post_init__(self):
        if np.any(self.rho <= 0.0):
            raise DomainError("graph radius must stay positive")
        if self.rho.shape != (self.t_grid.size, self.theta_grid.size):
            raise DomainError("radius grid shape does not match the axes")

    @property
    def t_periodic(self) -> bool:
        return self.axial_period is not None

    def points(self) -> np.ndarray:
        """Embedded points, shape (n_t, n_theta, 3)."""
        omega = np.multiply.outer(np.cos(self.theta_grid), self.frame_b) + (
            np.multiply.outer(np.sin(self.theta_grid), self.frame_c)
        )
        axial = self.axis_point + np.multiply.outer(self.t_grid, self.axis_direction)
        return axial[:, None, :] + self.rho[:, :, None] * omega[None, :, :]


def embed_profile(
    profile: DelaunayProfile,
    axis_point=(0.0, 0.0, 0.0),
    axis_direction=(0.0, 0.0, 1.0),
    n_theta: int = 64,
    n_periods: int = 1,
) -> CylindricalGraph:
    """Tile the periodic profile n_periods times along the chosen axis."""
    if n_theta < 8:
        raise DomainError(f"need at least 8 angular samples, got {n_theta}")
    if n_periods < 1:
        raise DomainError("need at least one period")
    a, b, c = orthonormal_frame(axis_direction)
    n = profile.n_samples
    t_grid = profile.period * np.arange(n * n_periods) / n
    theta_grid = 2.0 * np.pi * np.arange(n_theta) / n_theta
    rho = np.tile(profile.rho, n_periods)[:, None] * np.ones((1, n_theta))
    return CylindricalGraph(
        axis_point=np.asarray(axis_point, dtype=float),
        axis_direction=a,
        frame_b=b,
        frame_c=c,
        t_grid=t_grid,
        theta_grid=theta_grid,
        rho=rho,
        axial_period=profile.period * n_periods,
    )
