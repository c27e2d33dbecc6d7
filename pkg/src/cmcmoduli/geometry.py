"""Fundamental forms and curvature of surfaces in cylinder charts.

A surface is described by two scalar fields on a rectangular (t, theta)
grid: an axial coordinate A(t, theta) and a radius R(t, theta), giving the
point  axis_point + A*a + R*omega(theta)  with omega = b cos + c sin.
Everything angular about the frame vector omega is handled analytically
(omega'' = -omega), so only the scalar fields are finite-differenced.
Stencils are second order, periodic in theta and optionally periodic in t
(with the axial field wrapping by the tile length).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .delaunay import CylindricalGraph
from .errors import DomainError


def _pad_t(f: np.ndarray, wrap_increment: float | None) -> np.ndarray:
    """Pad two rows on each t side; periodic data wraps, adding the axial
    increment where one is given.  Open windows get linear extrapolation,
    which keeps the interior stencils untouched (edges are trimmed by
    callers that care)."""
    if wrap_increment is not None:
        top = f[-2:].copy()
        bot = f[:2].copy()
        if wrap_increment != 0.0:
            top = top - wrap_increment
            bot = bot + wrap_increment
        return np.concatenate([top, f, bot], axis=0)
    first = 2.0 * f[:1] - f[1:3][::-1]
    last = 2.0 * f[-1:] - f[-3:-1][::-1]
    return np.concatenate([first, f, last], axis=0)


def jets_t(f: np.ndarray, h: float, wrap_increment: float | None):
    """Central first and second t-derivatives of a (n_t, n_theta) field."""
    g = _pad_t(f, wrap_increment)
    f_t = (g[3:-1] - g[1:-3]) / (2.0 * h)
    f_tt = (g[3:-1] - 2.0 * g[2:-2] + g[1:-3]) / (h * h)
    return f_t, f_tt


def jets_theta(f: np.ndarray, h: float):
    """Central first and second theta-derivatives (always periodic)."""
    plus = np.roll(f, -1, axis=1)
    minus = np.roll(f, 1, axis=1)
    f_th = (plus - minus) / (2.0 * h)
    f_thth = (plus - 2.0 * f + minus) / (h * h)
    return f_th, f_thth


@dataclass(frozen=True)
class ChartGeometry:
    """Pointwise geometric data of a chart surface, in the local frame
    (omega, omega_perp, axis)."""

    form_tt: np.ndarray
    form_ttheta: np.ndarray
    form_thetatheta: np.ndarray
    normal_local: np.ndarray  # (n_t, n_theta, 3) components on (omega, perp, a)
    mean_curvature: np.ndarray
    gauss_curvature: np.ndarray
    kappa1: np.ndarray
    kappa2: np.ndarray
    second_form_norm_sq: np.ndarray
    steepness: np.ndarray


def chart_geometry(
    axial: np.ndarray,
    radial: np.ndarray,
    spacing_t: float,
    spacing_theta: float,
    axial_wrap: float | None,
) -> ChartGeometry:
    """Curvature of the surface A*a + R*omega from its two scalar fields.

    axial_wrap is the axial length added to A across the t seam, or None for
    an open window.
    """
    if np.any(radial <= 0.0):
        raise DomainError("chart radius must stay positive")
    a_t, a_tt = jets_t(axial, spacing_t, axial_wrap)
    r_t, r_tt = jets_t(radial, spacing_t, 0.0 if axial_wrap is not None else None)
    a_th, a_thth = jets_theta(axial, spacing_theta)
    r_th, r_thth = jets_theta(radial, spacing_theta)
    mixed_wrap = 0.0 if axial_wrap is not None else None
    a_tth = jets_t(a_th, spacing_t, mixed_wrap)[0]
    r_tth = jets_t(r_th, spacing_t, mixed_wrap)[0]

    # Tangent and second-derivative vectors on the (omega, omega_perp, a) frame.
    xt = (r_t, np.zeros_like(r_t), a_t)
    xth = (r_th, radial, a_th)
    xtt = (r_tt, np.zeros_like(r_tt), a_tt)
    xtth = (r_tth, r_t, a_tth)
    xthth = (r_thth - radial, 2.0 * r_th, a_thth)

    def dot(u, w):
        return u[0] * w[0] + u[1] * w[1] + u[2] * w[2]

    ee = dot(xt, xt)
    ff = dot(xt, xth)
    gg = dot(xth, xth)

    # Outward normal: x_theta x x_t has positive omega component on graphs.
    n0 = xth[1] * xt[2] - xth[2] * xt[1]
    n1 = xth[2] * xt[0] - xth[0] * xt[2]
    n2 = xth[0] * xt[1] - xth[1] * xt[0]
    norm = np.sqrt(n0 * n0 + n1 * n1 + n2 * n2)
    if np.any(norm <= 0.0) or not np.all(np.isfinite(norm)):
        raise DomainError("degenerate tangent plane in chart")
    nu = (n0 / norm, n1 / norm, n2 / norm)
    if np.any(nu[0] <= 0.0):
        raise DomainError("chart normal turned away from the axis")

    two_tt = -dot(xtt, nu)
    two_tth = -dot(xtth, nu)
    two_thth = -dot(xthth, nu)

    det = ee * gg - ff * ff
    mean = (two_tt * gg - 2.0 * two_tth * ff + two_thth * ee) / det
    gauss = (two_tt * two_thth - two_tth * two_tth) / det
    disc = np.sqrt(np.maximum(mean * mean - 4.0 * gauss, 0.0))
    kappa1 = 0.5 * (mean - disc)
    kappa2 = 0.5 * (mean + disc)

    return ChartGeometry(
        form_tt=ee,
        form_ttheta=ff,
        form_thetatheta=gg,
        normal_local=np.stack(nu, axis=-1),
        mean_curvature=mean,
        gauss_curvature=gauss,
        kappa1=kappa1,
        kappa2=kappa2,
        second_form_norm_sq=mean * mean - 2.0 * gauss,
        steepness=1.0 / nu[0],
    )


@dataclass(frozen=True)
class SurfaceGeometry:
    """Pointwise first/second fundamental form data of a cylindrical graph."""

    form_tt: np.ndarray
    form_ttheta: np.ndarray
    form_thetatheta: np.ndarray
    normal: np.ndarray  # world coordinates, shape (n_t, n_theta, 3)
    kappa1: np.ndarray
    kappa2: np.ndarray
    mean_curvature: np.ndarray
    second_form_norm_sq: np.ndarray
    steepness: np.ndarray


def local_to_world(graph: CylindricalGraph, components: np.ndarray) -> np.ndarray:
    """Convert (omega, omega_perp, a) components to world vectors."""
    cos = np.cos(graph.theta_grid)
    sin = np.sin(graph.theta_grid)
    omega = np.multiply.outer(cos, graph.frame_b) + np.multiply.outer(
        sin, graph.frame_c
    )
    perp = np.multiply.outer(-sin, graph.frame_b) + np.multiply.outer(
        cos, graph.frame_c
    )
    return (
        components[..., 0:1] * omega[None, :, :]
        + components[..., 1:2] * perp[None, :, :]
        + components[..., 2:3] * graph.axis_direction
    )


def surface_geometry(graph: CylindricalGraph) -> SurfaceGeometry:
    """Normal, principal curvatures, mean curvature, and steepness of a
    cylindrical graph, from second-order differencing of the graph fields."""
    n_t = graph.t_grid.size
    spacing_t = (
        graph.axial_period / n_t
        if graph.t_periodic
        else (graph.t_grid[-1] - graph.t_grid[0]) / (n_t - 1)
    )
    spacing_theta = 2.0 * np.pi / graph.theta_grid.size
    axial = np.broadcast_to(graph.t_grid[:, None], graph.rho.shape)
    chart = chart_geometry(
        axial, graph.rho, spacing_t, spacing_theta, graph.axial_period
    )
    return SurfaceGeometry(
        form_tt=chart.form_tt,
        form_ttheta=chart.form_ttheta,
        form_thetatheta=chart.form_thetatheta,
        normal=local_to_world(graph, chart.normal_local),
        kappa1=chart.kappa1,
        kappa2=chart.kappa2,
        mean_curvature=chart.mean_curvature,
        second_form_norm_sq=chart.second_form_norm_sq,
        steepness=chart.steepness,
    )
