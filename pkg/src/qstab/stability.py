"""Static-hold stabilizability: predicates, hold solving, and region maps.

A target point admits a static hold iff the required constant controls
(omega0*tan(theta_f)*cos(phi_f), omega0*tan(theta_f)*sin(phi_f)) fit inside
the amplitude bound, i.e.

    omega0 * |tan(theta_f)| * max(|sin(phi_f)|, |cos(phi_f)|) <= g0.

The equator (theta_f = pi/2) is never stabilizable for finite g0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotStabilizable, ParameterError
from .states import BlochPoint, SystemParams

# treat polar angles this close to pi/2 as exactly on the equator
_EQUATOR_TOL = 1e-12


def _condition_value(theta: float, phi: float) -> float:
    """|tan(theta)| * max(|sin(phi)|, |cos(phi)|), +inf on the equator."""
    if abs(theta - math.pi / 2.0) <= _EQUATOR_TOL:
        return math.inf
    return abs(math.tan(theta)) * max(abs(math.sin(phi)), abs(math.cos(phi)))


def check_point_stabilizable(pf: BlochPoint, params: SystemParams) -> bool:
    """True iff pf admits a static hold within the bound (equality counts)."""
    return _condition_value(pf.theta, pf.phi) * params.omega0 <= params.g0


def hold_controls(pf: BlochPoint, params: SystemParams) -> tuple[float, float]:
    """Constant controls making pf an eigenvector of the total generator."""
    if not check_point_stabilizable(pf, params):
        raise NotStabilizable(
            f"({pf.theta}, {pf.phi}) admits no static hold within g0={params.g0}")
    factor = params.omega0 * math.tan(pf.theta)
    return factor * math.cos(pf.phi), factor * math.sin(pf.phi)


def single_axis_stabilizable_phases(axis: str) -> frozenset[float]:
    """Azimuths that admit a static hold when only one control is available.

    With a single x (resp. y) control the total generator's transverse part is
    pinned to the x (resp. y) axis, so off-pole eigenvectors only exist at
    these phases.
    """
    if axis == "x":
        return frozenset({0.0, math.pi})
    if axis == "y":
        return frozenset({math.pi / 2.0, 3.0 * math.pi / 2.0})
    raise ParameterError(f"axis must be 'x' or 'y', got {axis!r}")


@dataclass(frozen=True)
class RegionGrid:
    """Boolean stabilizability map over a (theta, phi) grid at a fixed ratio g0/omega0."""

    ratio: float
    thetas: np.ndarray
    phis: np.ndarray
    cells: np.ndarray

    def stabilizable_fraction(self) -> float:
        return float(np.count_nonzero(self.cells)) / self.cells.size


def region_grid(ratio: float, n_theta: int, n_phi: int) -> RegionGrid:
    """Evaluate the stabilizability condition on a uniform grid.

    theta samples include both poles; phi samples exclude 2*pi so the grid
    tiles the sphere without duplication.
    """
    if not (ratio > 0.0):
        raise ParameterError(f"ratio must be positive, got {ratio}")
    if n_theta < 2 or n_phi < 2:
        raise ParameterError("grid resolutions must be >= 2")
    thetas = np.linspace(0.0, math.pi, n_theta)
    phis = np.linspace(0.0, 2.0 * math.pi, n_phi, endpoint=False)
    max_sc = np.maximum(np.abs(np.sin(phis)), np.abs(np.cos(phis)))
    off_equator = np.abs(thetas - math.pi / 2.0) > _EQUATOR_TOL
    lhs = np.abs(np.tan(thetas))[:, None] * max_sc[None, :]
    cells = (lhs <= ratio) & off_equator[:, None]
    return RegionGrid(ratio=float(ratio), thetas=thetas, phis=phis, cells=cells)
