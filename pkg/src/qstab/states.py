"""State vectors, Bloch parameterization, and small operator algebra.

Complex amplitudes are plain numpy arrays of length 2 or 4.  The evolution
convention used throughout the package is

    d/dt |psi> = +i * G(t) |psi>,      G = omega0*Sz + ux*Sx + uy*Sy,

so free evolution advances the relative phase as phi(t) = phi0 - omega0*(t-t0).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, HermiticityError, ParameterError

TWO_PI = 2.0 * math.pi

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

SPIN_X = PAULI_X / 2.0
SPIN_Y = PAULI_Y / 2.0
SPIN_Z = PAULI_Z / 2.0

# phi is meaningless this close to a pole (sin(theta) < 2e-12) and is pinned to 0
_POLE_SIN_TOL = 2e-12


@dataclass(frozen=True)
class BlochPoint:
    """A point (theta, phi) on the Bloch sphere, canonicalized on construction.

    theta is the polar angle from |0> in [0, pi]; phi the relative phase in
    [0, 2*pi).  At the poles phi is pinned to 0 so the parameterization is
    unique.
    """

    theta: float
    phi: float = 0.0

    def __post_init__(self) -> None:
        theta = float(self.theta)
        phi = float(self.phi)
        if not math.isfinite(theta) or not math.isfinite(phi):
            raise ParameterError("Bloch angles must be finite")
        if -1e-12 <= theta < 0.0:
            theta = 0.0
        elif math.pi < theta <= math.pi + 1e-12:
            theta = math.pi
        if not 0.0 <= theta <= math.pi:
            raise ParameterError(f"theta must lie in [0, pi], got {theta}")
        phi = phi % TWO_PI
        if math.sin(theta) < _POLE_SIN_TOL:
            phi = 0.0
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "phi", phi)


@dataclass(frozen=True)
class SystemParams:
    """Larmor frequency omega0 and control amplitude bound g0 (same units)."""

    omega0: float
    g0: float

    def __post_init__(self) -> None:
        if not (self.omega0 > 0.0 and math.isfinite(self.omega0)):
            raise ParameterError(f"omega0 must be positive, got {self.omega0}")
        if not (self.g0 > 0.0 and math.isfinite(self.g0)):
            raise ParameterError(f"g0 must be positive, got {self.g0}")

    @property
    def drift_period(self) -> float:
        return TWO_PI / self.omega0


def ensure_state(s: np.ndarray, dim: int | None = None, norm_tol: float = 1e-9) -> np.ndarray:
    """Validate a state vector (dimension 2 or 4, unit norm) and return it as complex."""
    arr = np.asarray(s, dtype=complex)
    if arr.ndim != 1 or arr.shape[0] not in (2, 4):
        raise DimensionError(f"state must be a vector of length 2 or 4, got shape {arr.shape}")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionError(f"expected a {dim}-dimensional state, got {arr.shape[0]}")
    norm = float(np.linalg.norm(arr))
    if abs(norm - 1.0) > norm_tol:
        raise ParameterError(f"state norm is {norm}, not 1 within {norm_tol}")
    return arr


def bloch_to_state(p: BlochPoint) -> np.ndarray:
    """Return cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>."""
    half = p.theta / 2.0
    return np.array([math.cos(half), np.exp(1j * p.phi) * math.sin(half)], dtype=complex)


def state_to_bloch(s: np.ndarray) -> BlochPoint:
    """Invert the Bloch parameterization up to a global phase.

    Poles canonicalize to phi = 0.  Raises DimensionError for states that are
    not two-dimensional.
    """
    arr = np.asarray(s, dtype=complex)
    if arr.ndim != 1 or arr.shape[0] != 2:
        raise DimensionError(f"expected a 2-dimensional state, got shape {arr.shape}")
    a, b = arr
    theta = 2.0 * math.atan2(abs(b), abs(a))
    if math.sin(theta) < _POLE_SIN_TOL:
        return BlochPoint(theta, 0.0)
    phi = (np.angle(b) - np.angle(a)) % TWO_PI
    return BlochPoint(theta, phi)


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """|<a|b>|^2; insensitive to global phases of either argument."""
    av = np.asarray(a, dtype=complex)
    bv = np.asarray(b, dtype=complex)
    if av.shape != bv.shape:
        raise DimensionError(f"state dimensions differ: {av.shape} vs {bv.shape}")
    return float(abs(np.vdot(av, bv)) ** 2)


def effective_hamiltonian(params: SystemParams, ux: float, uy: float) -> np.ndarray:
    """Total generator omega0*Sz + ux*Sx + uy*Sy (Hermitian, traceless)."""
    return params.omega0 * SPIN_Z + ux * SPIN_X + uy * SPIN_Y


def is_hermitian(h: np.ndarray, tol: float = 1e-12) -> bool:
    arr = np.asarray(h, dtype=complex)
    return arr.ndim == 2 and arr.shape[0] == arr.shape[1] and bool(
        np.max(np.abs(arr - arr.conj().T)) <= tol
    )


def is_equilibrium(h: np.ndarray, s: np.ndarray, tol: float = 1e-9) -> bool:
    """True iff the projector onto s commutes with h within tol (Frobenius norm).

    Equivalently, s is an eigenvector of h: the state is frozen (up to phase)
    under evolution generated by h.
    """
    arr = np.asarray(h, dtype=complex)
    if not is_hermitian(arr):
        raise HermiticityError("generator must be Hermitian")
    if tol <= 0.0:
        raise ParameterError("tolerance must be positive")
    vec = ensure_state(s, dim=arr.shape[0])
    rho = np.outer(vec, vec.conj())
    comm = arr @ rho - rho @ arr
    return float(np.linalg.norm(comm)) <= tol
