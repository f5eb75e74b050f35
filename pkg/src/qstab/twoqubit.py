"""Two-qubit system with a logical qubit encoded on span{|01>, |10>}.

The drift -omega0*sz(x)I + omega0*I(x)sz and the exchange-type couplings
sigma_i (x) sigma_j leave the single-excitation subspace invariant.  Encoding
|0L> = |01>, |1L> = |10> turns that subspace into a Bloch sphere whose
equator is exactly the circle of maximally entangled states, so the circle
machinery for a single qubit generates entanglement here: drive the logical
polar angle to pi/2 and let the drift park the state on the entangled circle.

Restricted to the subspace the dynamics read (with the lifting below)

    i d/dt |psiL> = 4*[-omega0*SLz + uLx*SLx + uLy*SLy] |psiL>,

an effective single qubit with frequency 4*omega0 and control scale 4, up to
a sign flip of both controls that we absorb into the carrier phase.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ParameterError, SubspaceError, TimeBudgetInfeasible
from .pulses import ControlPulse, Envelope, Resonant, Silence, StaticHold
from .states import BlochPoint, SystemParams, ensure_state
from .synthesis import (ControlClass, SynthesisResult, _base_design,
                        _envelope_pulse, _budget_case, _CASE_NAMES,
                        default_envelope_order, synth_circle_continuous)

TWO_PI = 2.0 * math.pi

_SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
_I2 = np.eye(2, dtype=complex)

KET_00 = np.array([1, 0, 0, 0], dtype=complex)
KET_01 = np.array([0, 1, 0, 0], dtype=complex)
KET_10 = np.array([0, 0, 1, 0], dtype=complex)
KET_11 = np.array([0, 0, 0, 1], dtype=complex)

SIGMA_YY = np.kron(_SY, _SY)


@dataclass(frozen=True)
class LogicalFrame:
    """Logical basis kets and the encoded Pauli operators (4x4)."""

    ket0: np.ndarray
    ket1: np.ndarray
    sigma_x: np.ndarray
    sigma_y: np.ndarray
    sigma_z: np.ndarray


def build_logical_frame() -> LogicalFrame:
    """Construct the logical frame and verify its operator identities.

    sigma_z^L = (sz(x)I - I(x)sz)/2, sigma_x^L = (sx(x)sx + sy(x)sy)/2 and
    sigma_y^L = (sy(x)sx - sx(x)sy)/2 when restricted by construction; all
    three annihilate span{|00>, |11>}.
    """
    k0, k1 = KET_01, KET_10
    sx = np.outer(k1, k0.conj()) + np.outer(k0, k1.conj())
    sy = 1j * (np.outer(k1, k0.conj()) - np.outer(k0, k1.conj()))
    sz = np.outer(k0, k0.conj()) - np.outer(k1, k1.conj())
    assert np.allclose(sz, (np.kron(_SZ, _I2) - np.kron(_I2, _SZ)) / 2.0, atol=1e-14)
    assert np.allclose(sx, (np.kron(_SX, _SX) + np.kron(_SY, _SY)) / 2.0, atol=1e-14)
    assert np.allclose(sy, (np.kron(_SY, _SX) - np.kron(_SX, _SY)) / 2.0, atol=1e-14)
    for op in (sx, sy, sz):
        assert np.allclose(op @ KET_00, 0.0, atol=1e-14)
        assert np.allclose(op @ KET_11, 0.0, atol=1e-14)
    return LogicalFrame(ket0=k0, ket1=k1, sigma_x=sx, sigma_y=sy, sigma_z=sz)


# the role of each coupling coefficient in terms of the logical control pair
LIFTING_ROLES = {"u_xx": "u_x", "u_yy": "u_x", "u_yx": "u_y", "u_xy": "-u_y"}


@dataclass(frozen=True)
class LiftedPulse:
    """A logical control pulse lifted to the four two-qubit couplings.

    The coefficients of sigma_i (x) sigma_j are tied to the logical pair by
    u_xx = u_yy = u_x and u_yx = -u_xy = u_y, which keeps the dynamics block
    diagonal on the logical subspace.
    """

    logical: ControlPulse

    @property
    def t_start(self) -> float:
        return self.logical.t_start

    @property
    def t_end(self) -> float:
        return self.logical.t_end

    def coefficients(self, t: float) -> dict[str, float]:
        ulx, uly = self.logical.segment_at(t).controls(t)
        return {"u_xx": ulx, "u_yy": ulx, "u_yx": uly, "u_xy": -uly}

    def hamiltonian(self, omega0: float, t: float) -> np.ndarray:
        """Full 4x4 two-qubit Hamiltonian H0 + Hc(t)."""
        c = self.coefficients(t)
        h0 = -omega0 * np.kron(_SZ, _I2) + omega0 * np.kron(_I2, _SZ)
        return (h0
                + c["u_xx"] * np.kron(_SX, _SX) + c["u_xy"] * np.kron(_SX, _SY)
                + c["u_yx"] * np.kron(_SY, _SX) + c["u_yy"] * np.kron(_SY, _SY))


def lift_logical_controls(logical: ControlPulse) -> LiftedPulse:
    """Lift a logical pulse to the four physical coupling coefficients."""
    return LiftedPulse(logical=logical)


def logical_bloch_state(p: BlochPoint) -> np.ndarray:
    """cos(theta/2)|0L> + e^{i phi} sin(theta/2)|1L> as a 4-dim state."""
    half = p.theta / 2.0
    return math.cos(half) * KET_01 + np.exp(1j * p.phi) * math.sin(half) * KET_10


def logical_projection(s: np.ndarray) -> tuple[np.ndarray, float]:
    """(amplitudes on (|0L>, |1L>), leakage outside the logical subspace)."""
    arr = np.asarray(s, dtype=complex)
    if arr.shape != (4,):
        raise DimensionError(f"expected a 4-dimensional state, got shape {arr.shape}")
    amps = np.array([arr[1], arr[2]], dtype=complex)
    leak = float(max(0.0, 1.0 - (abs(amps[0]) ** 2 + abs(amps[1]) ** 2)))
    return amps, leak


def logical_bloch_point(s: np.ndarray, leak_tol: float = 1e-6) -> BlochPoint:
    """Bloch point of the logical projection; raises if leakage exceeds leak_tol."""
    amps, leak = logical_projection(s)
    if leak > leak_tol:
        raise SubspaceError(f"leakage {leak:.3e} exceeds {leak_tol:.3e}")
    from .states import state_to_bloch

    return state_to_bloch(amps / np.linalg.norm(amps))


def concurrence(s: np.ndarray) -> float:
    """Pure-state concurrence |<psi| sy(x)sy |psi*>| of a two-qubit state."""
    arr = ensure_state(s, dim=4)
    return float(abs(arr.conj() @ SIGMA_YY @ arr.conj()))


def em_membership(s: np.ndarray, tol: float = 1e-6) -> bool:
    """True iff s sits on the maximally entangled circle within tol.

    Requires negligible leakage and both logical amplitudes equal to
    sqrt(2)/2 within tol.
    """
    arr = ensure_state(s, dim=4)
    amps, leak = logical_projection(arr)
    if leak > tol:
        return False
    half = math.sqrt(0.5)
    return abs(abs(amps[0]) - half) <= tol and abs(abs(amps[1]) - half) <= tol


def effective_params(params: SystemParams) -> SystemParams:
    """Single-qubit parameters of the restricted logical dynamics."""
    return SystemParams(omega0=4.0 * params.omega0, g0=4.0 * params.g0)


def logical_pulse_from_effective(pulse: ControlPulse) -> ControlPulse:
    """Map an effective single-qubit pulse to the logical control pair.

    The restriction carries (uLx, uLy) -> (-4*uLx, -4*uLy), so the inverse
    scales amplitudes by 1/4 and flips both controls; the flip is a pi shift
    of the carrier phase.
    """
    segments = []
    for seg in pulse.segments:
        if isinstance(seg, Silence):
            segments.append(seg)
        elif isinstance(seg, Resonant):
            segments.append(Resonant(g=seg.g / 4.0, omega_rf=seg.omega_rf,
                                     phi1=(seg.phi1 + math.pi) % TWO_PI,
                                     t_start=seg.t_start, t_end=seg.t_end))
        elif isinstance(seg, StaticHold):
            segments.append(StaticHold(ux=-seg.ux / 4.0, uy=-seg.uy / 4.0,
                                       t_start=seg.t_start, t_end=seg.t_end))
        elif isinstance(seg, Envelope):
            if seg.carrier_omega == 0.0:
                raise ParameterError("cannot phase-shift a zero-frequency carrier")
            segments.append(Envelope(g=seg.g / 4.0, n=seg.n,
                                     carrier_omega=seg.carrier_omega,
                                     carrier_t_ref=seg.carrier_t_ref + math.pi / seg.carrier_omega,
                                     sign_y=seg.sign_y,
                                     t_start=seg.t_start, t_end=seg.t_end))
        else:
            raise ParameterError(f"unknown segment type {type(seg)!r}")
    return ControlPulse(segments)


def effective_pulse_from_logical(pulse: ControlPulse) -> ControlPulse:
    """Inverse of logical_pulse_from_effective (scale by 4, flip both controls)."""
    segments = []
    for seg in pulse.segments:
        if isinstance(seg, Silence):
            segments.append(seg)
        elif isinstance(seg, Resonant):
            segments.append(Resonant(g=seg.g * 4.0, omega_rf=seg.omega_rf,
                                     phi1=(seg.phi1 + math.pi) % TWO_PI,
                                     t_start=seg.t_start, t_end=seg.t_end))
        elif isinstance(seg, StaticHold):
            segments.append(StaticHold(ux=-seg.ux * 4.0, uy=-seg.uy * 4.0,
                                       t_start=seg.t_start, t_end=seg.t_end))
        elif isinstance(seg, Envelope):
            if seg.carrier_omega == 0.0:
                raise ParameterError("cannot phase-shift a zero-frequency carrier")
            segments.append(Envelope(g=seg.g * 4.0, n=seg.n,
                                     carrier_omega=seg.carrier_omega,
                                     carrier_t_ref=seg.carrier_t_ref - math.pi / seg.carrier_omega,
                                     sign_y=seg.sign_y,
                                     t_start=seg.t_start, t_end=seg.t_end))
        else:
            raise ParameterError(f"unknown segment type {type(seg)!r}")
    return ControlPulse(segments)


def entangler_time_bound(params: SystemParams, control_class: ControlClass) -> float:
    """Sufficient time budget for reaching the entangled circle.

    Continuous couplings: pi/g0 + 2*pi/omega0.  Merely bounded couplings: the
    better of pi/(4*g0) + 2*pi/omega0 and pi/g0 + 3*pi/(2*omega0).
    """
    omega0, g0 = params.omega0, params.g0
    if control_class is ControlClass.BOUNDED_CONTINUOUS:
        return math.pi / g0 + TWO_PI / omega0
    return min(math.pi / (4.0 * g0) + TWO_PI / omega0,
               math.pi / g0 + 1.5 * math.pi / omega0)


def synth_entangler(p0, params: SystemParams, ts: float | None = None,
                    control_class: ControlClass = ControlClass.BOUNDED_CONTINUOUS,
                    t0: float = 0.0, phi_target: float = 0.0) -> SynthesisResult:
    """Drive a logical-subspace state onto the maximally entangled circle.

    p0 may be a BlochPoint on the logical sphere or a 4-dim state vector (a
    state outside the logical subspace raises SubspaceError).  The synthesis
    runs the circle construction on the effective system (frequency
    4*omega0, bound 4*g0) and lifts the result; with a budget, raises
    TimeBudgetInfeasible when ts is below the class's sufficient bound.
    """
    if isinstance(p0, BlochPoint):
        logical_p0 = p0
    else:
        logical_p0 = logical_bloch_point(np.asarray(p0), leak_tol=1e-9)
    eff = effective_params(params)
    target = BlochPoint(math.pi / 2.0, phi_target)
    case = _budget_case(logical_p0, target)
    claimed = None
    if ts is not None:
        claimed = entangler_time_bound(params, control_class)
        if ts < claimed:
            raise TimeBudgetInfeasible(
                f"budget {ts:.6g} is below the sufficient bound {claimed:.6g} "
                f"for {control_class.value} couplings")
        phi_ge, theta_up = case
        n = default_envelope_order(eff, reduced_area=theta_up)
        eff_pulse, t_f, info = _envelope_pulse(logical_p0, target, eff, t0, n,
                                               short_wait=phi_ge, reduced_area=theta_up)
    else:
        eff_result = synth_circle_continuous(logical_p0, target, eff, t0=t0)
        eff_pulse, t_f = eff_result.pulse, eff_result.t_f
        info = {key: eff_result.design[key] for key in ("k", "n", "g", "t1", "area")}
    design = _base_design("entangler", logical_p0, target, params, t0, control_class)
    design.update(info)
    design["case"] = _CASE_NAMES[case]
    design["effective_omega0"] = eff.omega0
    design["effective_g0"] = eff.g0
    design["g"] = info["g"] / 4.0  # logical-coupling amplitude after lifting
    pulse = lift_logical_controls(logical_pulse_from_effective(eff_pulse))
    return SynthesisResult(pulse=pulse, t_f=t_f, design=design, claimed_bound=claimed)
