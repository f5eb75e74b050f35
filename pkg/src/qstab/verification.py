"""Independent certification of synthesized pulses.

Every check re-measures a claim with the RK4 oracle or a closed form and
records (claimed, measured, tolerance, pass).  The pipeline is deterministic:
identical inputs and step sizes reproduce a report bit for bit.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import IntervalError
from .propagation import Trajectory, oracle_propagate
from .pulses import ControlPulse, pulse_energy
from .states import BlochPoint, SystemParams, bloch_to_state, fidelity
from .synthesis import ControlClass, SynthesisResult
from .twoqubit import LiftedPulse, em_membership, logical_bloch_state, logical_projection

TWO_PI = 2.0 * math.pi

FIDELITY_TOL = 1e-6
CONTINUITY_TOL = 1e-12
BOUND_SLACK = 1e-12
RESIDENCE_TOL = 1e-6
LEAKAGE_TOL = 1e-9
DRIFT_PERIODS = 10


@dataclass(frozen=True)
class CheckRecord:
    name: str
    claimed: object
    measured: object
    tolerance: float
    passed: bool


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckRecord, ...]
    provenance: dict = field(default_factory=dict)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)


def _logical_pulse(pulse) -> ControlPulse:
    return pulse.logical if isinstance(pulse, LiftedPulse) else pulse


def _envelope_sup(seg, samples: int) -> float:
    ts = np.linspace(seg.t_start, seg.t_end, samples)
    extra = seg.extremal_times()
    if extra:
        ts = np.concatenate([ts, np.asarray(extra)])
    width = seg.t_end - seg.t_start
    mid = 0.5 * (seg.t_start + seg.t_end)
    tau = np.where(ts < mid, (seg.t_start + seg.t_end - 2.0 * ts) / width,
                   (2.0 * ts - seg.t_start - seg.t_end) / width)
    gt = seg.g * (1.0 - np.clip(tau, 0.0, 1.0) ** seg.n)
    ph = seg.carrier_omega * (ts - seg.carrier_t_ref)
    return float(np.max(np.abs(gt) * np.maximum(np.abs(np.cos(ph)), np.abs(np.sin(ph)))))


def check_bounds(pulse, g0: float, samples: int = 100_000) -> CheckRecord:
    """Measure sup max(|u_x|, |u_y|): dense samples plus per-segment extrema.

    Silence, holds, and resonant segments have exact closed-form suprema;
    envelope segments combine dense sampling with their analytic extremal
    times (ramp peak and carrier turning points).
    """
    from .pulses import Envelope

    base = _logical_pulse(pulse)
    envelopes = [seg for seg in base.segments if isinstance(seg, Envelope)]
    per_env = max(1024, samples // max(1, len(envelopes)))
    measured = 0.0
    for seg in base.segments:
        if isinstance(seg, Envelope):
            measured = max(measured, _envelope_sup(seg, per_env))
        else:
            measured = max(measured, seg.sup_abs())
    return CheckRecord("bounds", claimed=g0, measured=measured,
                       tolerance=BOUND_SLACK, passed=measured <= g0 + BOUND_SLACK)


def check_continuity(pulse, tol: float = CONTINUITY_TOL) -> CheckRecord:
    """Left/right control limits must agree at every internal boundary."""
    base = _logical_pulse(pulse)
    worst = 0.0
    for prev, nxt in zip(base.segments, base.segments[1:]):
        t = nxt.t_start
        lx, ly = prev.controls(t)
        rx, ry = nxt.controls(t)
        worst = max(worst, abs(lx - rx), abs(ly - ry))
    return CheckRecord("continuity", claimed=0.0, measured=worst,
                       tolerance=tol, passed=worst <= tol)


def check_circle_residence(traj: Trajectory, theta_f: float, from_t: float,
                           tol: float = RESIDENCE_TOL) -> CheckRecord:
    """Max |theta(t) - theta_f| over samples with t >= from_t."""
    if from_t < traj.t[0] - 1e-9 or from_t > traj.t[-1] + 1e-9:
        raise IntervalError(f"trajectory does not cover t={from_t}")
    mask = traj.t >= from_t - 1e-12
    thetas = traj.thetas()[mask]
    measured = float(np.max(np.abs(thetas - theta_f))) if thetas.size else math.inf
    return CheckRecord("circle_residence", claimed=theta_f, measured=measured,
                       tolerance=tol, passed=measured <= tol)


def _em_residence(traj: Trajectory, from_t: float, tol: float) -> CheckRecord:
    mask = traj.t >= from_t - 1e-12
    states = traj.states[mask]
    ok = all(em_membership(states[i] / np.linalg.norm(states[i]), tol)
             for i in range(states.shape[0]))
    amps = np.abs(states[:, 1:3])
    measured = float(np.max(np.abs(amps - math.sqrt(0.5)))) if states.size else math.inf
    return CheckRecord("entangled_circle_residence", claimed=math.sqrt(0.5),
                       measured=measured, tolerance=tol, passed=ok)


def verify_synthesis(result: SynthesisResult, p0: BlochPoint, pf: BlochPoint,
                     params: SystemParams,
                     budgets: tuple[Optional[float], Optional[float]] | None = None,
                     dt: float | None = None,
                     drift_periods: int = DRIFT_PERIODS) -> VerificationReport:
    """Re-measure every claim of a synthesis result with the RK4 oracle.

    Checks target fidelity at t_f, amplitude bounds, the claimed continuity
    class, residence after t_f over drift_periods free periods, and optional
    time/energy budgets.
    """
    kind = result.design.get("kind", "circle")
    lifted = isinstance(result.pulse, LiftedPulse)
    omega_drift = 4.0 * params.omega0 if lifted else params.omega0
    if dt is None:
        dt = 1e-4 * TWO_PI / omega_drift
    horizon = result.t_f + drift_periods * TWO_PI / omega_drift
    if lifted:
        s0 = logical_bloch_state(p0)
        target = logical_bloch_state(pf)
    else:
        s0 = bloch_to_state(p0)
        target = bloch_to_state(pf)
    stride = max(1, int(round((TWO_PI / omega_drift) / dt / 256)))
    traj = oracle_propagate(result.pulse, s0, params, dt, horizon, sample_stride=stride)

    checks: list[CheckRecord] = []
    idx_tf = int(np.argmin(np.abs(traj.t - result.t_f)))
    fid_tf = fidelity(traj.states[idx_tf], target)
    checks.append(CheckRecord("target_fidelity", claimed=1.0, measured=fid_tf,
                              tolerance=FIDELITY_TOL, passed=fid_tf >= 1.0 - FIDELITY_TOL))

    checks.append(check_bounds(result.pulse, params.g0))

    claimed_class = result.design.get("control_class", ControlClass.BOUNDED.value)
    cont = check_continuity(result.pulse)
    class_ok = cont.passed or claimed_class == ControlClass.BOUNDED.value
    checks.append(CheckRecord("continuity_class", claimed=claimed_class,
                              measured="continuous" if cont.passed else "discontinuous",
                              tolerance=CONTINUITY_TOL, passed=class_ok))

    if kind == "point_hold":
        mask = traj.t >= result.t_f - 1e-12
        fids = np.abs(traj.states[mask] @ target.conj()) ** 2
        measured = float(np.min(fids)) if fids.size else 0.0
        checks.append(CheckRecord("point_residence", claimed=1.0, measured=measured,
                                  tolerance=FIDELITY_TOL,
                                  passed=measured >= 1.0 - FIDELITY_TOL))
    elif kind == "entangler":
        checks.append(_em_residence(traj, result.t_f, RESIDENCE_TOL))
        leak = float(np.max([logical_projection(traj.states[i])[1]
                             for i in range(traj.states.shape[0])]))
        checks.append(CheckRecord("leakage", claimed=0.0, measured=leak,
                                  tolerance=LEAKAGE_TOL, passed=leak <= LEAKAGE_TOL))
    else:
        checks.append(check_circle_residence(traj, pf.theta, result.t_f))

    if budgets is not None:
        ts, es = budgets
        if ts is not None:
            elapsed = result.t_f - result.design.get("t0", traj.t[0])
            checks.append(CheckRecord("time_budget", claimed=ts, measured=elapsed,
                                      tolerance=1e-12,
                                      passed=elapsed <= ts + 1e-12 * max(1.0, abs(ts))))
        if es is not None:
            energy = pulse_energy(_logical_pulse(result.pulse),
                                  result.design.get("t0", traj.t[0]), result.t_f)
            checks.append(CheckRecord("energy_budget", claimed=es, measured=energy,
                                      tolerance=1e-12,
                                      passed=energy <= es + 1e-12 * max(1.0, abs(es))))

    provenance = dict(result.design)
    provenance["dt"] = dt
    provenance["drift_periods"] = drift_periods
    return VerificationReport(checks=tuple(checks), provenance=provenance)
