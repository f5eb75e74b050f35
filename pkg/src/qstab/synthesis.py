"""Explicit open-loop control laws for the driven two-level system.

Three families of pulses, all with closed-form design parameters:

* point stabilization: a resonant transfer segment followed by a static hold
  that makes the target an eigenvector of the total generator;
* circle stabilization: wait for the free drift to align the phase, then an
  n-th order polynomial-envelope drive that walks the polar angle onto the
  target latitude circle while staying continuous and inside the amplitude
  bound;
* time/energy-budgeted variants that pick the discrete winding number to meet
  explicit sufficient bounds.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any, Optional

from .errors import NotStabilizable, ParameterError, TimeBudgetInfeasible
from .pulses import ControlPulse, Envelope, Resonant, Silence, StaticHold
from .stability import check_point_stabilizable, hold_controls
from .states import BlochPoint, SystemParams

TWO_PI = 2.0 * math.pi


class ControlClass(enum.Enum):
    """Admissible control families: bounded, or bounded and continuous."""

    BOUNDED = "bounded"
    BOUNDED_CONTINUOUS = "bounded_continuous"


@dataclass(frozen=True)
class SynthesisResult:
    """A synthesized pulse plus the design parameters that produced it."""

    pulse: Any
    t_f: float
    design: dict = field(default_factory=dict)
    claimed_bound: Optional[float] = None
    claimed_energy: Optional[float] = None


def _base_design(kind: str, p0: BlochPoint, pf: BlochPoint, params: SystemParams,
                 t0: float, control_class: ControlClass) -> dict:
    return {
        "kind": kind,
        "control_class": control_class.value,
        "initial": [p0.theta, p0.phi],
        "target": [pf.theta, pf.phi],
        "omega0": params.omega0,
        "g0": params.g0,
        "t0": t0,
    }


def _resonant_transfer_design(p0: BlochPoint, pf: BlochPoint, omega0: float,
                              k: int) -> tuple[float, float, float, float]:
    """(phase_total, g, omega_rf, phi1) of the resonant transfer for winding k.

    phase_total is the drift phase omega0*(t_f - t0) accumulated during the
    transfer; it must be positive.
    """
    half_sum = 0.5 * (p0.theta + pf.theta)
    phase_total = 2.0 * k * math.pi - pf.phi + p0.phi + math.pi * math.cos(half_sum)
    if phase_total <= 0.0:
        raise ParameterError(f"winding k={k} gives a non-positive transfer phase")
    g = omega0 * math.pi * math.sin(half_sum) / phase_total
    omega_rf = -(2.0 * k * math.pi - pf.phi + p0.phi) * omega0 / phase_total
    return phase_total, g, omega_rf, p0.phi


def _min_winding_for_bound(p0: BlochPoint, pf: BlochPoint, params: SystemParams) -> int:
    """Smallest integer k keeping the transfer amplitude within g0."""
    half_sum = 0.5 * (p0.theta + pf.theta)
    rhs = ((pf.phi - p0.phi - math.pi * math.cos(half_sum)) / TWO_PI
           + params.omega0 * math.sin(half_sum) / (2.0 * params.g0))
    k = math.ceil(rhs)
    # keep the transfer phase positive (only binding in degenerate corners)
    while 2.0 * k * math.pi - pf.phi + p0.phi + math.pi * math.cos(half_sum) <= 0.0:
        k += 1
    return k


def synth_point_hold(p0: BlochPoint, pf: BlochPoint, params: SystemParams,
                     t0: float = 0.0) -> SynthesisResult:
    """Steer p0 to pf by a resonant pulse, then freeze pf with a static hold.

    Requires the target to admit a bounded static hold; raises NotStabilizable
    otherwise (in particular for any target on the equator).
    """
    if not check_point_stabilizable(pf, params):
        cond = params.omega0 * abs(math.tan(pf.theta)) * max(
            abs(math.sin(pf.phi)), abs(math.cos(pf.phi)))
        raise NotStabilizable(
            "target not stabilizable: the static hold needs "
            f"omega0*|tan(theta_f)|*max(|sin(phi_f)|,|cos(phi_f)|) = {cond:.6g} "
            f"<= g0 = {params.g0:.6g}")
    ux, uy = hold_controls(pf, params)
    design = _base_design("point_hold", p0, pf, params, t0, ControlClass.BOUNDED)
    design["hold_ux"] = ux
    design["hold_uy"] = uy
    if p0 == pf:
        pulse = ControlPulse([StaticHold(ux, uy, t0, math.inf)])
        design.update({"k": 0, "phase_total": 0.0, "g": 0.0, "omega_rf": 0.0,
                       "phi1": p0.phi})
        return SynthesisResult(pulse=pulse, t_f=t0, design=design)
    k = _min_winding_for_bound(p0, pf, params)
    phase_total, g, omega_rf, phi1 = _resonant_transfer_design(p0, pf, params.omega0, k)
    t_f = phase_total / params.omega0 + t0
    pulse = ControlPulse([
        Resonant(g, omega_rf, phi1, t0, t_f),
        StaticHold(ux, uy, t_f, math.inf),
    ])
    design.update({"k": k, "phase_total": phase_total, "g": g,
                   "omega_rf": omega_rf, "phi1": phi1})
    return SynthesisResult(pulse=pulse, t_f=t_f, design=design)


def _envelope_pulse(p0: BlochPoint, pf: BlochPoint, params: SystemParams, t0: float,
                    n: int, short_wait: bool, reduced_area: bool) -> tuple[ControlPulse, float, dict]:
    """Shared circle-transfer construction.

    short_wait: start the envelope at the first drift alignment (needs
    phi0 >= pi/2) instead of waiting an extra turn.
    reduced_area: drive the polar angle directly up (needs theta_f >= theta_0)
    instead of taking two full revolutions.
    """
    omega0, g0 = params.omega0, params.g0
    if short_wait:
        if p0.phi < math.pi / 2.0:
            raise ParameterError("short wait needs phi0 >= pi/2")
        t1 = (p0.phi - math.pi / 2.0) / omega0 + t0
    else:
        t1 = (p0.phi + 1.5 * math.pi) / omega0 + t0
    if reduced_area:
        if pf.theta < p0.theta:
            raise ParameterError("reduced area needs theta_f >= theta_0")
        area = pf.theta - p0.theta
    else:
        area = 4.0 * math.pi + pf.theta - p0.theta
    k = max(1, math.ceil((n + 1) * omega0 / (n * g0) * area / TWO_PI
                         + pf.phi / TWO_PI - 0.25))
    window = (2.0 * k * math.pi + math.pi / 2.0 - pf.phi) / omega0
    g = (n + 1) / n * area / window
    t_f = t1 + window
    segments = []
    if t1 > t0:
        segments.append(Silence(t0, t1))
    segments.append(Envelope(g=g, n=n, carrier_omega=omega0, carrier_t_ref=t1,
                             sign_y=-1.0, t_start=t1, t_end=t_f))
    segments.append(Silence(t_f, math.inf))
    info = {"k": k, "n": n, "g": g, "t1": t1, "area": area}
    return ControlPulse(segments), t_f, info


def default_envelope_order(params: SystemParams, reduced_area: bool = False) -> int:
    """Minimal integer order exceeding the case threshold."""
    threshold = (2.0 if reduced_area else 8.0) * params.omega0 / params.g0
    return math.floor(threshold) + 1


def synth_circle_continuous(p0: BlochPoint, pf: BlochPoint, params: SystemParams,
                            t0: float = 0.0, n: int | None = None) -> SynthesisResult:
    """Continuous bounded transfer onto the latitude circle through pf.

    Works for every g0 > 0: the envelope wait and winding number absorb an
    arbitrarily small amplitude bound.  After t_f the state drifts freely
    along the circle and revisits pf every drift period.
    """
    if n is None:
        n = default_envelope_order(params)
    if n < 1:
        raise ParameterError(f"envelope order must be >= 1, got {n}")
    design = _base_design("circle", p0, pf, params, t0, ControlClass.BOUNDED_CONTINUOUS)
    if p0 == pf:
        pulse = ControlPulse([Silence(t0, math.inf)])
        design.update({"k": 0, "n": n, "g": 0.0, "t1": t0, "area": 0.0})
        return SynthesisResult(pulse=pulse, t_f=t0, design=design)
    pulse, t_f, info = _envelope_pulse(p0, pf, params, t0, n,
                                       short_wait=False, reduced_area=False)
    design.update(info)
    return SynthesisResult(pulse=pulse, t_f=t_f, design=design)


def _budget_case(p0: BlochPoint, pf: BlochPoint) -> tuple[bool, bool]:
    """(phi0 >= pi/2, theta_f >= theta_0) sign pair selecting the construction."""
    return p0.phi >= math.pi / 2.0, pf.theta >= p0.theta


_CASE_NAMES = {(False, False): "case1", (False, True): "case2",
               (True, False): "case3", (True, True): "case4"}


def transition_time_bound(params: SystemParams, control_class: ControlClass,
                          case: tuple[bool, bool] | None = None) -> float:
    """Sufficient transition-time bound for circle stabilization.

    Without a case: the class-level guarantee (continuous controls get
    4*pi/g0 + 8*pi/omega0; merely bounded controls get the better of
    pi/g0 + 8*pi/omega0 and 4*pi/g0 + 6*pi/omega0).  With a sign-pair case,
    the per-case bound achieved by the envelope construction.
    """
    omega0, g0 = params.omega0, params.g0
    if case is not None:
        phi_ge, theta_up = case
        amp = math.pi / g0 if theta_up else 4.0 * math.pi / g0
        drift = 6.0 * math.pi / omega0 if phi_ge else 8.0 * math.pi / omega0
        return amp + drift
    if control_class is ControlClass.BOUNDED_CONTINUOUS:
        return 4.0 * math.pi / g0 + 8.0 * math.pi / omega0
    return min(math.pi / g0 + 8.0 * math.pi / omega0,
               4.0 * math.pi / g0 + 6.0 * math.pi / omega0)


def synth_circle_within_budget(p0: BlochPoint, pf: BlochPoint, params: SystemParams,
                               ts: float, t0: float = 0.0) -> SynthesisResult:
    """Circle transfer guaranteed to finish within the time budget ts.

    Dispatches on the sign pair (phi0 - pi/2, theta_f - theta_0): a phase
    already past alignment skips a drift turn, and a non-decreasing polar
    angle takes the direct ramp instead of two revolutions.  Raises
    TimeBudgetInfeasible when ts is below the applicable sufficient bound
    (which says nothing about impossibility).
    """
    if ts <= 0.0:
        raise TimeBudgetInfeasible(f"time budget must be positive, got {ts}")
    case = _budget_case(p0, pf)
    bound = transition_time_bound(params, ControlClass.BOUNDED_CONTINUOUS, case)
    if ts < bound:
        raise TimeBudgetInfeasible(
            f"budget {ts:.6g} is below the sufficient bound {bound:.6g} "
            f"for {_CASE_NAMES[case]}")
    phi_ge, theta_up = case
    n = default_envelope_order(params, reduced_area=theta_up)
    design = _base_design("circle", p0, pf, params, t0, ControlClass.BOUNDED_CONTINUOUS)
    design["case"] = _CASE_NAMES[case]
    if p0 == pf:
        pulse = ControlPulse([Silence(t0, math.inf)])
        design.update({"k": 0, "n": n, "g": 0.0, "t1": t0, "area": 0.0})
        return SynthesisResult(pulse=pulse, t_f=t0, design=design,
                               claimed_bound=bound)
    pulse, t_f, info = _envelope_pulse(p0, pf, params, t0, n,
                                       short_wait=phi_ge, reduced_area=theta_up)
    design.update(info)
    return SynthesisResult(pulse=pulse, t_f=t_f, design=design, claimed_bound=bound)


def feasible_k_time_energy(p0: BlochPoint, pf: BlochPoint, params: SystemParams,
                           ts: float, es: float) -> set[int]:
    """Winding numbers whose resonant transfer meets both budgets.

    A winding k is feasible iff the closed-form transfer time is at most ts,
    the closed-form pulse energy is at most es, and the transfer phase is
    positive.  The empty set is a valid result.
    """
    if ts <= 0.0 or es <= 0.0:
        raise ParameterError("time and energy budgets must be positive")
    omega0 = params.omega0
    half_sum = 0.5 * (p0.theta + pf.theta)
    sin_hs = math.sin(half_sum)
    cos_hs = math.cos(half_sum)
    k_lo = math.ceil(omega0 * math.pi * sin_hs * sin_hs / (2.0 * es)
                     + (pf.phi - p0.phi) / TWO_PI - cos_hs / 2.0)
    k_hi = math.floor((ts * omega0 + pf.phi - p0.phi - math.pi * cos_hs) / TWO_PI)
    out = set()
    for k in range(k_lo, k_hi + 1):
        if 2.0 * k * math.pi - pf.phi + p0.phi + math.pi * cos_hs > 0.0:
            out.add(k)
    return out


def synth_circle_time_energy(p0: BlochPoint, pf: BlochPoint, params: SystemParams,
                             ts: float, es: float, t0: float = 0.0,
                             k: int | None = None) -> SynthesisResult:
    """Resonant transfer onto the circle through pf under time+energy budgets.

    Controls are not amplitude-limited here; params.g0 acts only as a soft
    bound that is flagged in the design when exceeded.  After t_f the state
    drifts freely on the circle, spending no further energy.
    """
    feasible = feasible_k_time_energy(p0, pf, params, ts, es)
    if not feasible:
        raise TimeBudgetInfeasible(
            f"no winding number meets ts={ts:.6g} and es={es:.6g} for this transfer")
    if k is None:
        k = min(feasible)
    elif k not in feasible:
        raise TimeBudgetInfeasible(f"winding k={k} violates the budgets")
    design = _base_design("circle_time_energy", p0, pf, params, t0, ControlClass.BOUNDED)
    design["feasible_k"] = sorted(feasible)
    phase_total, g, omega_rf, phi1 = _resonant_transfer_design(p0, pf, params.omega0, k)
    t_f = phase_total / params.omega0 + t0
    energy = g * g * (t_f - t0)
    pulse = ControlPulse([
        Resonant(g, omega_rf, phi1, t0, t_f),
        Silence(t_f, math.inf),
    ])
    design.update({"k": k, "phase_total": phase_total, "g": g, "omega_rf": omega_rf,
                   "phi1": phi1, "exceeds_soft_bound": bool(g > params.g0)})
    return SynthesisResult(pulse=pulse, t_f=t_f, design=design,
                           claimed_bound=ts, claimed_energy=energy)
