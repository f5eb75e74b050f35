"""Typed control segments and piecewise pulse schedules.

A ControlPulse is an ordered, contiguous sequence of segments, each defining
the pair of control fields (u_x(t), u_y(t)) on a half-open interval
[t_start, t_end).  The last segment may extend to +infinity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import IntervalError, ParameterError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Silence:
    """No drive: u_x = u_y = 0."""

    t_start: float
    t_end: float

    def controls(self, t: float) -> tuple[float, float]:
        return 0.0, 0.0

    def sup_abs(self) -> float:
        return 0.0

    def energy(self, a: float, b: float) -> float:
        return 0.0

    def extremal_times(self) -> list[float]:
        return []


@dataclass(frozen=True)
class Resonant:
    """Circularly polarized drive at a fixed amplitude.

    u_x = g*cos(omega_rf*(t - t_start) + phi1),
    u_y = g*sin(omega_rf*(t - t_start) + phi1).
    """

    g: float
    omega_rf: float
    phi1: float
    t_start: float
    t_end: float

    def controls(self, t: float) -> tuple[float, float]:
        ph = self.omega_rf * (t - self.t_start) + self.phi1
        return self.g * math.cos(ph), self.g * math.sin(ph)

    def sup_abs(self) -> float:
        # |u_x|, |u_y| <= g, attained whenever the phase sweeps far enough
        if not math.isfinite(self.t_end):
            return abs(self.g)
        lo = self.phi1
        hi = self.phi1 + self.omega_rf * (self.t_end - self.t_start)
        if lo > hi:
            lo, hi = hi, lo
        if hi - lo >= math.pi / 2.0:
            return abs(self.g)
        ux0, uy0 = self.controls(self.t_start)
        ux1, uy1 = self.controls(self.t_end)
        best = max(abs(ux0), abs(uy0), abs(ux1), abs(uy1))
        # interior extrema of cos/sin at multiples of pi/2
        k = math.ceil(lo / (math.pi / 2.0))
        while k * (math.pi / 2.0) <= hi:
            best = abs(self.g)
            k += 1
        return best

    def energy(self, a: float, b: float) -> float:
        return self.g * self.g * max(0.0, b - a)

    def extremal_times(self) -> list[float]:
        if not math.isfinite(self.t_end) or self.omega_rf == 0.0:
            return []
        out = []
        lo = self.phi1
        hi = self.phi1 + self.omega_rf * (self.t_end - self.t_start)
        step = math.pi / 2.0
        if lo > hi:
            lo, hi = hi, lo
        k = math.ceil(lo / step)
        while k * step <= hi and len(out) < 256:
            out.append(self.t_start + (k * step - self.phi1) / self.omega_rf)
            k += 1
        return out


@dataclass(frozen=True)
class StaticHold:
    """Constant controls, typically pinning an eigenstate of the total generator."""

    ux: float
    uy: float
    t_start: float
    t_end: float

    def controls(self, t: float) -> tuple[float, float]:
        return self.ux, self.uy

    def sup_abs(self) -> float:
        return max(abs(self.ux), abs(self.uy))

    def energy(self, a: float, b: float) -> float:
        return (self.ux * self.ux + self.uy * self.uy) * max(0.0, b - a)

    def extremal_times(self) -> list[float]:
        return []


@dataclass(frozen=True)
class Envelope:
    """Polynomial ramp envelope riding a circular carrier.

    The amplitude rises from 0 to the peak g at the segment midpoint and falls
    back to 0 at t_end, following 1 - tau^n with tau the normalized distance
    from the midpoint.  Both controls therefore vanish at the segment edges,
    which keeps the pulse continuous:

        u_x = g(t)*cos(carrier_omega*(t - carrier_t_ref)),
        u_y = sign_y*g(t)*sin(carrier_omega*(t - carrier_t_ref)).
    """

    g: float
    n: int
    carrier_omega: float
    carrier_t_ref: float
    sign_y: float
    t_start: float
    t_end: float

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ParameterError(f"envelope order must be >= 1, got {self.n}")
        if self.sign_y not in (-1.0, 1.0):
            raise ParameterError("sign_y must be +1 or -1")
        if not math.isfinite(self.t_end):
            raise ParameterError("an envelope segment must have a finite end time")

    def amplitude(self, t: float) -> float:
        t1, tf = self.t_start, self.t_end
        if t < t1 or t > tf:
            return 0.0
        width = tf - t1
        if t < (t1 + tf) / 2.0:
            tau = (t1 + tf - 2.0 * t) / width
        else:
            tau = (2.0 * t - t1 - tf) / width
        tau = min(max(tau, 0.0), 1.0)
        return self.g * (1.0 - tau ** self.n)

    def controls(self, t: float) -> tuple[float, float]:
        gt = self.amplitude(t)
        ph = self.carrier_omega * (t - self.carrier_t_ref)
        return gt * math.cos(ph), self.sign_y * gt * math.sin(ph)

    def sup_abs(self) -> float:
        return abs(self.g)

    def energy(self, a: float, b: float) -> float:
        # integral of g(t)^2 (the carrier has unit magnitude), branch by branch
        t1, tf = self.t_start, self.t_end
        a = max(a, t1)
        b = min(b, tf)
        if b <= a:
            return 0.0
        width = tf - t1
        mid = (t1 + tf) / 2.0
        n = self.n

        def prim(tau: float) -> float:
            # antiderivative of (1 - tau^n)^2 in tau
            return tau - 2.0 * tau ** (n + 1) / (n + 1) + tau ** (2 * n + 1) / (2 * n + 1)

        total = 0.0
        if a < mid:  # falling tau branch: tau goes 1 -> 0, dt = -width/2 dtau
            lo, hi = a, min(b, mid)
            tau_lo = (t1 + tf - 2.0 * lo) / width
            tau_hi = (t1 + tf - 2.0 * hi) / width
            total += (width / 2.0) * (prim(tau_lo) - prim(tau_hi))
        if b > mid:  # rising tau branch: tau goes 0 -> 1, dt = +width/2 dtau
            lo, hi = max(a, mid), b
            tau_lo = (2.0 * lo - t1 - tf) / width
            tau_hi = (2.0 * hi - t1 - tf) / width
            total += (width / 2.0) * (prim(tau_hi) - prim(tau_lo))
        return self.g * self.g * total

    def extremal_times(self) -> list[float]:
        # midpoint (peak amplitude) plus carrier phase multiples of pi/2
        out = [(self.t_start + self.t_end) / 2.0]
        if self.carrier_omega != 0.0:
            step = math.pi / 2.0
            lo = self.carrier_omega * (self.t_start - self.carrier_t_ref)
            hi = self.carrier_omega * (self.t_end - self.carrier_t_ref)
            if lo > hi:
                lo, hi = hi, lo
            k = math.ceil(lo / step)
            while k * step <= hi and len(out) < 4096:
                out.append(self.carrier_t_ref + k * step / self.carrier_omega)
                k += 1
        return out


Segment = Union[Silence, Resonant, StaticHold, Envelope]

_BOUNDARY_TOL = 1e-9


@dataclass(frozen=True)
class ControlPulse:
    """Contiguous, non-overlapping sequence of control segments."""

    segments: tuple[Segment, ...]

    def __init__(self, segments) -> None:
        segs = tuple(segments)
        if not segs:
            raise ParameterError("a pulse needs at least one segment")
        for seg in segs:
            if not seg.t_start < seg.t_end:
                raise ParameterError(
                    f"segment must have t_start < t_end, got [{seg.t_start}, {seg.t_end})"
                )
        for prev, nxt in zip(segs, segs[1:]):
            if not math.isfinite(prev.t_end) or abs(nxt.t_start - prev.t_end) > _BOUNDARY_TOL:
                raise ParameterError(
                    f"segments must be contiguous: {prev.t_end} then {nxt.t_start}"
                )
        object.__setattr__(self, "segments", segs)

    @property
    def t_start(self) -> float:
        return self.segments[0].t_start

    @property
    def t_end(self) -> float:
        return self.segments[-1].t_end

    def segment_at(self, t: float) -> Segment:
        if t < self.t_start or t > self.t_end:
            raise IntervalError(f"t={t} outside pulse domain [{self.t_start}, {self.t_end}]")
        for seg in self.segments:
            if t < seg.t_end:
                return seg
        return self.segments[-1]

    def boundaries(self) -> list[float]:
        """Internal segment boundary times."""
        return [seg.t_start for seg in self.segments[1:]]


def eval_pulse(pulse: ControlPulse, t: float) -> tuple[float, float]:
    """Control pair (u_x, u_y) at time t; at a boundary the later segment wins."""
    return pulse.segment_at(t).controls(t)


def pulse_energy(pulse: ControlPulse, t0: float, tf: float) -> float:
    """Closed-form integral of u_x^2 + u_y^2 over [t0, tf]."""
    if tf < t0:
        raise IntervalError(f"empty interval [{t0}, {tf}]")
    if t0 < pulse.t_start - _BOUNDARY_TOL or tf > pulse.t_end + _BOUNDARY_TOL:
        raise IntervalError(
            f"[{t0}, {tf}] outside pulse domain [{pulse.t_start}, {pulse.t_end}]"
        )
    total = 0.0
    for seg in pulse.segments:
        a = max(t0, seg.t_start)
        b = min(tf, seg.t_end)
        if b > a:
            total += seg.energy(a, b)
    return total


def pulse_sup_bound(pulse: ControlPulse) -> float:
    """Analytic upper bound on sup_t max(|u_x|, |u_y|)."""
    return max(seg.sup_abs() for seg in pulse.segments)
