"""Time-dependent propagation of control pulses.

Two integrators share one right-hand side:

* ``propagate`` freezes the controls at each step midpoint and applies the
  exact unitary step exp(+i*G*dt) (Pauli closed form for 2x2, scaling-and-
  squaring for 4x4).  Unitary by construction; never renormalizes.
* ``oracle_propagate`` is an independent classical RK4 used for cross-checks.
  Disagreement beyond tolerance between the two signals an implementation bug.

Steps are always aligned to segment boundaries (and envelope midpoints), so
controls are smooth inside every integration window.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionError, IntervalError, ParameterError
from .pulses import ControlPulse, Envelope, Resonant, Silence, StaticHold
from .states import SystemParams, ensure_state

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Trajectory:
    """Sampled solution: times, states (N x dim), and the control pair."""

    t: np.ndarray
    states: np.ndarray
    ux: np.ndarray
    uy: np.ndarray

    @property
    def dim(self) -> int:
        return self.states.shape[1]

    @property
    def final_state(self) -> np.ndarray:
        return self.states[-1]

    def thetas(self) -> np.ndarray:
        """Bloch polar angle per sample (2-dim trajectories)."""
        if self.dim != 2:
            raise DimensionError("Bloch angles are defined for 2-dim trajectories")
        return 2.0 * np.arctan2(np.abs(self.states[:, 1]), np.abs(self.states[:, 0]))

    def phis(self) -> np.ndarray:
        """Bloch azimuth per sample in [0, 2*pi) (2-dim trajectories)."""
        if self.dim != 2:
            raise DimensionError("Bloch angles are defined for 2-dim trajectories")
        return (np.angle(self.states[:, 1]) - np.angle(self.states[:, 0])) % TWO_PI

    def norms(self) -> np.ndarray:
        return np.linalg.norm(self.states, axis=1)

    def states_from(self, t_from: float) -> tuple[np.ndarray, np.ndarray]:
        """(times, states) restricted to samples with t >= t_from."""
        if t_from < self.t[0] - 1e-9 or t_from > self.t[-1] + 1e-9:
            raise IntervalError(f"t={t_from} outside trajectory range")
        mask = self.t >= t_from - 1e-12
        return self.t[mask], self.states[mask]


def segment_table(pulse: ControlPulse) -> np.ndarray:
    """Compile a pulse to the kernels' flat segment table.

    Envelope segments become two rows split at their midpoint so the
    integrators put a breakpoint where the ramp changes branch.
    """
    rows = []
    for seg in pulse.segments:
        if isinstance(seg, Silence):
            rows.append([_kernels.KIND_SILENCE, seg.t_start, seg.t_end, 0, 0, 0, 0, 0, 0, 0])
        elif isinstance(seg, Resonant):
            rows.append([_kernels.KIND_RESONANT, seg.t_start, seg.t_end,
                         seg.g, seg.omega_rf, seg.phi1, seg.t_start, 0, 0, 0])
        elif isinstance(seg, StaticHold):
            rows.append([_kernels.KIND_HOLD, seg.t_start, seg.t_end,
                         seg.ux, seg.uy, 0, 0, 0, 0, 0])
        elif isinstance(seg, Envelope):
            mid = 0.5 * (seg.t_start + seg.t_end)
            common = [seg.g, float(seg.n), seg.carrier_omega, seg.carrier_t_ref,
                      seg.sign_y, seg.t_start, seg.t_end]
            rows.append([_kernels.KIND_ENVELOPE, seg.t_start, mid] + common)
            rows.append([_kernels.KIND_ENVELOPE, mid, seg.t_end] + common)
        else:
            raise ParameterError(f"unknown segment type {type(seg)!r}")
    return np.array(rows, dtype=np.float64)


def _record_capacity(table: np.ndarray, dt: float, t_stop: float, stride: int) -> int:
    cap = 2
    for i in range(table.shape[0]):
        ta = table[i, 1]
        tb = min(table[i, 2], t_stop)
        if tb <= ta or ta >= t_stop:
            continue
        nst = max(1, int(math.ceil((tb - ta) / dt - 1e-12)))
        cap += nst // stride + 2
    return cap


def _integrate(pulse, s0: np.ndarray, params: SystemParams, dt: float | None,
               t_end: float, sample_stride: int, use_rk4: bool) -> Trajectory:
    from .twoqubit import LiftedPulse  # local import to avoid a cycle

    if isinstance(pulse, LiftedPulse):
        base = pulse.logical
        dim = 4
        period = TWO_PI / (4.0 * params.omega0)
    elif isinstance(pulse, ControlPulse):
        base = pulse
        dim = 2
        period = TWO_PI / params.omega0
    else:
        raise ParameterError(f"cannot propagate object of type {type(pulse)!r}")

    if dt is None:
        dt = period / 10000.0
    if not (dt > 0.0 and math.isfinite(dt)):
        raise ParameterError(f"dt must be positive and finite, got {dt}")
    if sample_stride < 1:
        raise ParameterError("sample_stride must be >= 1")
    if t_end < base.t_start:
        raise IntervalError(f"t_end={t_end} is before the pulse start {base.t_start}")
    if t_end > base.t_end:
        raise IntervalError(f"t_end={t_end} is beyond the pulse domain end {base.t_end}")

    state = ensure_state(s0, dim=dim)
    table = segment_table(base)
    cap = _record_capacity(table, dt, t_end, sample_stride)
    t_out = np.empty(cap, dtype=np.float64)
    psi_out = np.empty((cap, dim), dtype=np.complex128)
    ux_out = np.empty(cap, dtype=np.float64)
    uy_out = np.empty(cap, dtype=np.float64)
    runner = _kernels._run_dim2 if dim == 2 else _kernels._run_dim4
    m = runner(table, state, params.omega0, dt, t_end, sample_stride, use_rk4,
               t_out, psi_out, ux_out, uy_out)
    return Trajectory(t_out[:m].copy(), psi_out[:m].copy(),
                      ux_out[:m].copy(), uy_out[:m].copy())


def propagate(pulse, s0: np.ndarray, params: SystemParams, dt: float | None = None,
              t_end: float | None = None, sample_stride: int = 1) -> Trajectory:
    """Fast piecewise propagation with midpoint-frozen exact unitary steps."""
    if t_end is None:
        raise IntervalError("t_end is required")
    return _integrate(pulse, s0, params, dt, t_end, sample_stride, use_rk4=False)


def oracle_propagate(pulse, s0: np.ndarray, params: SystemParams, dt: float | None = None,
                     t_end: float | None = None, sample_stride: int = 1) -> Trajectory:
    """Independent classical RK4 integration of the same dynamics."""
    if t_end is None:
        raise IntervalError("t_end is required")
    return _integrate(pulse, s0, params, dt, t_end, sample_stride, use_rk4=True)
