"""File formats: pulse JSON, trajectory CSV, region CSV, report JSON.

Pulse files are written deterministically (sorted keys, repr floats) so a
read/write round trip is byte identical.  Unbounded segment end times are
stored as null.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional, TextIO

import numpy as np

from .errors import ParameterError
from .propagation import Trajectory
from .pulses import ControlPulse, Envelope, Resonant, Silence, StaticHold
from .states import SystemParams
from .twoqubit import LIFTING_ROLES, LiftedPulse
from .verification import VerificationReport

PULSE_FORMAT_VERSION = 1


@dataclass(frozen=True)
class PulseDocument:
    """In-memory image of a pulse file."""

    params: SystemParams
    pulse: object  # ControlPulse or LiftedPulse
    design: Optional[dict] = None


def _t_end_json(t: float):
    return None if math.isinf(t) else t


def _t_end_value(raw) -> float:
    return math.inf if raw is None else float(raw)


def _segment_to_dict(seg) -> dict:
    if isinstance(seg, Silence):
        return {"kind": "silence", "t_start": seg.t_start, "t_end": _t_end_json(seg.t_end)}
    if isinstance(seg, Resonant):
        return {"kind": "resonant", "g": seg.g, "omega_rf": seg.omega_rf,
                "phi1": seg.phi1, "t_start": seg.t_start, "t_end": _t_end_json(seg.t_end)}
    if isinstance(seg, StaticHold):
        return {"kind": "static_hold", "ux": seg.ux, "uy": seg.uy,
                "t_start": seg.t_start, "t_end": _t_end_json(seg.t_end)}
    if isinstance(seg, Envelope):
        return {"kind": "envelope", "g": seg.g, "n": seg.n,
                "carrier_omega": seg.carrier_omega, "carrier_t_ref": seg.carrier_t_ref,
                "sign_y": seg.sign_y, "t_start": seg.t_start,
                "t_end": _t_end_json(seg.t_end)}
    raise ParameterError(f"unknown segment type {type(seg)!r}")


def _segment_from_dict(d: dict):
    kind = d.get("kind")
    t_start = float(d["t_start"])
    t_end = _t_end_value(d.get("t_end"))
    if kind == "silence":
        return Silence(t_start, t_end)
    if kind == "resonant":
        return Resonant(float(d["g"]), float(d["omega_rf"]), float(d["phi1"]),
                        t_start, t_end)
    if kind == "static_hold":
        return StaticHold(float(d["ux"]), float(d["uy"]), t_start, t_end)
    if kind == "envelope":
        return Envelope(float(d["g"]), int(d["n"]), float(d["carrier_omega"]),
                        float(d["carrier_t_ref"]), float(d["sign_y"]), t_start, t_end)
    raise ParameterError(f"unknown segment kind {kind!r}")


def pulse_to_dict(doc: PulseDocument) -> dict:
    lifted = isinstance(doc.pulse, LiftedPulse)
    base = doc.pulse.logical if lifted else doc.pulse
    out = {
        "version": PULSE_FORMAT_VERSION,
        "params": {"omega0": doc.params.omega0, "g0": doc.params.g0},
        "segments": [_segment_to_dict(seg) for seg in base.segments],
    }
    if lifted:
        out["lifting"] = dict(LIFTING_ROLES)
    if doc.design is not None:
        out["design"] = doc.design
    return out


def pulse_from_dict(d: dict) -> PulseDocument:
    if d.get("version") != PULSE_FORMAT_VERSION:
        raise ParameterError(f"unsupported pulse format version {d.get('version')!r}")
    params = SystemParams(omega0=float(d["params"]["omega0"]),
                          g0=float(d["params"]["g0"]))
    pulse = ControlPulse([_segment_from_dict(s) for s in d["segments"]])
    lifting = d.get("lifting")
    if lifting is not None:
        if lifting != LIFTING_ROLES:
            raise ParameterError(f"unsupported lifting block {lifting!r}")
        pulse = LiftedPulse(logical=pulse)
    return PulseDocument(params=params, pulse=pulse, design=d.get("design"))


def document_from_result(result, params: SystemParams) -> PulseDocument:
    """Embed a synthesis result's metadata into a pulse document."""
    design = dict(result.design)
    design["t_f"] = result.t_f
    if result.claimed_bound is not None:
        design["claimed_bound"] = result.claimed_bound
    if result.claimed_energy is not None:
        design["claimed_energy"] = result.claimed_energy
    return PulseDocument(params=params, pulse=result.pulse, design=design)


def result_from_document(doc: PulseDocument):
    """Reconstruct a synthesis result from a pulse document's design block."""
    from .synthesis import SynthesisResult

    if doc.design is None or "t_f" not in doc.design:
        raise ParameterError("pulse document carries no synthesis design block")
    design = dict(doc.design)
    t_f = float(design.pop("t_f"))
    claimed_bound = design.pop("claimed_bound", None)
    claimed_energy = design.pop("claimed_energy", None)
    return SynthesisResult(pulse=doc.pulse, t_f=t_f, design=design,
                           claimed_bound=claimed_bound, claimed_energy=claimed_energy)


def dumps_json(obj: dict) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def write_pulse(path, doc: PulseDocument) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_json(pulse_to_dict(doc)))


def read_pulse(path) -> PulseDocument:
    with open(path, "r", encoding="utf-8") as fh:
        return pulse_from_dict(json.load(fh))


def trajectory_columns(traj: Trajectory) -> dict[str, list[float]]:
    """Column dict matching the trajectory CSV schema."""
    cols: dict[str, list[float]] = {"t": traj.t.tolist()}
    dim = traj.dim
    for j in range(dim):
        cols[f"re{j}"] = traj.states[:, j].real.tolist()
        cols[f"im{j}"] = traj.states[:, j].imag.tolist()
    if dim == 2:
        amp0, amp1 = traj.states[:, 0], traj.states[:, 1]
    else:
        amp0, amp1 = traj.states[:, 1], traj.states[:, 2]
    cols["theta"] = (2.0 * np.arctan2(np.abs(amp1), np.abs(amp0))).tolist()
    cols["phi"] = ((np.angle(amp1) - np.angle(amp0)) % (2.0 * math.pi)).tolist()
    cols["ux"] = traj.ux.tolist()
    cols["uy"] = traj.uy.tolist()
    return cols


def write_trajectory_csv(fh: TextIO, columns: dict[str, list[float]]) -> None:
    names = list(columns.keys())
    fh.write(",".join(names) + "\n")
    rows = len(columns["t"])
    for i in range(rows):
        fh.write(",".join(repr(columns[name][i]) for name in names) + "\n")


def write_region_csv(fh: TextIO, thetas, phis, cells) -> None:
    """Row-major, theta outer; header mandatory."""
    fh.write("theta,phi,stabilizable\n")
    for i, theta in enumerate(thetas):
        row = cells[i]
        for j, phi in enumerate(phis):
            fh.write(f"{float(theta)!r},{float(phi)!r},{1 if row[j] else 0}\n")


def report_to_dict(report: VerificationReport) -> dict:
    return {
        "overall": report.overall,
        "checks": [
            {"name": c.name, "claimed": c.claimed, "measured": c.measured,
             "tolerance": c.tolerance, "pass": c.passed}
            for c in report.checks
        ],
        "provenance": report.provenance,
    }


def write_report(path, report: VerificationReport) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_json(report_to_dict(report)))
