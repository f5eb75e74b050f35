"""FastAPI service exposing synthesis, simulation, analysis, and verification.

Every endpoint is a stateless wrapper over the core package; requests and
responses are pydantic models mirroring the pulse file schema.  The CLI calls
the same handler functions in process.
"""
from __future__ import annotations

from typing import Annotated, Literal, Optional, Union

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import io as qio
from .errors import (DimensionError, HermiticityError, IntervalError, NotStabilizable,
                     ParameterError, QstabError, SubspaceError, TimeBudgetInfeasible)
from .propagation import oracle_propagate, propagate
from .stability import region_grid
from .states import BlochPoint, SystemParams, bloch_to_state
from .synthesis import (ControlClass, feasible_k_time_energy, synth_circle_continuous,
                        synth_circle_time_energy, synth_circle_within_budget,
                        synth_point_hold)
from .twoqubit import logical_bloch_state, synth_entangler
from .verification import verify_synthesis


class AnglesModel(BaseModel):
    theta: float
    phi: float = 0.0

    def to_point(self) -> BlochPoint:
        return BlochPoint(self.theta, self.phi)


class ParamsModel(BaseModel):
    omega0: float = Field(gt=0)
    g0: float = Field(gt=0)

    def to_params(self) -> SystemParams:
        return SystemParams(self.omega0, self.g0)


class SilenceModel(BaseModel):
    kind: Literal["silence"]
    t_start: float
    t_end: Optional[float] = None


class ResonantModel(BaseModel):
    kind: Literal["resonant"]
    g: float
    omega_rf: float
    phi1: float
    t_start: float
    t_end: Optional[float] = None


class StaticHoldModel(BaseModel):
    kind: Literal["static_hold"]
    ux: float
    uy: float
    t_start: float
    t_end: Optional[float] = None


class EnvelopeModel(BaseModel):
    kind: Literal["envelope"]
    g: float
    n: int
    carrier_omega: float
    carrier_t_ref: float
    sign_y: float
    t_start: float
    t_end: Optional[float] = None


SegmentModel = Annotated[Union[SilenceModel, ResonantModel, StaticHoldModel, EnvelopeModel],
                         Field(discriminator="kind")]


class PulseModel(BaseModel):
    version: int
    params: ParamsModel
    segments: list[SegmentModel]
    lifting: Optional[dict[str, str]] = None
    design: Optional[dict] = None

    def to_document(self) -> qio.PulseDocument:
        return qio.pulse_from_dict(self.model_dump())

    @classmethod
    def from_document(cls, doc: qio.PulseDocument) -> "PulseModel":
        return cls.model_validate(qio.pulse_to_dict(doc))


class SynthPointRequest(BaseModel):
    initial: AnglesModel
    target: AnglesModel
    params: ParamsModel
    t0: float = 0.0


class SynthCircleRequest(BaseModel):
    initial: AnglesModel
    target: AnglesModel
    params: ParamsModel
    t0: float = 0.0
    n: Optional[int] = None
    budget_ts: Optional[float] = None


class TimeEnergyRequest(BaseModel):
    initial: AnglesModel
    target: AnglesModel
    params: ParamsModel
    ts: float = Field(gt=0)
    es: float = Field(gt=0)
    t0: float = 0.0
    k: Optional[int] = None


class EntangleRequest(BaseModel):
    initial: AnglesModel
    params: ParamsModel
    t0: float = 0.0
    control_class: Literal["bounded", "bounded_continuous"] = "bounded_continuous"
    budget_ts: Optional[float] = None
    phi_target: float = 0.0


class SynthResponse(BaseModel):
    pulse: PulseModel
    t_f: float
    design: dict
    claimed_bound: Optional[float] = None
    claimed_energy: Optional[float] = None
    feasible_k: Optional[list[int]] = None


class SimulateRequest(BaseModel):
    pulse: PulseModel
    initial: AnglesModel
    t_end: float
    dt: Optional[float] = None
    sample_stride: int = Field(default=1, ge=1)
    method: Literal["fast", "oracle"] = "fast"


class SimulateResponse(BaseModel):
    columns: dict[str, list[float]]


class VerifyRequest(BaseModel):
    pulse: PulseModel
    budget_ts: Optional[float] = None
    budget_es: Optional[float] = None
    dt: Optional[float] = None
    drift_periods: int = Field(default=10, ge=1)


class CheckModel(BaseModel):
    name: str
    claimed: object
    measured: object
    tolerance: float
    passed: bool = Field(alias="pass")

    model_config = {"populate_by_name": True}


class VerifyResponse(BaseModel):
    overall: bool
    checks: list[CheckModel]
    provenance: dict


class RegionRequest(BaseModel):
    ratio: float = Field(gt=0)
    n_theta: int = Field(ge=2)
    n_phi: int = Field(ge=2)


class RegionResponse(BaseModel):
    ratio: float
    thetas: list[float]
    phis: list[float]
    cells: list[list[int]]


class HealthResponse(BaseModel):
    status: str
    version: int


def _synth_response(result, params: SystemParams,
                    feasible: Optional[list[int]] = None) -> SynthResponse:
    doc = qio.document_from_result(result, params)
    return SynthResponse(pulse=PulseModel.from_document(doc), t_f=result.t_f,
                         design=result.design, claimed_bound=result.claimed_bound,
                         claimed_energy=result.claimed_energy, feasible_k=feasible)


def handle_synth_point(req: SynthPointRequest) -> SynthResponse:
    params = req.params.to_params()
    result = synth_point_hold(req.initial.to_point(), req.target.to_point(),
                              params, t0=req.t0)
    return _synth_response(result, params)


def handle_synth_circle(req: SynthCircleRequest) -> SynthResponse:
    params = req.params.to_params()
    p0, pf = req.initial.to_point(), req.target.to_point()
    if req.budget_ts is not None:
        result = synth_circle_within_budget(p0, pf, params, req.budget_ts, t0=req.t0)
    else:
        result = synth_circle_continuous(p0, pf, params, t0=req.t0, n=req.n)
    return _synth_response(result, params)


def handle_time_energy(req: TimeEnergyRequest) -> SynthResponse:
    params = req.params.to_params()
    p0, pf = req.initial.to_point(), req.target.to_point()
    feasible = sorted(feasible_k_time_energy(p0, pf, params, req.ts, req.es))
    result = synth_circle_time_energy(p0, pf, params, req.ts, req.es,
                                      t0=req.t0, k=req.k)
    return _synth_response(result, params, feasible=feasible)


def handle_entangle(req: EntangleRequest) -> SynthResponse:
    params = req.params.to_params()
    result = synth_entangler(req.initial.to_point(), params, ts=req.budget_ts,
                             control_class=ControlClass(req.control_class),
                             t0=req.t0, phi_target=req.phi_target)
    return _synth_response(result, params)


def handle_simulate(req: SimulateRequest) -> SimulateResponse:
    doc = req.pulse.to_document()
    point = req.initial.to_point()
    if isinstance(doc.pulse, qio.LiftedPulse):
        s0 = logical_bloch_state(point)
    else:
        s0 = bloch_to_state(point)
    runner = propagate if req.method == "fast" else oracle_propagate
    traj = runner(doc.pulse, s0, doc.params, req.dt, req.t_end,
                  sample_stride=req.sample_stride)
    return SimulateResponse(columns=qio.trajectory_columns(traj))


def handle_verify(req: VerifyRequest) -> VerifyResponse:
    doc = req.pulse.to_document()
    result = qio.result_from_document(doc)
    design = result.design
    p0 = BlochPoint(*design["initial"])
    pf = BlochPoint(*design["target"])
    budgets = None
    if req.budget_ts is not None or req.budget_es is not None:
        budgets = (req.budget_ts, req.budget_es)
    report = verify_synthesis(result, p0, pf, doc.params, budgets=budgets,
                              dt=req.dt, drift_periods=req.drift_periods)
    return VerifyResponse.model_validate(qio.report_to_dict(report))


def handle_region(req: RegionRequest) -> RegionResponse:
    grid = region_grid(req.ratio, req.n_theta, req.n_phi)
    return RegionResponse(ratio=grid.ratio, thetas=grid.thetas.tolist(),
                          phis=grid.phis.tolist(),
                          cells=grid.cells.astype(int).tolist())


app = FastAPI(title="qstab", description=__doc__)

_INFEASIBLE = (NotStabilizable, TimeBudgetInfeasible)
_BAD_REQUEST = (ParameterError, IntervalError, DimensionError, HermiticityError,
                SubspaceError)


@app.exception_handler(QstabError)
async def _domain_error_handler(request: Request, exc: QstabError):
    status = 422 if isinstance(exc, _INFEASIBLE) else 400
    return JSONResponse(status_code=status,
                        content={"detail": {"error": type(exc).__name__,
                                            "message": str(exc)}})


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=qio.PULSE_FORMAT_VERSION)


@app.post("/synth/point", response_model=SynthResponse)
def synth_point(req: SynthPointRequest) -> SynthResponse:
    return handle_synth_point(req)


@app.post("/synth/circle", response_model=SynthResponse)
def synth_circle(req: SynthCircleRequest) -> SynthResponse:
    return handle_synth_circle(req)


@app.post("/synth/time-energy", response_model=SynthResponse)
def time_energy(req: TimeEnergyRequest) -> SynthResponse:
    return handle_time_energy(req)


@app.post("/entangle", response_model=SynthResponse)
def entangle(req: EntangleRequest) -> SynthResponse:
    return handle_entangle(req)


@app.post("/simulate", response_model=SimulateResponse)
def simulate(req: SimulateRequest) -> SimulateResponse:
    return handle_simulate(req)


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    return handle_verify(req)


@app.post("/region", response_model=RegionResponse)
def region(req: RegionRequest) -> RegionResponse:
    return handle_region(req)
