"""qstab command line: a thin client over the service handlers.

Builds the same request models the HTTP endpoints accept, calls the handlers
in process, and writes the file formats.  Exit codes: 0 success, 2 when a
synthesis is infeasible or the target is not stabilizable, 1 on I/O or
validation errors.
"""
from __future__ import annotations

import argparse
import json
import sys

from pydantic import ValidationError

from . import io as qio
from . import service
from .errors import NotStabilizable, QstabError, TimeBudgetInfeasible

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--omega0", type=float, required=True, help="Larmor frequency (rad/s)")
    p.add_argument("--g0", type=float, required=True, help="control amplitude bound")


def _add_pair(p: argparse.ArgumentParser) -> None:
    p.add_argument("--theta0", type=float, required=True, help="initial polar angle (rad)")
    p.add_argument("--phi0", type=float, default=0.0, help="initial azimuth (rad)")
    p.add_argument("--thetaf", type=float, required=True, help="target polar angle (rad)")
    p.add_argument("--phif", type=float, default=0.0, help="target azimuth (rad)")


def build_parser() -> _Parser:
    parser = _Parser(prog="qstab", description="pulse synthesis and certification "
                                               "for driven two-level and two-qubit systems")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth-point", help="resonant transfer plus static hold onto a point")
    _add_pair(p)
    _add_params(p)
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--out", required=True, help="pulse JSON output path")

    p = sub.add_parser("synth-circle", help="continuous transfer onto a latitude circle")
    _add_pair(p)
    _add_params(p)
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--n", type=int, default=None, help="envelope order (default: minimal)")
    p.add_argument("--ts", type=float, default=None, help="time budget; enables the "
                                                          "budgeted case dispatch")
    p.add_argument("--out", required=True)

    p = sub.add_parser("time-energy", help="feasibility and synthesis under time+energy budgets")
    _add_pair(p)
    _add_params(p)
    p.add_argument("--ts", type=float, required=True, help="time budget")
    p.add_argument("--es", type=float, required=True, help="energy budget")
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--k", type=int, default=None, help="winding number (default: minimal feasible)")
    p.add_argument("--out", required=True)

    p = sub.add_parser("region", help="stabilizable-region grid as CSV")
    p.add_argument("--ratio", type=float, required=True, help="g0/omega0")
    p.add_argument("--res", type=int, required=True, help="grid resolution per axis")
    p.add_argument("--res-phi", type=int, default=None, help="azimuth resolution override")
    p.add_argument("--out", required=True)

    p = sub.add_parser("entangle", help="drive a logical two-qubit state onto the "
                                        "maximally entangled circle")
    p.add_argument("--theta0", type=float, required=True, help="logical polar angle (rad)")
    p.add_argument("--phi0", type=float, default=0.0, help="logical azimuth (rad)")
    _add_params(p)
    p.add_argument("--t0", type=float, default=0.0)
    p.add_argument("--ts", type=float, default=None, help="time budget")
    p.add_argument("--control-class", choices=["bc", "b"], default="bc",
                   help="bc: bounded continuous couplings, b: bounded")
    p.add_argument("--phi-target", type=float, default=0.0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("simulate", help="propagate a pulse file and export a trajectory CSV")
    p.add_argument("--pulse", required=True, help="pulse JSON input path")
    p.add_argument("--theta0", type=float, required=True)
    p.add_argument("--phi0", type=float, default=0.0)
    p.add_argument("--t-end", type=float, required=True)
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--stride", type=int, default=1, help="record every N-th step")
    p.add_argument("--method", choices=["fast", "oracle"], default="fast")
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="re-measure a synthesized pulse's claims")
    p.add_argument("--pulse", required=True)
    p.add_argument("--ts", type=float, default=None, help="time budget to check")
    p.add_argument("--es", type=float, default=None, help="energy budget to check")
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--periods", type=int, default=10, help="drift periods after t_f")
    p.add_argument("--out", required=True, help="report JSON output path")

    return parser


def _angles(theta: float, phi: float) -> service.AnglesModel:
    return service.AnglesModel(theta=theta, phi=phi)


def _params(args) -> service.ParamsModel:
    return service.ParamsModel(omega0=args.omega0, g0=args.g0)


def _write_synth(resp: service.SynthResponse, out: str) -> None:
    qio.write_pulse(out, resp.pulse.to_document())
    print(f"wrote {out}: t_f = {resp.t_f!r}")


def _cmd_synth_point(args) -> int:
    resp = service.handle_synth_point(service.SynthPointRequest(
        initial=_angles(args.theta0, args.phi0), target=_angles(args.thetaf, args.phif),
        params=_params(args), t0=args.t0))
    _write_synth(resp, args.out)
    d = resp.design
    print(f"k = {d['k']}, g = {d['g']!r}, omega_rf = {d['omega_rf']!r}")
    return EXIT_OK


def _cmd_synth_circle(args) -> int:
    resp = service.handle_synth_circle(service.SynthCircleRequest(
        initial=_angles(args.theta0, args.phi0), target=_angles(args.thetaf, args.phif),
        params=_params(args), t0=args.t0, n=args.n, budget_ts=args.ts))
    _write_synth(resp, args.out)
    d = resp.design
    print(f"k = {d['k']}, n = {d['n']}, g = {d['g']!r}" +
          (f", case = {d['case']}" if "case" in d else ""))
    return EXIT_OK


def _cmd_time_energy(args) -> int:
    resp = service.handle_time_energy(service.TimeEnergyRequest(
        initial=_angles(args.theta0, args.phi0), target=_angles(args.thetaf, args.phif),
        params=_params(args), ts=args.ts, es=args.es, t0=args.t0, k=args.k))
    _write_synth(resp, args.out)
    print(f"feasible k: {resp.feasible_k}")
    print(f"chosen k = {resp.design['k']}, energy = {resp.claimed_energy!r}")
    if resp.design.get("exceeds_soft_bound"):
        print(f"note: amplitude {resp.design['g']!r} exceeds the soft bound g0")
    return EXIT_OK


def _cmd_region(args) -> int:
    n_phi = args.res_phi if args.res_phi is not None else args.res
    resp = service.handle_region(service.RegionRequest(
        ratio=args.ratio, n_theta=args.res, n_phi=n_phi))
    with open(args.out, "w", encoding="utf-8") as fh:
        qio.write_region_csv(fh, resp.thetas, resp.phis, resp.cells)
    total = sum(sum(row) for row in resp.cells)
    print(f"wrote {args.out}: {total}/{args.res * n_phi} cells stabilizable")
    return EXIT_OK


def _cmd_entangle(args) -> int:
    control_class = "bounded_continuous" if args.control_class == "bc" else "bounded"
    resp = service.handle_entangle(service.EntangleRequest(
        initial=_angles(args.theta0, args.phi0), params=_params(args), t0=args.t0,
        control_class=control_class, budget_ts=args.ts, phi_target=args.phi_target))
    _write_synth(resp, args.out)
    return EXIT_OK


def _cmd_simulate(args) -> int:
    doc = qio.read_pulse(args.pulse)
    resp = service.handle_simulate(service.SimulateRequest(
        pulse=service.PulseModel.from_document(doc),
        initial=_angles(args.theta0, args.phi0), t_end=args.t_end, dt=args.dt,
        sample_stride=args.stride, method=args.method))
    with open(args.out, "w", encoding="utf-8") as fh:
        qio.write_trajectory_csv(fh, resp.columns)
    print(f"wrote {args.out}: {len(resp.columns['t'])} samples")
    return EXIT_OK


def _cmd_verify(args) -> int:
    doc = qio.read_pulse(args.pulse)
    resp = service.handle_verify(service.VerifyRequest(
        pulse=service.PulseModel.from_document(doc), budget_ts=args.ts,
        budget_es=args.es, dt=args.dt, drift_periods=args.periods))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(qio.dumps_json(resp.model_dump(by_alias=True)))
    for check in resp.checks:
        flag = "pass" if check.passed else "FAIL"
        print(f"{flag}  {check.name}: measured {check.measured!r}")
    print(f"overall: {'pass' if resp.overall else 'FAIL'}")
    return EXIT_OK if resp.overall else EXIT_INFEASIBLE


_COMMANDS = {
    "synth-point": _cmd_synth_point,
    "synth-circle": _cmd_synth_circle,
    "time-energy": _cmd_time_energy,
    "region": _cmd_region,
    "entangle": _cmd_entangle,
    "simulate": _cmd_simulate,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (NotStabilizable, TimeBudgetInfeasible) as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (QstabError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except json.JSONDecodeError as exc:  # malformed pulse file
        print(f"error: malformed JSON: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
