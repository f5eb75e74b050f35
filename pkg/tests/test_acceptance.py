"""Acceptance suite: one test per shipped guarantee, one PASS line each.

Run with `pytest tests/test_acceptance.py -s` to see the per-criterion lines.
Each test re-measures its claim with the RK4 oracle or an independent brute
force and asserts the stated tolerance and runtime budget.
"""
import math
import time

import numpy as np

from qstab import (BlochPoint, ControlClass, SystemParams, bloch_to_state,
                   check_point_stabilizable, concurrence, em_membership,
                   feasible_k_time_energy, fidelity, is_equilibrium,
                   logical_bloch_state, oracle_propagate, propagate, pulse_energy,
                   region_grid, synth_circle_continuous, synth_circle_time_energy,
                   synth_circle_within_budget, synth_entangler, synth_point_hold,
                   transition_time_bound)
from qstab.states import SPIN_X, SPIN_Y, SPIN_Z
from qstab.twoqubit import effective_params, effective_pulse_from_logical, logical_projection
from qstab.verification import check_bounds, check_continuity

TWO_PI = 2.0 * math.pi
DT = 1e-4 * TWO_PI  # oracle step for omega0 = 1


def _report(name: str, ok: bool, detail: str) -> None:
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, f"{name}: {detail}"


def test_criterion_1_point_stabilization_grid():
    """Resonant transfer + static hold reaches and keeps every stabilizable
    grid target at fidelity 1 - 1e-6."""
    start = time.time()
    params = SystemParams(1.0, 1.0)
    thetas = np.linspace(0.0, math.pi, 10)
    phis = np.linspace(0.0, TWO_PI, 10, endpoint=False)
    targets = []
    for tf in thetas:
        for pf in phis:
            point = BlochPoint(tf, pf)
            if abs(point.theta - math.pi / 2) > 1e-12 and \
                    check_point_stabilizable(point, params):
                targets.append(point)
    initials = [BlochPoint(t0, p0) for t0 in thetas for p0 in phis]
    seen = set()
    worst_tf, worst_hold, cases = 1.0, 1.0, 0
    for pf in targets:
        target_state = bloch_to_state(pf)
        for p0 in initials:
            key = (p0.theta, p0.phi, pf.theta, pf.phi)
            if key in seen:
                continue
            seen.add(key)
            r = synth_point_hold(p0, pf, params)
            traj = oracle_propagate(r.pulse, bloch_to_state(p0), params, DT,
                                    r.t_f + 10 * TWO_PI, sample_stride=157)
            idx = int(np.argmin(np.abs(traj.t - r.t_f)))
            fid_tf = fidelity(traj.states[idx], target_state)
            fids = np.abs(traj.states[traj.t >= r.t_f - 1e-12] @ target_state.conj()) ** 2
            worst_tf = min(worst_tf, fid_tf)
            worst_hold = min(worst_hold, float(np.min(fids)))
            cases += 1
    elapsed = time.time() - start
    ok = worst_tf >= 1 - 1e-6 and worst_hold >= 1 - 1e-6 and elapsed <= 300
    _report("criterion 1 (point stabilization grid)", ok,
            f"{cases} transfers, min fidelity at t_f {worst_tf:.9f}, "
            f"min hold fidelity {worst_hold:.9f}, {elapsed:.1f}s")


def test_criterion_2_no_static_hold_beyond_condition():
    """Targets violating the stabilizability condition admit no bounded
    static hold: brute-force scan over the control box."""
    start = time.time()
    omega0, g0 = 1.0, 1.0
    rng = np.random.default_rng(404)
    targets = []
    while len(targets) < 50:
        theta = rng.uniform(0.0, math.pi)
        phi = rng.uniform(0.0, TWO_PI)
        cond = omega0 * abs(math.tan(theta)) * max(abs(math.sin(phi)), abs(math.cos(phi)))
        if cond > 1.2 * g0:
            targets.append(BlochPoint(theta, phi))
    grid = np.linspace(-g0, g0, 201)
    ux, uy = np.meshgrid(grid, grid, indexing="ij")
    gens = (omega0 * SPIN_Z + ux[..., None, None] * SPIN_X
            + uy[..., None, None] * SPIN_Y)
    worst = math.inf
    for pf in targets:
        s = bloch_to_state(pf)
        rho = np.outer(s, s.conj())
        comm = gens @ rho - rho @ gens
        norms = np.linalg.norm(comm, axis=(2, 3))
        worst = min(worst, float(norms.min()))
    elapsed = time.time() - start
    ok = worst > 1e-3 * omega0 and elapsed <= 120
    _report("criterion 2 (no bounded static hold)", ok,
            f"50 violating targets, 201x201 scan, min commutator norm {worst:.6f}, "
            f"{elapsed:.1f}s")


def _random_pairs(n, seed=2024):
    rng = np.random.default_rng(seed)
    pairs = []
    while len(pairs) < n:
        p0 = BlochPoint(rng.uniform(0, math.pi), rng.uniform(0, TWO_PI))
        pf = BlochPoint(rng.uniform(0, math.pi), rng.uniform(0, TWO_PI))
        if p0 != pf:
            pairs.append((p0, pf))
    return pairs


def test_criterion_3_circle_transfer_and_residence():
    """Continuous bounded transfers reach the target and stay on its latitude
    circle for ten drift periods."""
    start = time.time()
    params = SystemParams(1.0, 0.5)
    worst_fid, worst_dev = 1.0, 0.0
    for p0, pf in _random_pairs(200):
        r = synth_circle_continuous(p0, pf, params)
        traj = oracle_propagate(r.pulse, bloch_to_state(p0), params, DT,
                                r.t_f + 10 * TWO_PI, sample_stride=100)
        idx = int(np.argmin(np.abs(traj.t - r.t_f)))
        worst_fid = min(worst_fid, fidelity(traj.states[idx], bloch_to_state(pf)))
        mask = traj.t >= r.t_f - 1e-12
        worst_dev = max(worst_dev, float(np.max(np.abs(traj.thetas()[mask] - pf.theta))))
        assert check_continuity(r.pulse).passed
        assert check_bounds(r.pulse, params.g0).passed
    elapsed = time.time() - start
    ok = worst_fid >= 1 - 1e-6 and worst_dev <= 1e-6 and elapsed <= 600
    _report("criterion 3 (circle transfer + residence)", ok,
            f"200 transfers, min fidelity {worst_fid:.9f}, "
            f"max polar deviation {worst_dev:.2e} rad, {elapsed:.1f}s")


def test_criterion_4_budgeted_transition_times():
    """Budget-dispatched transfers meet the global and per-case time bounds."""
    params = SystemParams(1.0, 0.5)
    ts = transition_time_bound(params, ControlClass.BOUNDED_CONTINUOUS)
    case_counts = {}
    for p0, pf in _random_pairs(200):
        r = synth_circle_within_budget(p0, pf, params, ts)
        elapsed_tf = r.t_f - r.design["t0"]
        case = (p0.phi >= math.pi / 2, pf.theta >= p0.theta)
        per_case = transition_time_bound(params, ControlClass.BOUNDED_CONTINUOUS, case)
        assert elapsed_tf <= per_case
        assert elapsed_tf <= ts
        case_counts[r.design["case"]] = case_counts.get(r.design["case"], 0) + 1
    ok = set(case_counts) == {"case1", "case2", "case3", "case4"}
    _report("criterion 4 (transition-time bounds)", ok,
            f"200 transfers within {ts / math.pi:.0f}*pi, per-case bounds exact, "
            f"case counts {sorted(case_counts.items())}")


def test_criterion_5_time_energy_feasibility_grid():
    """k = 2 is always feasible at T_s = 7*pi/omega0, E_s = omega0*pi, and the
    synthesized pulses meet both budgets in closed form."""
    start = time.time()
    params = SystemParams(1.0, 1.0)
    ts, es = 7 * math.pi, math.pi
    points = [BlochPoint(t, p) for t in np.linspace(0, math.pi, 20)
              for p in np.linspace(0, TWO_PI, 20, endpoint=False)]
    checked = 0
    for p0 in points:
        for pf in points:
            ks = feasible_k_time_energy(p0, pf, params, ts, es)
            assert 2 in ks
            r = synth_circle_time_energy(p0, pf, params, ts, es, k=2)
            assert r.t_f - r.design["t0"] <= ts
            assert pulse_energy(r.pulse, r.design["t0"], r.t_f) <= es
            checked += 1
    elapsed = time.time() - start
    _report("criterion 5 (time+energy feasibility)", checked == 160000,
            f"{checked} grid points, k=2 always feasible, budgets met, {elapsed:.1f}s")


def test_criterion_6_stabilizable_region_maps():
    """Region fractions grow with the control ratio, respect both symmetries,
    and the ratio-1 zero-azimuth column has measure one half."""
    res = 512
    grids = [region_grid(ratio, res, res) for ratio in (0.1, 0.2, 0.5, 1.0)]
    fractions = [g.stabilizable_fraction() for g in grids]
    assert all(b > a for a, b in zip(fractions, fractions[1:]))
    for prev, nxt in zip(grids, grids[1:]):
        assert not np.any(prev.cells & ~nxt.cells)
    for g in grids:
        assert np.array_equal(g.cells, np.roll(g.cells, res // 4, axis=1))
        assert np.array_equal(g.cells, g.cells[::-1, :])
    column = grids[-1].cells[:, 0]
    ok = abs(float(np.mean(column)) - 0.5) <= 1.0 / res
    _report("criterion 6 (region maps)", ok,
            f"fractions {['%.4f' % f for f in fractions]}, "
            f"ratio-1 column measure {np.mean(column):.4f}")


def test_criterion_7_two_qubit_equivalence_and_entanglement():
    """Lifted two-qubit dynamics match the effective single-qubit system, stay
    in the logical subspace, and land on the maximally entangled circle."""
    start = time.time()
    params = SystemParams(1.0, 1.0)
    eff = effective_params(params)
    dt = 1e-4 * TWO_PI / eff.omega0
    rng = np.random.default_rng(777)
    worst_restrict, worst_leak, worst_conc = 1.0, 0.0, 1.0
    em_ok = True
    for _ in range(50):
        p0 = BlochPoint(rng.uniform(0, math.pi), rng.uniform(0, TWO_PI))
        r = synth_entangler(p0, params)
        traj4 = oracle_propagate(r.pulse, logical_bloch_state(p0), params, dt,
                                 r.t_f, sample_stride=100)
        leaks = [logical_projection(traj4.states[i])[1]
                 for i in range(traj4.states.shape[0])]
        worst_leak = max(worst_leak, max(leaks))
        final = traj4.final_state / np.linalg.norm(traj4.final_state)
        amps, _ = logical_projection(traj4.final_state)
        traj2 = propagate(effective_pulse_from_logical(r.pulse.logical),
                          bloch_to_state(p0), eff, dt, r.t_f, sample_stride=10 ** 9)
        worst_restrict = min(worst_restrict,
                             fidelity(amps / np.linalg.norm(amps), traj2.final_state))
        em_ok = em_ok and em_membership(final, tol=1e-6)
        worst_conc = min(worst_conc, concurrence(final))
    elapsed = time.time() - start
    ok = (worst_restrict >= 1 - 1e-7 and worst_leak <= 1e-9 and em_ok
          and worst_conc >= 1 - 1e-6 and elapsed <= 300)
    _report("criterion 7 (two-qubit equivalence + entanglement)", ok,
            f"50 initial states, min restriction fidelity {worst_restrict:.10f}, "
            f"max leakage {worst_leak:.2e}, min concurrence {worst_conc:.9f}, "
            f"{elapsed:.1f}s")


def test_criterion_8_equilibrium_predicate_equivalence():
    """Projector commutation agrees with the eigenvector residual test on
    10^4 random instances with zero disagreements."""
    rng = np.random.default_rng(31337)
    disagreements = 0
    for dim in (2, 4):
        for trial in range(5000):
            a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
            h = (a + a.conj().T) / 2
            if trial % 2 == 0:
                v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
                s = v / np.linalg.norm(v)
            else:
                s = np.linalg.eigh(h)[1][:, rng.integers(dim)]
            residual = np.linalg.norm(h @ s - (s.conj() @ h @ s) * s)
            if is_equilibrium(h, s, 1e-9) != (residual <= 1e-9):
                disagreements += 1
    _report("criterion 8 (equilibrium predicate)", disagreements == 0,
            f"10000 instances (2x2 and 4x4), {disagreements} disagreements")


def test_criterion_9_integrator_integrity(regression_corpus):
    """Unit-norm preservation, fast-vs-oracle agreement on the regression
    corpus, and fourth-order convergence of the oracle."""
    worst_drift, worst_agree = 0.0, 1.0
    for result, p0, params in regression_corpus:
        dt = 1e-4 * TWO_PI / params.omega0
        horizon = result.t_f + 2 * TWO_PI / params.omega0
        s0 = bloch_to_state(p0)
        fast = propagate(result.pulse, s0, params, dt, horizon, sample_stride=25)
        slow = oracle_propagate(result.pulse, s0, params, dt, horizon,
                                sample_stride=10 ** 9)
        worst_drift = max(worst_drift, float(np.max(np.abs(fast.norms() - 1.0))))
        worst_agree = min(worst_agree, fidelity(fast.final_state, slow.final_state))
    # entangler pulse exercises the 4-dim pair
    params2 = SystemParams(1.0, 1.0)
    ent = synth_entangler(BlochPoint(1.2, 0.7), params2)
    dt4 = 1e-4 * TWO_PI / (4 * params2.omega0)
    s0 = logical_bloch_state(BlochPoint(1.2, 0.7))
    fast = propagate(ent.pulse, s0, params2, dt4, ent.t_f, sample_stride=25)
    slow = oracle_propagate(ent.pulse, s0, params2, dt4, ent.t_f, sample_stride=10 ** 9)
    worst_drift = max(worst_drift, float(np.max(np.abs(fast.norms() - 1.0))))
    worst_agree = min(worst_agree, fidelity(fast.final_state, slow.final_state))

    params1 = SystemParams(1.0, 0.1)
    ref = synth_point_hold(BlochPoint(math.pi / 2, 0.0), BlochPoint(0.0, 0.0), params1)
    finals = []
    for n_steps in (2048, 4096, 8192):
        traj = oracle_propagate(ref.pulse, bloch_to_state(BlochPoint(math.pi / 2, 0.0)),
                                params1, ref.t_f / n_steps, ref.t_f,
                                sample_stride=10 ** 9)
        finals.append(traj.final_state)
    ratio = float(np.linalg.norm(finals[0] - finals[1])
                  / np.linalg.norm(finals[1] - finals[2]))
    ok = worst_drift <= 1e-9 and worst_agree >= 1 - 1e-7 and 13.0 <= ratio <= 19.0
    _report("criterion 9 (integrator integrity)", ok,
            f"max norm drift {worst_drift:.2e}, min fast-vs-oracle fidelity "
            f"{worst_agree:.10f}, RK4 halving ratio {ratio:.1f}")
