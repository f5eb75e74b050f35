import math

import numpy as np
import pytest

from qstab import (BlochPoint, ControlClass, ControlPulse, Envelope, Resonant,
                   Silence, SystemParams, TimeBudgetInfeasible, bloch_to_state,
                   build_logical_frame, concurrence, em_membership, fidelity,
                   lift_logical_controls, logical_bloch_state, oracle_propagate,
                   propagate, synth_entangler)
from qstab.errors import DimensionError, SubspaceError
from qstab.twoqubit import (KET_00, KET_01, KET_10, KET_11, effective_params,
                            effective_pulse_from_logical, entangler_time_bound,
                            logical_projection, logical_pulse_from_effective)

TWO_PI = 2.0 * math.pi


def random_logical_pulse(rng, t0=0.0):
    segs = []
    t = t0
    for _ in range(rng.integers(1, 4)):
        dur = rng.uniform(0.5, 2.0)
        kind = rng.integers(3)
        if kind == 0:
            segs.append(Silence(t, t + dur))
        elif kind == 1:
            segs.append(Resonant(rng.uniform(0.05, 0.8), rng.uniform(-3, 3),
                                 rng.uniform(0, TWO_PI), t, t + dur))
        else:
            segs.append(Envelope(g=rng.uniform(0.05, 0.8), n=int(rng.integers(1, 8)),
                                 carrier_omega=rng.uniform(0.5, 4.0), carrier_t_ref=t,
                                 sign_y=-1.0, t_start=t, t_end=t + dur))
        t += dur
    return ControlPulse(segs)


class TestLogicalFrame:
    def test_operator_identities(self):
        frame = build_logical_frame()
        sx1 = np.kron(np.array([[0, 1], [1, 0]]), np.eye(2))
        assert np.allclose(frame.sigma_x @ KET_01, KET_10, atol=1e-14)
        assert np.allclose(frame.sigma_x @ KET_10, KET_01, atol=1e-14)
        assert np.allclose(frame.sigma_y @ KET_01, 1j * KET_10, atol=1e-14)
        assert np.allclose(frame.sigma_z @ KET_01, KET_01, atol=1e-14)
        assert np.allclose(frame.sigma_z @ KET_10, -KET_10, atol=1e-14)
        del sx1

    def test_annihilates_complement(self):
        frame = build_logical_frame()
        for op in (frame.sigma_x, frame.sigma_y, frame.sigma_z):
            assert np.allclose(op @ KET_00, 0.0, atol=1e-14)
            assert np.allclose(op @ KET_11, 0.0, atol=1e-14)

    def test_logical_pauli_algebra(self):
        frame = build_logical_frame()
        comm = frame.sigma_x @ frame.sigma_y - frame.sigma_y @ frame.sigma_x
        assert np.allclose(comm, 2j * frame.sigma_z, atol=1e-14)

    def test_exchange_coupling_annihilates_00(self):
        sx = np.array([[0, 1], [1, 0]], dtype=complex)
        sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
        op = (np.kron(sx, sx) + np.kron(sy, sy)) / 2
        assert np.allclose(op @ KET_00, 0.0, atol=1e-14)


class TestLifting:
    def test_coefficient_relations(self):
        rng = np.random.default_rng(2)
        lifted = lift_logical_controls(random_logical_pulse(rng))
        for t in np.linspace(lifted.t_start, lifted.t_end - 1e-9, 50):
            c = lifted.coefficients(t)
            assert c["u_xx"] == c["u_yy"]
            assert c["u_xy"] == -c["u_yx"]

    def test_hamiltonian_is_hermitian_and_block(self):
        rng = np.random.default_rng(4)
        lifted = lift_logical_controls(random_logical_pulse(rng))
        for t in np.linspace(lifted.t_start, lifted.t_end - 1e-9, 20):
            h = lifted.hamiltonian(1.3, t)
            assert np.allclose(h, h.conj().T, atol=1e-14)
            # the lifted drive never couples the logical block to its complement
            assert abs(h[0, 1]) + abs(h[0, 2]) + abs(h[3, 1]) + abs(h[3, 2]) < 1e-14

    def test_zero_pulse_keeps_logical_ket_stationary(self):
        params = SystemParams(1.0, 1.0)
        lifted = lift_logical_controls(ControlPulse([Silence(0.0, math.inf)]))
        traj = propagate(lifted, KET_01.astype(complex), params, 1e-3, 3.0)
        fids = np.abs(traj.states[:, 1]) ** 2
        assert np.min(fids) == pytest.approx(1.0, abs=1e-12)

    def test_leakage_stays_tiny(self):
        rng = np.random.default_rng(6)
        params = SystemParams(1.0, 1.0)
        for _ in range(10):
            lifted = lift_logical_controls(random_logical_pulse(rng))
            p0 = BlochPoint(rng.uniform(0, math.pi), rng.uniform(0, TWO_PI))
            traj = oracle_propagate(lifted, logical_bloch_state(p0), params,
                                    1e-3 * TWO_PI / 4, lifted.t_end - 1e-9,
                                    sample_stride=5)
            leaks = [logical_projection(traj.states[i])[1]
                     for i in range(traj.states.shape[0])]
            assert max(leaks) <= 1e-9

    def test_restriction_equivalence(self):
        """4-dim lifted dynamics projected to the logical basis match the
        effective single-qubit system at frequency 4*omega0."""
        rng = np.random.default_rng(13)
        params = SystemParams(1.0, 1.0)
        eff = effective_params(params)
        dt = 1e-4 * TWO_PI / eff.omega0
        for _ in range(5):
            logical = random_logical_pulse(rng)
            lifted = lift_logical_controls(logical)
            p0 = BlochPoint(rng.uniform(0, math.pi), rng.uniform(0, TWO_PI))
            t_end = logical.t_end - 1e-9
            traj4 = oracle_propagate(lifted, logical_bloch_state(p0), params, dt,
                                     t_end, sample_stride=10 ** 9)
            amps, leak = logical_projection(traj4.final_state)
            assert leak <= 1e-9
            eff_pulse = effective_pulse_from_logical(logical)
            traj2 = propagate(eff_pulse, bloch_to_state(p0), eff, dt, t_end,
                              sample_stride=10 ** 9)
            assert fidelity(amps / np.linalg.norm(amps), traj2.final_state) >= 1 - 1e-7

    def test_pulse_transforms_are_inverse(self):
        rng = np.random.default_rng(19)
        logical = random_logical_pulse(rng)
        back = logical_pulse_from_effective(effective_pulse_from_logical(logical))
        for t in np.linspace(logical.t_start, logical.t_end - 1e-9, 40):
            a = logical.segment_at(t).controls(t)
            b = back.segment_at(t).controls(t)
            assert a[0] == pytest.approx(b[0], abs=1e-12)
            assert a[1] == pytest.approx(b[1], abs=1e-12)


class TestEntanglementMetrics:
    def test_concurrence_examples(self):
        assert concurrence(KET_00) == 0.0
        bell = (KET_01 + KET_10) / math.sqrt(2)
        assert concurrence(bell) == pytest.approx(1.0, abs=1e-12)
        s = math.cos(math.pi / 8) * KET_01 + math.sin(math.pi / 8) * KET_10
        assert concurrence(s) == pytest.approx(math.sin(math.pi / 4), abs=1e-12)
        with pytest.raises(DimensionError):
            concurrence(np.array([1, 0], dtype=complex))

    def test_em_membership_examples(self):
        assert em_membership((KET_01 + 1j * KET_10) / math.sqrt(2))
        assert not em_membership(KET_01.astype(complex))
        s = math.sqrt(0.6) * KET_01 + math.sqrt(0.4) * KET_10
        assert not em_membership(s, tol=1e-6)

    def test_em_members_are_maximally_entangled(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            phi = rng.uniform(0, TWO_PI)
            s = (KET_01 + np.exp(1j * phi) * KET_10) / math.sqrt(2)
            assert em_membership(s)
            assert concurrence(s) == pytest.approx(1.0, abs=1e-12)


class TestEntangler:
    def test_from_logical_ground_state(self):
        params = SystemParams(1.0, 1.0)
        r = synth_entangler(BlochPoint(0.0, 0.0), params)
        s0 = logical_bloch_state(BlochPoint(0.0, 0.0))
        dt = 1e-4 * TWO_PI / (4 * params.omega0)
        traj = oracle_propagate(r.pulse, s0, params, dt, r.t_f, sample_stride=10 ** 9)
        f = traj.final_state / np.linalg.norm(traj.final_state)
        assert abs(abs(f[1]) - math.sqrt(0.5)) <= 1e-6
        assert abs(abs(f[2]) - math.sqrt(0.5)) <= 1e-6
        assert concurrence(f) >= 1 - 1e-6
        assert em_membership(f, tol=1e-6)

    def test_couplings_within_bound(self):
        params = SystemParams(1.0, 1.0)
        r = synth_entangler(BlochPoint(2.0, 4.0), params)
        logical = r.pulse.logical
        ts = np.linspace(logical.t_start, r.t_f, 5000)
        worst = 0.0
        for t in ts:
            c = r.pulse.coefficients(float(t))
            worst = max(worst, *(abs(v) for v in c.values()))
        assert worst <= params.g0 + 1e-12

    def test_budget_gate(self):
        params = SystemParams(1.0, 1.0)
        bound = entangler_time_bound(params, ControlClass.BOUNDED_CONTINUOUS)
        assert bound == pytest.approx(math.pi + TWO_PI)
        r = synth_entangler(BlochPoint(0.0, 0.0), params, ts=bound)
        assert r.t_f - r.design["t0"] <= bound
        with pytest.raises(TimeBudgetInfeasible):
            synth_entangler(BlochPoint(0.0, 0.0), params, ts=0.5 * bound)

    def test_bounded_class_bound_value(self):
        params = SystemParams(1.0, 1.0)
        expected = min(math.pi / 4 + TWO_PI, math.pi + 1.5 * math.pi)
        assert entangler_time_bound(params, ControlClass.BOUNDED) == pytest.approx(expected)

    def test_accepts_state_vector_input(self):
        params = SystemParams(1.0, 1.0)
        r = synth_entangler(KET_01.astype(complex), params)
        assert r.design["initial"][0] == pytest.approx(0.0)
        with pytest.raises(SubspaceError):
            synth_entangler(KET_00.astype(complex), params)

    def test_storage_on_entangled_circle(self):
        params = SystemParams(1.0, 1.0)
        r = synth_entangler(BlochPoint(1.2, 0.7), params)
        s0 = logical_bloch_state(BlochPoint(1.2, 0.7))
        dt = 1e-4 * TWO_PI / (4 * params.omega0)
        horizon = r.t_f + 5 * TWO_PI / (4 * params.omega0)
        traj = oracle_propagate(r.pulse, s0, params, dt, horizon, sample_stride=50)
        mask = traj.t >= r.t_f
        for state in traj.states[mask]:
            assert em_membership(state / np.linalg.norm(state), tol=1e-6)
