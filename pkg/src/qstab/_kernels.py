"""Numba inner loops for the two propagators.

Pulses are compiled to a flat float64 segment table so the integrators run
without Python callbacks.  Table layout (one row per integration window):

    col 0: kind (0 silence, 1 resonant, 2 static hold, 3 envelope)
    col 1: window start, col 2: window end (may exceed the envelope branch
           split; envelope segments are emitted as two rows split at their
           midpoint so every window has smooth controls)
    cols 3..9: kind-specific parameters

Resonant:  p0=g, p1=omega_rf, p2=phi1, p3=phase reference time
StaticHold: p0=ux, p1=uy
Envelope:  p0=g, p1=order, p2=carrier_omega, p3=carrier reference time,
           p4=sign_y, p5=envelope start, p6=envelope end
"""
from __future__ import annotations

import numpy as np
from numba import njit

KIND_SILENCE = 0
KIND_RESONANT = 1
KIND_HOLD = 2
KIND_ENVELOPE = 3

# two-qubit generator pieces: drift -w0*sz(x)I + w0*I(x)sz and the four
# control couplings sigma_i (x) sigma_j in the ordered basis |00>,|01>,|10>,|11>
_SX = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=np.complex128)
_SY = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=np.complex128)
_SZ = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=np.complex128)
_I2 = np.eye(2, dtype=np.complex128)
D4 = -np.kron(_SZ, _I2) + np.kron(_I2, _SZ)
KXX = np.kron(_SX, _SX)
KXY = np.kron(_SX, _SY)
KYX = np.kron(_SY, _SX)
KYY = np.kron(_SY, _SY)


@njit(cache=True)
def _row_controls(row, t):
    kind = int(row[0])
    if kind == KIND_RESONANT:
        ph = row[4] * (t - row[6]) + row[5]
        return row[3] * np.cos(ph), row[3] * np.sin(ph)
    if kind == KIND_HOLD:
        return row[3], row[4]
    if kind == KIND_ENVELOPE:
        g = row[3]
        order = row[4]
        t1 = row[8]
        tf = row[9]
        if t < t1 or t > tf:
            return 0.0, 0.0
        width = tf - t1
        if t < 0.5 * (t1 + tf):
            tau = (t1 + tf - 2.0 * t) / width
        else:
            tau = (2.0 * t - t1 - tf) / width
        if tau < 0.0:
            tau = 0.0
        elif tau > 1.0:
            tau = 1.0
        gt = g * (1.0 - tau ** order)
        ph = row[5] * (t - row[6])
        return gt * np.cos(ph), row[7] * gt * np.sin(ph)
    return 0.0, 0.0


@njit(cache=True)
def _pulse_controls(table, t):
    nrow = table.shape[0]
    for i in range(nrow):
        if t < table[i, 2]:
            return _row_controls(table[i], t)
    return _row_controls(table[nrow - 1], t)


@njit(cache=True)
def _run_dim2(table, psi0, omega0, dt, t_stop, stride, use_rk4,
              t_out, psi_out, ux_out, uy_out):
    """Integrate d/dt psi = +i*(omega0*Sz + ux*Sx + uy*Sy)*psi.

    use_rk4 False: midpoint-frozen exact 2x2 rotation per step (unitary by
    construction).  use_rk4 True: classical RK4, no renormalization.
    Returns the number of recorded samples.
    """
    a = psi0[0]
    b = psi0[1]
    t0 = table[0, 1]
    ux, uy = _pulse_controls(table, t0)
    t_out[0] = t0
    psi_out[0, 0] = a
    psi_out[0, 1] = b
    ux_out[0] = ux
    uy_out[0] = uy
    m = 1
    gstep = 0
    for i in range(table.shape[0]):
        row = table[i]
        ta = row[1]
        tb = row[2]
        if ta >= t_stop:
            break
        if tb > t_stop:
            tb = t_stop
        if tb <= ta:
            continue
        nst = int(np.ceil((tb - ta) / dt - 1e-12))
        if nst < 1:
            nst = 1
        h = (tb - ta) / nst
        for j in range(1, nst + 1):
            tp = ta + (j - 1) * h
            tn = tb if j == nst else ta + j * h
            hj = tn - tp
            if use_rk4:
                u1x, u1y = _row_controls(row, tp)
                u2x, u2y = _row_controls(row, tp + 0.5 * hj)
                u3x, u3y = _row_controls(row, tn)
                k1a = 1j * (0.5 * omega0 * a + 0.5 * (u1x - 1j * u1y) * b)
                k1b = 1j * (0.5 * (u1x + 1j * u1y) * a - 0.5 * omega0 * b)
                a2 = a + 0.5 * hj * k1a
                b2 = b + 0.5 * hj * k1b
                k2a = 1j * (0.5 * omega0 * a2 + 0.5 * (u2x - 1j * u2y) * b2)
                k2b = 1j * (0.5 * (u2x + 1j * u2y) * a2 - 0.5 * omega0 * b2)
                a3 = a + 0.5 * hj * k2a
                b3 = b + 0.5 * hj * k2b
                k3a = 1j * (0.5 * omega0 * a3 + 0.5 * (u2x - 1j * u2y) * b3)
                k3b = 1j * (0.5 * (u2x + 1j * u2y) * a3 - 0.5 * omega0 * b3)
                a4 = a + hj * k3a
                b4 = b + hj * k3b
                k4a = 1j * (0.5 * omega0 * a4 + 0.5 * (u3x - 1j * u3y) * b4)
                k4b = 1j * (0.5 * (u3x + 1j * u3y) * a4 - 0.5 * omega0 * b4)
                a = a + hj / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a)
                b = b + hj / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b)
            else:
                umx, umy = _row_controls(row, tp + 0.5 * hj)
                wn = np.sqrt(umx * umx + umy * umy + omega0 * omega0)
                half = 0.5 * hj * wn
                c = np.cos(half)
                s = np.sin(half) / wn
                na = c + 1j * s * omega0
                nb = 1j * s * (umx - 1j * umy)
                a_new = na * a + nb * b
                b_new = -np.conj(nb) * a + np.conj(na) * b
                a = a_new
                b = b_new
            gstep += 1
            if gstep % stride == 0 or j == nst:
                ux, uy = _pulse_controls(table, tn)
                t_out[m] = tn
                psi_out[m, 0] = a
                psi_out[m, 1] = b
                ux_out[m] = ux
                uy_out[m] = uy
                m += 1
    return m


@njit(cache=True)
def _g4_fill(omega0, ulx, uly, out):
    """out <- generator of the lifted two-qubit system, -(H0 + Hc(t)).

    The lifting pins the four coupling coefficients to the logical pair:
    u_xx = u_yy = ulx, u_yx = +uly, u_xy = -uly.
    """
    for r in range(4):
        for c in range(4):
            h = (omega0 * D4[r, c]
                 + ulx * KXX[r, c] + ulx * KYY[r, c]
                 + uly * KYX[r, c] - uly * KXY[r, c])
            out[r, c] = -h


@njit(cache=True)
def _expm4_apply(g, h, psi, scratch_a, scratch_u, scratch_w):
    """psi <- exp(+i*h*g) @ psi via scaling-and-squaring with a Taylor kernel."""
    # scaled A = i*h*g / 2^s with max-row-sum norm <= 0.25
    nrm = 0.0
    for r in range(4):
        acc = 0.0
        for c in range(4):
            acc += abs(g[r, c]) * abs(h)
        if acc > nrm:
            nrm = acc
    s = 0
    while nrm > 0.25:
        nrm *= 0.5
        s += 1
    scale = h / (2.0 ** s)
    for r in range(4):
        for c in range(4):
            scratch_a[r, c] = 1j * scale * g[r, c]
    # Horner form of sum A^k/k!, k = 0..12
    for r in range(4):
        for c in range(4):
            scratch_u[r, c] = 1.0 + 0.0j if r == c else 0.0 + 0.0j
    for k in range(12, 0, -1):
        for r in range(4):
            for c in range(4):
                acc = 0.0 + 0.0j
                for q in range(4):
                    acc += scratch_a[r, q] * scratch_u[q, c]
                scratch_w[r, c] = acc / k
        for r in range(4):
            for c in range(4):
                scratch_u[r, c] = scratch_w[r, c]
                if r == c:
                    scratch_u[r, c] += 1.0
    for _ in range(s):
        for r in range(4):
            for c in range(4):
                acc = 0.0 + 0.0j
                for q in range(4):
                    acc += scratch_u[r, q] * scratch_u[q, c]
                scratch_w[r, c] = acc
        for r in range(4):
            for c in range(4):
                scratch_u[r, c] = scratch_w[r, c]
    out0 = scratch_u[0, 0] * psi[0] + scratch_u[0, 1] * psi[1] + scratch_u[0, 2] * psi[2] + scratch_u[0, 3] * psi[3]
    out1 = scratch_u[1, 0] * psi[0] + scratch_u[1, 1] * psi[1] + scratch_u[1, 2] * psi[2] + scratch_u[1, 3] * psi[3]
    out2 = scratch_u[2, 0] * psi[0] + scratch_u[2, 1] * psi[1] + scratch_u[2, 2] * psi[2] + scratch_u[2, 3] * psi[3]
    out3 = scratch_u[3, 0] * psi[0] + scratch_u[3, 1] * psi[1] + scratch_u[3, 2] * psi[2] + scratch_u[3, 3] * psi[3]
    psi[0] = out0
    psi[1] = out1
    psi[2] = out2
    psi[3] = out3


@njit(cache=True)
def _rhs4(g, psi, out):
    for r in range(4):
        acc = 0.0 + 0.0j
        for c in range(4):
            acc += g[r, c] * psi[c]
        out[r] = 1j * acc


@njit(cache=True)
def _run_dim4(table, psi0, omega0, dt, t_stop, stride, use_rk4,
              t_out, psi_out, ux_out, uy_out):
    """Integrate the lifted two-qubit system from the logical control table.

    Recorded (ux, uy) are the logical control pair; the four physical
    coupling coefficients follow from the lifting rules.
    """
    psi = psi0.copy()
    g = np.zeros((4, 4), dtype=np.complex128)
    sa = np.zeros((4, 4), dtype=np.complex128)
    su = np.zeros((4, 4), dtype=np.complex128)
    sw = np.zeros((4, 4), dtype=np.complex128)
    k1 = np.zeros(4, dtype=np.complex128)
    k2 = np.zeros(4, dtype=np.complex128)
    k3 = np.zeros(4, dtype=np.complex128)
    k4 = np.zeros(4, dtype=np.complex128)
    tmp = np.zeros(4, dtype=np.complex128)
    t0 = table[0, 1]
    ux, uy = _pulse_controls(table, t0)
    t_out[0] = t0
    for r in range(4):
        psi_out[0, r] = psi[r]
    ux_out[0] = ux
    uy_out[0] = uy
    m = 1
    gstep = 0
    for i in range(table.shape[0]):
        row = table[i]
        ta = row[1]
        tb = row[2]
        if ta >= t_stop:
            break
        if tb > t_stop:
            tb = t_stop
        if tb <= ta:
            continue
        nst = int(np.ceil((tb - ta) / dt - 1e-12))
        if nst < 1:
            nst = 1
        h = (tb - ta) / nst
        for j in range(1, nst + 1):
            tp = ta + (j - 1) * h
            tn = tb if j == nst else ta + j * h
            hj = tn - tp
            if use_rk4:
                u1x, u1y = _row_controls(row, tp)
                u2x, u2y = _row_controls(row, tp + 0.5 * hj)
                u3x, u3y = _row_controls(row, tn)
                _g4_fill(omega0, u1x, u1y, g)
                _rhs4(g, psi, k1)
                for r in range(4):
                    tmp[r] = psi[r] + 0.5 * hj * k1[r]
                _g4_fill(omega0, u2x, u2y, g)
                _rhs4(g, tmp, k2)
                for r in range(4):
                    tmp[r] = psi[r] + 0.5 * hj * k2[r]
                _rhs4(g, tmp, k3)
                for r in range(4):
                    tmp[r] = psi[r] + hj * k3[r]
                _g4_fill(omega0, u3x, u3y, g)
                _rhs4(g, tmp, k4)
                for r in range(4):
                    psi[r] = psi[r] + hj / 6.0 * (k1[r] + 2.0 * k2[r] + 2.0 * k3[r] + k4[r])
            else:
                umx, umy = _row_controls(row, tp + 0.5 * hj)
                _g4_fill(omega0, umx, umy, g)
                _expm4_apply(g, hj, psi, sa, su, sw)
            gstep += 1
            if gstep % stride == 0 or j == nst:
                ux, uy = _pulse_controls(table, tn)
                t_out[m] = tn
                for r in range(4):
                    psi_out[m, r] = psi[r]
                ux_out[m] = ux
                uy_out[m] = uy
                m += 1
    return m
