#!/usr/bin/env python3
"""Independent reference values frozen into the C++ test suites.

Optics quantities are evaluated with mpmath at 50 digits straight from the
closed forms. Dynamics references use scipy's dense matrix exponential of the
column-stacked Lindblad generator, which shares no code path with the RK4
integrator under test.

Run:  python3 tests/oracles/reference_values.py
"""
import mpmath as mp
import numpy as np
import scipy.linalg as sl

mp.mp.dps = 50
C = mp.mpf(299792458)
D_LEN = mp.mpf("0.01")
ALPHA = mp.mpf("0.35")
CAVITIES = {1: ("0.9", "0.99", "0.8"), 2: ("0.9", "0.9", "0"),
            3: ("0.9", "0.999", "0"), 4: ("0.9", "0.999", "0")}


def optics():
    out = {}
    for j, (rin, rout, fr) in CAVITIES.items():
        rin, rout, fr = mp.mpf(rin), mp.mpf(rout), mp.mpf(fr)
        xi = mp.sqrt(rin * rout * mp.e ** (-2 * D_LEN * ALPHA))
        m = 1 / (1 - xi)
        t = 2 * D_LEN / C
        dloss = 1 - mp.e ** (-2 * ALPHA * D_LEN)
        g_int = dloss * (1 - xi ** (2 * (m + 1))) / ((1 - xi ** 2) * m * t) / 1e9
        g_out_raw = (1 - rout ** (m + 1)) / (m * t) / 1e9
        out[j] = dict(xi=xi, m=m, D=dloss, gamma_internal=g_int,
                      gamma_out=(1 - fr) * g_out_raw, gamma_out_raw=g_out_raw)
    return out


def couplings(opt, mode):
    direct = {(1, 2), (3, 4)}
    eta = mp.mpf("0.5")
    res = {}
    for k in range(1, 5):
        for j in range(1, 5):
            if k == j:
                continue
            rest = [s for s in range(1, 5) if s not in (k, j)]
            if (min(k, j), max(k, j)) in direct:
                transfer = 1j * mp.sqrt(1 - eta)
            else:
                transfer = (1j) ** 2 * (1 - eta) * sum(mp.sqrt(mp.mpf(CAVITIES[p][0])) for p in rest)
            rk, rj = mp.mpf(CAVITIES[k][0]), mp.mpf(CAVITIES[j][0])
            den = (1 - opt[j]["m"]) if mode == "literal" else (1 - opt[j]["xi"])
            g = transfer / (2j) * (C / D_LEN) / 1e9 * mp.sqrt((1 - rk) * (1 - rj)) \
                * mp.e ** (-ALPHA * D_LEN) / den
            res[(k, j)] = mp.mpc(g)
    sym = {}
    for k in range(1, 5):
        for j in range(k + 1, 5):
            mag = mp.sqrt(abs(res[(k, j)]) * abs(res[(j, k)]))
            sym[(k, j)] = mag * mp.expjpi(mp.arg(res[(k, j)]) / mp.pi)
    return res, sym


def generator(n, g, dissipation, dephasing, det_rate, det_site=2, sink=True):
    dim = 1 + n + (1 if sink else 0)
    h = np.zeros((dim, dim), complex)
    for (i, j), v in g.items():
        h[i, j] = v
        h[j, i] = np.conj(v)
    eye = np.eye(dim)
    gen = -1j * (np.kron(eye, h) - np.kron(h.T, eye))

    def ket_bra(a, b):
        m = np.zeros((dim, dim))
        m[a, b] = 1
        return m
    chans = [(dissipation[i - 1], ket_bra(0, i)) for i in range(1, n + 1)]
    chans += [(dephasing[i - 1], ket_bra(i, i)) for i in range(1, n + 1)]
    if sink:
        chans.append((det_rate, ket_bra(n + 1, det_site)))
    for rate, op in chans:
        ldl = op.conj().T @ op
        gen += rate * (2 * np.kron(op.conj(), op) - np.kron(eye, ldl) - np.kron(ldl.T, eye))
    return gen, dim


PRESET = {(1, 2): 4.3, (1, 3): 5.7, (1, 4): 7.6, (2, 3): 6.1, (2, 4): 4.5, (3, 4): 5.9}


def preset_psink(gamma, t):
    gen, dim = generator(4, PRESET, [0.07] * 4, [gamma] * 4, 1.0)
    rho = np.zeros(dim * dim, complex)
    rho[1 * dim + 1] = 1
    v = sl.expm(gen * t) @ rho
    r = v.reshape(dim, dim, order="F")
    return r[dim - 1, dim - 1].real, r[1, 1].real


if __name__ == "__main__":
    opt = optics()
    for j, q in opt.items():
        print(j, {k: mp.nstr(v, 17) for k, v in q.items()})
    for mode in ("buildup", "literal"):
        raw, sym = couplings(opt, mode)
        print(mode, "raw", {k: mp.nstr(v, 17) for k, v in raw.items()})
        print(mode, "sym", {k: mp.nstr(v, 17) for k, v in sym.items()})
    for gamma in (0.0, 1.0):
        for t in (1.0, 5.0, 20.0):
            print("preset gamma", gamma, "t", t, [repr(x) for x in preset_psink(gamma, t)])
    for gamma in (0.5, 1.0, 2.0, 5.0, 100.0):
        print("sweep", gamma, repr(preset_psink(gamma, 20.0)[0]))
