"""Numba-jitted variants of the hot kernels (see kernels_numpy for contracts)."""

import numpy as np
from numba import njit

BACKEND_NAME = "numba"


@njit(cache=True)
def bessel_j_array(nmax: int, x: float) -> np.ndarray:
    out = np.zeros(nmax + 1)
    ax = abs(x)
    if ax < 1e-290:
        out[0] = 1.0
        return out
    top = nmax if nmax > int(ax) + 1 else int(ax) + 1
    m = top + 24 + int(4.0 * np.sqrt(top + 10.0))
    if m % 2 == 1:
        m += 1
    jp = 0.0
    jc = 1e-30
    ssum = 0.0
    for k in range(m, 0, -1):
        jm = (2.0 * k) / ax * jc - jp
        jp = jc
        jc = jm
        if abs(jc) > 1e250:
            jc *= 1e-250
            jp *= 1e-250
            ssum *= 1e-250
            for i in range(nmax + 1):
                out[i] *= 1e-250
        if k - 1 <= nmax:
            out[k - 1] = jc
        if (k - 1) > 0 and (k - 1) % 2 == 0:
            ssum += 2.0 * jc
    norm = ssum + jc
    for i in range(nmax + 1):
        out[i] /= norm
    if x < 0.0:
        for i in range(1, nmax + 1, 2):
            out[i] = -out[i]
    return out


@njit(cache=True)
def gen_bessel_table(nu_lo: int, nu_hi: int, alpha: float, beta: float,
                     n_nodes: int) -> np.ndarray:
    nnu = nu_hi - nu_lo + 1
    out = np.zeros((nnu, 3))
    for j in range(n_nodes):
        th = 2.0 * np.pi * j / n_nodes
        ph_int = -alpha * np.sin(th) + beta * np.sin(2.0 * th)
        base = complex(np.cos(ph_int), np.sin(ph_int))
        step = complex(np.cos(th), np.sin(th))
        cur = base * complex(np.cos(nu_lo * th), np.sin(nu_lo * th))
        c = np.cos(th)
        c2 = c * c
        for inu in range(nnu):
            re = cur.real
            out[inu, 0] += re
            out[inu, 1] += re * c
            out[inu, 2] += re * c2
            cur *= step
    for inu in range(nnu):
        out[inu, 0] /= n_nodes
        out[inu, 1] /= n_nodes
        out[inu, 2] /= n_nodes
    return out


@njit(cache=True)
def _mm4(a, b, out):
    for r in range(4):
        for c in range(4):
            acc = a[r, 0] * b[0, c]
            acc += a[r, 1] * b[1, c]
            acc += a[r, 2] * b[2, c]
            acc += a[r, 3] * b[3, c]
            out[r, c] = acc


@njit(cache=True)
def channel_brackets(coef_m, coef_f, Sm, Sf, prop0, kapsl,
                     d0, d1, s_lo, drop_tol):
    ns = coef_m.shape[0]
    nm = Sm.shape[0]
    nf = Sf.shape[0]
    out = np.zeros((nm, nf, 4, 4), dtype=np.complex128)
    P = np.empty((4, 4), dtype=np.complex128)
    M = np.empty((nm, 4, 4), dtype=np.complex128)
    MP = np.empty((nm, 4, 4), dtype=np.complex128)
    F = np.empty((4, 4), dtype=np.complex128)
    T = np.empty((4, 4), dtype=np.complex128)
    for j in range(ns):
        am = max(abs(coef_m[j, 0]), abs(coef_m[j, 1]), abs(coef_m[j, 2]))
        af = max(abs(coef_f[j, 0]), abs(coef_f[j, 1]), abs(coef_f[j, 2]))
        if am * af <= drop_tol:
            continue
        s = s_lo + j
        dinv = 1.0 / (d0 + d1 * s)
        for r in range(4):
            for c in range(4):
                P[r, c] = (prop0[r, c] + s * kapsl[r, c]) * dinv
        for i in range(nm):
            c0 = coef_m[j, 0]
            c1 = coef_m[j, 1]
            c2 = coef_m[j, 2]
            for r in range(4):
                for c in range(4):
                    M[i, r, c] = c0 * Sm[i, 0, r, c] + c1 * Sm[i, 1, r, c] + c2 * Sm[i, 2, r, c]
            _mm4(M[i], P, MP[i])
        for l in range(nf):
            c0 = coef_f[j, 0]
            c1 = coef_f[j, 1]
            c2 = coef_f[j, 2]
            for r in range(4):
                for c in range(4):
                    F[r, c] = c0 * Sf[l, 0, r, c] + c1 * Sf[l, 1, r, c] + c2 * Sf[l, 2, r, c]
            for i in range(nm):
                _mm4(MP[i], F, T)
                for r in range(4):
                    for c in range(4):
                        out[i, l, r, c] += T[r, c]
    return out
