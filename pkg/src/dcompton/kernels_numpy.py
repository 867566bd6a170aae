"""Vectorized pure-numpy variants of the hot kernels.

Functionally identical to kernels_numba; selected via DCOMPTON_BACKEND=numpy
(or automatically when numba is not installed).
"""

import numpy as np

BACKEND_NAME = "numpy"


def bessel_j_array(nmax: int, x: float) -> np.ndarray:
    """J_0(x)..J_nmax(x) by downward recurrence with even-sum normalization.

    Valid for any (nmax, x) in the ranges used here: the recursion starts
    well above both nmax and |x|, so the downward sweep is always stable.
    """
    out = np.zeros(nmax + 1)
    ax = abs(float(x))
    if ax < 1e-290:
        out[0] = 1.0
        return out
    top = max(nmax, int(ax) + 1)
    m = top + 24 + int(4.0 * np.sqrt(top + 10.0))
    if m % 2 == 1:
        m += 1
    jp = 0.0          # J_{k+1}
    jc = 1e-30        # J_k, arbitrary seed
    ssum = 0.0
    for k in range(m, 0, -1):
        jm = (2.0 * k) / ax * jc - jp
        jp = jc
        jc = jm
        if abs(jc) > 1e250:
            jc *= 1e-250
            jp *= 1e-250
            ssum *= 1e-250
            out *= 1e-250
        if k - 1 <= nmax:
            out[k - 1] = jc
        if (k - 1) > 0 and (k - 1) % 2 == 0:
            ssum += 2.0 * jc
    norm = ssum + jc  # jc is now the unnormalized J_0
    out /= norm
    if x < 0.0:
        out[1::2] *= -1.0
    return out


def gen_bessel_table(nu_lo: int, nu_hi: int, alpha: float, beta: float,
                     n_nodes: int) -> np.ndarray:
    """A_k(nu, alpha, beta) for nu in [nu_lo, nu_hi] and k = 0, 1, 2.

    Uniform trapezoidal quadrature of the defining periodic integral on
    [0, 2pi); exact alias analysis fixes the node count (see bessel module).
    Returns shape (nu_hi - nu_lo + 1, 3).
    """
    th = 2.0 * np.pi * np.arange(n_nodes) / n_nodes
    base = np.exp(1j * (-alpha * np.sin(th) + beta * np.sin(2.0 * th)))
    nus = np.arange(nu_lo, nu_hi + 1)
    phase = np.exp(1j * np.outer(nus, th))
    c = np.cos(th)
    out = np.empty((len(nus), 3))
    w = base.copy()
    for k in range(3):
        out[:, k] = (phase @ w).real / n_nodes
        w *= c
    return out


def channel_brackets(coef_m: np.ndarray, coef_f: np.ndarray,
                     Sm: np.ndarray, Sf: np.ndarray,
                     prop0: np.ndarray, kapsl: np.ndarray,
                     d0: complex, d1: complex, s_lo: int,
                     drop_tol: float) -> np.ndarray:
    """One dressed-propagator channel, summed over the photon-exchange index.

    For each grid value s the emission-vertex matrix is
    sum_k coef_m[j,k] Sm[variant,k], the absorption-vertex matrix is
    sum_k coef_f[j,k] Sf[variant,k], and the propagator is
    (prop0 + s*kapsl) / (d0 + d1*s).  Result[i, l] accumulates
    M_i P F_l over s for the 2x2 polarization variants.
    """
    ns = coef_m.shape[0]
    s_vals = s_lo + np.arange(ns)
    keep = (np.abs(coef_m).max(axis=1) * np.abs(coef_f).max(axis=1)) > drop_tol
    out = np.zeros((Sm.shape[0], Sf.shape[0], 4, 4), dtype=np.complex128)
    if not keep.any():
        return out
    cm = coef_m[keep]
    cf = coef_f[keep]
    sv = s_vals[keep]
    dv = d0 + d1 * sv
    P = (prop0[None, :, :] + sv[:, None, None] * kapsl[None, :, :]) / dv[:, None, None]
    M = np.einsum('jk,ikab->ijab', cm, Sm)
    F = np.einsum('jk,ikab->ijab', cf, Sf)
    MP = np.einsum('ijab,jbc->ijac', M, P)
    return np.einsum('ijab,ljbc->ilac', MP, F)
