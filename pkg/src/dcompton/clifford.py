"""Gamma-matrix algebra, four-vectors, free spinors and spinor sandwiches.

Four-vectors are plain numpy arrays.  Two component conventions coexist:

* ``(t, x, y, z)`` with metric diag(1,-1,-1,-1) -- the public convention,
  used by ``gamma``/``slash``/``free_spinor`` in the standard Dirac
  representation.

* light-front ``(plus, minus, x, y)`` with plus = t + z, minus = t - z --
  used by the amplitude internals together with the chiral representation.
  At the ultrarelativistic backscattering kinematics treated here the
  light-front components of every physical momentum are individually small
  or individually large, never a hidden difference of large numbers, which
  keeps long matrix-element chains fully accurate in double precision.
  (In the Dirac representation the same chains lose 8-10 digits.)

Spinor sandwiches are representation independent, so all public results
agree with the Dirac-representation definitions.
"""

import numpy as np

from .constants import M_E

# ---------------------------------------------------------------------------
# (t, x, y, z) convention, Dirac representation
# ---------------------------------------------------------------------------

def four_vector(t, x, y, z):
    return np.array([t, x, y, z], dtype=float)


def mdot(a, b):
    """Minkowski scalar product a.b with metric diag(1,-1,-1,-1)."""
    return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3]


_I2 = np.eye(2)
_SIGMA = (
    np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
)


def _block(upper_left, upper_right, lower_left, lower_right):
    out = np.zeros((4, 4), dtype=complex)
    out[:2, :2] = upper_left
    out[:2, 2:] = upper_right
    out[2:, :2] = lower_left
    out[2:, 2:] = lower_right
    return out


_GAMMA = (
    _block(_I2, 0.0 * _I2, 0.0 * _I2, -_I2),
    _block(0 * _I2, _SIGMA[0], -_SIGMA[0], 0 * _I2),
    _block(0 * _I2, _SIGMA[1], -_SIGMA[1], 0 * _I2),
    _block(0 * _I2, _SIGMA[2], -_SIGMA[2], 0 * _I2),
)
for _g in _GAMMA:
    _g.setflags(write=False)

IDENTITY4 = np.eye(4, dtype=complex)
GAMMA0 = _GAMMA[0]


def gamma(mu: int) -> np.ndarray:
    """Gamma matrix in the standard Dirac representation."""
    if mu not in (0, 1, 2, 3):
        raise IndexError(f"gamma index must be 0..3, got {mu}")
    return _GAMMA[mu]


def slash(p) -> np.ndarray:
    """p-slash = gamma.p for a (t,x,y,z) four-vector (may be complex)."""
    p0, p1, p2, p3 = p
    return np.array([
        [p0, 0.0, -p3, -(p1 - 1j * p2)],
        [0.0, p0, -(p1 + 1j * p2), p3],
        [p3, p1 - 1j * p2, -p0, 0.0],
        [p1 + 1j * p2, -p3, 0.0, -p0],
    ], dtype=complex)


def free_spinor(p, r: int, mass: float = M_E) -> np.ndarray:
    """Free Dirac spinor u_r(p), normalized to ubar_r u_r = 1.

    r = 1 is right-handed and r = 2 left-handed for motion along +x^3.
    Requires p on the positive-energy mass shell.
    """
    if r not in (1, 2):
        raise ValueError(f"spin index must be 1 or 2, got {r}")
    E = float(np.real(p[0]))
    if E <= 0.0:
        raise ValueError("spinor momentum must have positive energy")
    off = abs(mdot(p, p) - mass * mass)
    if off > 1e-6 * max(mass * mass, E * E):
        raise ValueError(f"off-shell momentum: p.p - m^2 = {off:.3e}")
    chi = np.zeros(2, dtype=complex)
    chi[r - 1] = 1.0
    sig_p = p[1] * _SIGMA[0] + p[2] * _SIGMA[1] + p[3] * _SIGMA[2]
    out = np.empty(4, dtype=complex)
    out[:2] = chi
    out[2:] = (sig_p @ chi) / (E + mass)
    return np.sqrt((E + mass) / (2.0 * mass)) * out


def bar(u) -> np.ndarray:
    """Dirac adjoint row vector u^dagger gamma^0 (Dirac representation)."""
    return u.conj() @ GAMMA0


def sandwich(ubar, M, u) -> complex:
    """ubar M u as a single complex number."""
    return complex(ubar @ M @ u)


def spin_sum_projector(p, mass: float = M_E) -> np.ndarray:
    """sum_r u_r(p) ubar_r(p) = (slash(p) + m) / (2m)."""
    return (slash(p) + mass * IDENTITY4) / (2.0 * mass)


# ---------------------------------------------------------------------------
# light-front (plus, minus, x, y) convention, chiral representation
# ---------------------------------------------------------------------------

def lf_from_txyz(v):
    """(t,x,y,z) -> (plus, minus, x, y).  Not cancellation-safe for
    ultrarelativistic momenta; those are assembled componentwise instead."""
    return np.array([v[0] + v[3], v[0] - v[3], v[1], v[2]], dtype=complex if np.iscomplexobj(v) else float)


def txyz_from_lf(v):
    return np.array([0.5 * (v[0] + v[1]), v[2], v[3], 0.5 * (v[0] - v[1])],
                    dtype=complex if np.iscomplexobj(v) else float)


def lf_dot(a, b):
    """Minkowski product in light-front components."""
    return 0.5 * (a[0] * b[1] + a[1] * b[0]) - a[2] * b[2] - a[3] * b[3]


# unitary Dirac -> chiral similarity: u_chiral = DIRAC_TO_CHIRAL @ u_dirac
DIRAC_TO_CHIRAL = _block(_I2, -_I2, _I2, _I2) / np.sqrt(2.0)
DIRAC_TO_CHIRAL.setflags(write=False)

GAMMA0_CHIRAL = _block(0 * _I2, _I2, _I2, 0 * _I2)
GAMMA0_CHIRAL.setflags(write=False)


def chiral_slash_lf(p) -> np.ndarray:
    """p-slash in the chiral representation from light-front components.

    Entries are exactly {p+, p-, px +- i py}; no large cancellations occur
    in products of such matrices.
    """
    pp, pm, px, py = p
    pt = px + 1j * py
    ptc = px - 1j * py
    z = np.zeros((4, 4), dtype=complex)
    z[0, 2] = pm
    z[0, 3] = -ptc
    z[1, 2] = -pt
    z[1, 3] = pp
    z[2, 0] = pp
    z[2, 1] = ptc
    z[3, 0] = pt
    z[3, 1] = pm
    return z


def chiral_spinor_lf(p, r: int, mass: float = M_E) -> np.ndarray:
    """u_r(p) in the chiral representation, ubar u = 1, from light-front p.

    Equals DIRAC_TO_CHIRAL @ free_spinor(p) but is assembled from the stable
    light-front pieces directly.
    """
    pp, pm, px, py = p
    E = 0.5 * (pp + pm)
    pt = px + 1j * py
    ptc = px - 1j * py
    xi = np.zeros(2, dtype=complex)
    xi[r - 1] = 1.0
    sig = np.array([[pm, -ptc], [-pt, pp]], dtype=complex)
    sigb = np.array([[pp, ptc], [pt, pm]], dtype=complex)
    den = np.sqrt(4.0 * mass * (E + mass))
    out = np.empty(4, dtype=complex)
    out[:2] = (sig @ xi + mass * xi) / den
    out[2:] = (sigb @ xi + mass * xi) / den
    return out


def chiral_bar(u) -> np.ndarray:
    return u.conj() @ GAMMA0_CHIRAL
