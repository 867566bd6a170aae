"""Laser/electron configuration, dressed momenta, photon geometry and
polarization bases, two-photon energy conservation, and resonance positions.

Geometry is fixed: the laser propagates along -x^3, the electron along +x^3,
photon directions are (theta, psi) with theta the polar angle from +x^3.

Public four-vectors use (t, x, y, z) components.  The private ``*_lf``
helpers return light-front components (plus, minus, x, y) assembled from
cancellation-free expressions; the amplitude engine runs entirely on those.
"""

from dataclasses import dataclass, field

import numpy as np

from .clifford import lf_dot, mdot
from .constants import EV_TO_MEV, I_CRIT_W_CM2, M_E

LINEAR = "linear"
CIRCULAR = "circular"


class ChannelClosed(Exception):
    """Energy conservation admits no positive photon-c frequency."""


@dataclass(frozen=True)
class LaserConfig:
    """Monochromatic plane wave: photon energy [eV], intensity parameter xi,
    polarization 'linear' or 'circular'."""
    omega_ev: float
    xi: float
    polarization: str = LINEAR

    def __post_init__(self):
        if self.omega_ev <= 0.0:
            raise ValueError("laser photon energy must be positive")
        if self.xi < 0.0:
            raise ValueError("xi must be non-negative")
        if self.polarization not in (LINEAR, CIRCULAR):
            raise ValueError(f"polarization must be '{LINEAR}' or '{CIRCULAR}'")

    @property
    def omega_mev(self) -> float:
        return self.omega_ev * EV_TO_MEV

    @property
    def intensity_w_cm2(self) -> float:
        return self.xi ** 2 * (self.omega_mev / M_E) ** 2 * I_CRIT_W_CM2


@dataclass(frozen=True)
class ElectronConfig:
    """Initial electron, counterpropagating: energy [MeV], momentum along +x^3."""
    energy_mev: float

    def __post_init__(self):
        if self.energy_mev < M_E:
            raise ValueError("electron energy below rest mass")

    @property
    def momentum_mev(self) -> float:
        return float(np.sqrt(self.energy_mev ** 2 - M_E ** 2))


@dataclass(frozen=True)
class PhotonDirection:
    theta: float
    psi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= np.pi:
            raise ValueError("theta outside [0, pi]")

    def unit_wave_vector(self) -> np.ndarray:
        st, ct = np.sin(self.theta), np.cos(self.theta)
        return np.array([1.0, st * np.cos(self.psi), st * np.sin(self.psi), ct])


@dataclass(frozen=True)
class PolarizationBasis:
    eps1: np.ndarray
    eps2: np.ndarray
    epsR: np.ndarray = field(repr=False, default=None)
    epsL: np.ndarray = field(repr=False, default=None)


def arctan_two(y: float, x: float) -> float:
    """Two-branch arctan: arctan(y/x) for x > 0, pi + arctan(y/x) for x < 0.

    x = 0 is resolved by continuity (+-pi/2); the origin is rejected.
    Differs from the platform atan2 by 2pi in the third quadrant, which is
    immaterial in the e^{i s phi} phases it feeds.
    """
    if x > 0.0:
        return float(np.arctan(y / x))
    if x < 0.0:
        return float(np.pi + np.arctan(y / x))
    if y > 0.0:
        return 0.5 * np.pi
    if y < 0.0:
        return -0.5 * np.pi
    raise ValueError("arctan_two undefined at the origin")


def laser_wave_vector(laser: LaserConfig) -> np.ndarray:
    om = laser.omega_mev
    return np.array([om, 0.0, 0.0, -om])


def electron_momentum(electron: ElectronConfig) -> np.ndarray:
    return np.array([electron.energy_mev, 0.0, 0.0, electron.momentum_mev])


def dressed_momentum(p: np.ndarray, laser: LaserConfig) -> np.ndarray:
    """Laser-dressed average momentum q = p + xi^2 m^2 / (2 kappa.p) kappa.

    On the dressed shell: q.q = m*^2 = m^2 (1 + xi^2).
    """
    kappa = laser_wave_vector(laser)
    kp = mdot(kappa, p)
    if kp <= 0.0:
        raise ValueError("kappa.p must be positive (collinear degenerate case)")
    return p + laser.xi ** 2 * M_E ** 2 / (2.0 * kp) * kappa


def effective_mass_sq(laser: LaserConfig) -> float:
    return M_E ** 2 * (1.0 + laser.xi ** 2)


def chi(laser: LaserConfig, p: np.ndarray) -> float:
    """Quantum intensity parameter chi = xi kappa.p / m^2."""
    return laser.xi * mdot(laser_wave_vector(laser), p) / M_E ** 2


def polarization_basis(direction: PhotonDirection) -> PolarizationBasis:
    """Transverse linear pair and helicity combinations for one photon.

    eps1 = (0, cos t cos p, cos t sin p, -sin t), eps2 = (0, -sin p, cos p, 0),
    epsR/L = (eps1 +- i eps2)/sqrt(2).
    """
    th, ps = direction.theta, direction.psi
    ct, st = np.cos(th), np.sin(th)
    cp, sp = np.cos(ps), np.sin(ps)
    eps1 = np.array([0.0, ct * cp, ct * sp, -st])
    eps2 = np.array([0.0, -sp, cp, 0.0])
    inv = 1.0 / np.sqrt(2.0)
    return PolarizationBasis(eps1=eps1, eps2=eps2,
                             epsR=inv * (eps1 + 1j * eps2),
                             epsL=inv * (eps1 - 1j * eps2))


# ---------------------------------------------------------------------------
# light-front builders (cancellation-free component assembly)
# ---------------------------------------------------------------------------

def photon_lf(omega: float, direction: PhotonDirection) -> np.ndarray:
    """Photon four-vector in light-front components; the small minus
    component comes from 2 sin^2(theta/2) rather than 1 - cos(theta)."""
    th, ps = direction.theta, direction.psi
    st = np.sin(th)
    half = np.sin(0.5 * th)
    return np.array([omega * (1.0 + np.cos(th)), 2.0 * omega * half * half,
                     omega * st * np.cos(ps), omega * st * np.sin(ps)])


def laser_lf(laser: LaserConfig) -> np.ndarray:
    # kappa plus-component vanishes identically for backward propagation
    return np.array([0.0, 2.0 * laser.omega_mev, 0.0, 0.0])


def electron_lf(electron: ElectronConfig) -> np.ndarray:
    plus = electron.energy_mev + electron.momentum_mev
    return np.array([plus, M_E ** 2 / plus, 0.0, 0.0])


def dressed_lf(electron: ElectronConfig, laser: LaserConfig) -> np.ndarray:
    p = electron_lf(electron)
    kp = laser.omega_mev * p[0]      # kappa.p, single product
    out = p.copy()
    out[1] += laser.xi ** 2 * M_E ** 2 / (2.0 * kp) * 2.0 * laser.omega_mev
    return out


# ---------------------------------------------------------------------------
# conservation and resonance positions
# ---------------------------------------------------------------------------

def omega_c_exact_lf(n: int, q_i: np.ndarray, kappa: np.ndarray,
                     k_b: np.ndarray, kt_c: np.ndarray) -> float | None:
    """Frequency of photon c closing n-photon conservation, or None if the
    channel is closed.  All arguments in light-front components.

    The denominator equals q_f.k~_c, positive for any physical final
    electron, so a non-positive denominator also marks a closed channel.
    """
    num = n * lf_dot(kappa, q_i) - lf_dot(k_b, q_i) - n * lf_dot(kappa, k_b)
    den = n * lf_dot(kappa, kt_c) + lf_dot(q_i, kt_c) - lf_dot(k_b, kt_c)
    if den <= 0.0 or num <= 0.0:
        return None
    return num / den


def omega_c_exact(n: int, laser: LaserConfig, electron: ElectronConfig,
                  omega_b: float, dir_b: PhotonDirection,
                  dir_c: PhotonDirection) -> float | None:
    """Energy of the second photon fixed by n-photon energy-momentum
    conservation on the dressed shell; None when the channel is closed."""
    if n < 1:
        raise ValueError("photon order n must be >= 1")
    q_i = dressed_lf(electron, laser)
    kappa = laser_lf(laser)
    k_b = photon_lf(omega_b, dir_b)
    kt_c = photon_lf(1.0, dir_c)
    return omega_c_exact_lf(n, q_i, kappa, k_b, kt_c)


def omega_c_ceiling(n: int, laser: LaserConfig, electron: ElectronConfig) -> float:
    """4 n gamma^2 omega / (1 + xi^2), the backscattering energy maximum."""
    gamma2 = (electron.energy_mev / M_E) ** 2
    return 4.0 * n * gamma2 * laser.omega_mev / (1.0 + laser.xi ** 2)


def resonance_omega_b_type1(s: int, laser: LaserConfig, electron: ElectronConfig,
                            dir_b: PhotonDirection) -> float:
    """Photon-b energy at which the b-channel intermediate state is on the
    dressed shell (the nonlinear single-Compton line); independent of n, k_c."""
    if s < 1:
        raise ValueError("resonance order s must be >= 1")
    q_i = dressed_lf(electron, laser)
    kappa = laser_lf(laser)
    kt_b = photon_lf(1.0, dir_b)
    return s * lf_dot(kappa, q_i) / (lf_dot(q_i, kt_b) + s * lf_dot(kappa, kt_b))


def resonance_omega_b_type1_approx(s: int, laser: LaserConfig,
                                   electron: ElectronConfig,
                                   dir_b: PhotonDirection) -> float:
    """Small-angle form 4 s omega E_i^2 / (theta_b^2 E_i^2 + m^2(1+xi^2))."""
    Ei = electron.energy_mev
    om = laser.omega_mev
    return (4.0 * s * om * Ei ** 2
            / (dir_b.theta ** 2 * Ei ** 2 + M_E ** 2 * (1.0 + laser.xi ** 2)))


def resonance_omega_b_type2(n: int, s: int, laser: LaserConfig,
                            electron: ElectronConfig, dir_b: PhotonDirection,
                            dir_c: PhotonDirection) -> float:
    """Photon-b energy at which the c-channel intermediate state is on the
    dressed shell for fixed photon-c direction and order n."""
    q_i = dressed_lf(electron, laser)
    kappa = laser_lf(laser)
    kt_b = photon_lf(1.0, dir_b)
    kt_c = photon_lf(1.0, dir_c)
    cs = s * lf_dot(kappa, q_i) / (lf_dot(q_i, kt_c) + s * lf_dot(kappa, kt_c))
    den = (-cs * lf_dot(kt_b, kt_c) + lf_dot(q_i, kt_b) + n * lf_dot(kappa, kt_b))
    if den <= 0.0:
        raise ValueError("no type-2 resonance in the physical range")
    num = n * lf_dot(kappa, q_i) - cs * (lf_dot(q_i, kt_c) + n * lf_dot(kappa, kt_c))
    return num / den


def dressed_offshell_lf(q: np.ndarray, laser: LaserConfig) -> float:
    """q.q - m*^2 in light-front components."""
    return lf_dot(q, q) - effective_mass_sq(laser)
