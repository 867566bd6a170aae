"""Reduced S-matrix amplitudes for two-photon emission from a laser-dressed
electron, and the perturbative (one-laser-photon) reference amplitude.

The reduced amplitude is the spinor bracket

    sum_s  ubar(p_f) [ M(s-n) Prop(p_b, s) F(s) + (b <-> c) ] u(p_i)

with dressed propagator momenta p_b = q_i + s kappa - k_b (channel b) and
p_c = q_i + s kappa - k_c (channel c).  All volume factors and the
conservation delta are handled analytically in the rate formulas
(observables module).

For linear laser polarization the vertex coefficients are generalized
Bessel functions of the argument differences between the in/out state and
the intermediate state; for circular polarization they are ordinary Bessel
functions with unit-modulus phases.  Both cases share one kernel: each
vertex matrix is a 3-term combination coef[0] S0 + coef[1] S1 + coef[2] S2
of fixed 4x4 structures.

Everything runs on light-front components in the chiral representation
(see clifford); sandwich values are representation independent.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kinematics as kin
from .backend import get_kernels
from .bessel import s_support_bound
from .clifford import (DIRAC_TO_CHIRAL, chiral_bar, chiral_slash_lf,
                       chiral_spinor_lf, lf_dot, lf_from_txyz)
from .constants import E_CHARGE, M_E

_K = get_kernels()

_ID4 = np.eye(4, dtype=complex)
_DROP_TOL = 1e-26

METHOD_NONE = "none"
METHOD_PULSE = "pulse"
METHOD_IMAG_MASS = "imag-mass"

# total nonlinear-Compton width approximation Gamma(kappa.q) = GAMMA_SLOPE kappa.q / m
GAMMA_SLOPE = 4.0e-3


class ResonancePole(Exception):
    """A propagator denominator vanished with no regularization to absorb it."""


@dataclass(frozen=True)
class Regularization:
    """Propagator-pole treatment: 'none', 'pulse' (finite pulse duration tau,
    default 1e4/omega) or 'imag-mass' (complex energy/mass shifts)."""
    method: str = METHOD_PULSE
    tau: float | None = None

    def __post_init__(self):
        if self.method not in (METHOD_NONE, METHOD_PULSE, METHOD_IMAG_MASS):
            raise ValueError(f"unknown regularization method {self.method!r}")
        if self.tau is not None and self.tau <= 0.0:
            raise ValueError("pulse length tau must be positive")

    @classmethod
    def none(cls):
        return cls(method=METHOD_NONE)

    @classmethod
    def pulse(cls, tau: float | None = None):
        return cls(method=METHOD_PULSE, tau=tau)

    @classmethod
    def imaginary_mass(cls):
        return cls(method=METHOD_IMAG_MASS)

    def resolved_tau(self, laser: kin.LaserConfig) -> float:
        return self.tau if self.tau is not None else 1.0e4 / laser.omega_mev


@dataclass(frozen=True, eq=False)
class ScatterConfig:
    """One evaluation point: laser + electron + photon-b energy and both
    photon directions; photon order n; polarizations (None = basis default /
    to-be-summed); electron spins; regularization."""
    laser: kin.LaserConfig
    electron: kin.ElectronConfig
    omega_b: float
    dir_b: kin.PhotonDirection
    dir_c: kin.PhotonDirection
    n: int = 1
    eps_b: np.ndarray | None = None
    eps_c: np.ndarray | None = None
    r_i: int = 1
    r_f: int = 1
    regularization: Regularization = field(default_factory=Regularization)

    def __post_init__(self):
        if self.omega_b <= 0.0:
            raise ValueError("omega_b must be positive")
        if self.n < 1:
            raise ValueError("photon order n must be >= 1")
        if self.r_i not in (1, 2) or self.r_f not in (1, 2):
            raise ValueError("spin indices must be 1 or 2")


@dataclass(frozen=True)
class ReducedAmplitude:
    value: complex
    n: int
    part_b: complex | None = None
    part_c: complex | None = None


# ---------------------------------------------------------------------------
# per-point context and per-order workspace
# ---------------------------------------------------------------------------

class _PointContext:
    """n-independent kinematic data for one (laser, electron, omega_b, dirs)."""

    def __init__(self, laser, electron, omega_b, dir_b, dir_c, regularization):
        self.laser = laser
        self.electron = electron
        self.omega_b = omega_b
        self.dir_b = dir_b
        self.dir_c = dir_c
        self.reg = regularization
        self.om = laser.omega_mev
        self.xi = laser.xi
        self.mstar2 = kin.effective_mass_sq(laser)

        self.kappa = kin.laser_lf(laser)
        self.p_i = kin.electron_lf(electron)
        self.q_i = kin.dressed_lf(electron, laser)
        self.Q_i = 0.5 * (self.q_i[0] + self.q_i[1])
        self.kdot_qi = self.om * self.q_i[0]

        self.k_b = kin.photon_lf(omega_b, dir_b)
        self.kt_c = kin.photon_lf(1.0, dir_c)
        self.kapsl = chiral_slash_lf(self.kappa)

        self.kdpb = self.kdot_qi - lf_dot(self.kappa, self.k_b)
        self.pb0 = self.q_i - self.k_b
        self.d0b = -2.0 * lf_dot(self.q_i, self.k_b)
        self.d1b = 2.0 * self.kdpb
        self.prop0_b = (chiral_slash_lf(self.pb0)
                        - self.xi ** 2 * M_E ** 2 / (2.0 * self.kdpb) * self.kapsl
                        + M_E * _ID4)

        self._spinor_pair = None
        if laser.polarization == kin.LINEAR:
            amag = np.sqrt(2.0) * M_E * self.xi / abs(E_CHARGE)
            self.a = np.array([0.0, 0.0, amag, 0.0])
            self.a_sq = -amag * amag
            self.asl = chiral_slash_lf(self.a)
            self.alpha_i = self._alpha_lin(self.p_i, self.om * self.p_i[0])
            self.beta_i = self._beta_lin(self.om * self.p_i[0])
            self.alpha_b = self._alpha_lin(self.pb0, self.kdpb)
            self.beta_b = self._beta_lin(self.kdpb)
        else:
            amag = M_E * self.xi / abs(E_CHARGE)
            self.a1 = np.array([0.0, 0.0, amag, 0.0])
            self.a2 = np.array([0.0, 0.0, 0.0, amag])
            self.a1_sq = -amag * amag
            self.a1sl = chiral_slash_lf(self.a1)
            self.a2sl = chiral_slash_lf(self.a2)
            self.al12_i = self._alpha12(self.p_i, self.om * self.p_i[0])
            self.al12_b = self._alpha12(self.pb0, self.kdpb)

    @property
    def spinor_pair(self):
        if self._spinor_pair is None:
            self._spinor_pair = np.stack([chiral_spinor_lf(self.p_i, 1),
                                          chiral_spinor_lf(self.p_i, 2)])
        return self._spinor_pair

    def _alpha_lin(self, p, kdp):
        return E_CHARGE * lf_dot(self.a, p) / kdp

    def _beta_lin(self, kdp):
        return E_CHARGE ** 2 * self.a_sq / (8.0 * kdp)

    def _alpha12(self, p, kdp):
        return (E_CHARGE * lf_dot(self.a1, p) / kdp,
                E_CHARGE * lf_dot(self.a2, p) / kdp)


_S_WINDOW_PAD = 4


def _s_window(n, s_absorb, s_emit):
    """Summation window: intersection of the absorption-side support
    [-s_absorb, s_absorb] and the emission-side support shifted by n,
    padded by a few orders; empty (lo > hi) when the supports no longer
    overlap and the channel's contribution is below the coefficient tails."""
    lo = max(-s_absorb, n - s_emit) - _S_WINDOW_PAD
    hi = min(s_absorb, n + s_emit) + _S_WINDOW_PAD
    return lo, hi


def _phase_pair(d1, d2, flip_f):
    """bar-alpha and Volkov phase from the two alpha-differences.

    flip_f selects the printed sign convention: the out-state pairs use
    arctan2(-d2, d1), the in-state pairs arctan2(d2, -d1).
    """
    abar = float(np.hypot(d1, d2))
    if abar == 0.0:
        return 0.0, 0.0
    if flip_f:
        return abar, kin.arctan_two(-d2, d1)
    return abar, kin.arctan_two(d2, -d1)


class _OrderData:
    """Per-photon-order kinematics, Bessel coefficient grids and propagator
    coefficients; None-valued via the factory when the channel is closed."""

    def __init__(self, ctx: _PointContext, n: int, wc: float):
        self.n = n
        self.omega_c = wc
        self.k_c = wc * ctx.kt_c
        self.q_f = ctx.q_i + n * ctx.kappa - ctx.k_b - self.k_c
        self.kdot_qf = ctx.om * self.q_f[0]
        c_f = ctx.xi ** 2 * M_E ** 2 / (2.0 * self.kdot_qf)
        self.p_f = self.q_f - c_f * ctx.kappa
        self.qf_dot_kc = lf_dot(self.q_f, self.k_c)

        self.kdpf = self.kdot_qf
        self.kdpc = ctx.kdot_qi - lf_dot(ctx.kappa, self.k_c)
        self.pc0 = ctx.q_i - self.k_c
        self.d0c = -2.0 * lf_dot(ctx.q_i, self.k_c)
        self.d1c = 2.0 * self.kdpc
        self.prop0_c = (chiral_slash_lf(self.pc0)
                        - ctx.xi ** 2 * M_E ** 2 / (2.0 * self.kdpc) * ctx.kapsl
                        + M_E * _ID4)

        # summation grids: the product of vertex coefficients is negligible
        # outside the intersection of the two supports (the large-order
        # Bessel suppression that terminates the photon-order sum), so each
        # channel sums over the intersection plus a safety margin
        if ctx.laser.polarization == kin.LINEAR:
            alpha_f = ctx._alpha_lin(self.p_f, self.kdpf)
            beta_f = ctx._beta_lin(self.kdpf)
            alpha_c = ctx._alpha_lin(self.pc0, self.kdpc)
            beta_c = ctx._beta_lin(self.kdpc)
            d_ib = (ctx.alpha_i - ctx.alpha_b, ctx.beta_i - ctx.beta_b)
            d_fb = (alpha_f - ctx.alpha_b, beta_f - ctx.beta_b)
            d_ic = (ctx.alpha_i - alpha_c, ctx.beta_i - beta_c)
            d_fc = (alpha_f - alpha_c, beta_f - beta_c)
            self.sb_lo, self.sb_hi = _s_window(n, s_support_bound(*d_ib),
                                               s_support_bound(*d_fb))
            self.sc_lo, self.sc_hi = _s_window(n, s_support_bound(*d_ic),
                                               s_support_bound(*d_fc))
            from .bessel import gen_bessel_table
            if self.sb_lo <= self.sb_hi:
                self.coef_fb = _c3(gen_bessel_table(self.sb_lo, self.sb_hi, *d_ib))
                self.coef_mb = _c3(gen_bessel_table(self.sb_lo - n, self.sb_hi - n, *d_fb))
            if self.sc_lo <= self.sc_hi:
                self.coef_fc = _c3(gen_bessel_table(self.sc_lo, self.sc_hi, *d_ic))
                self.coef_mc = _c3(gen_bessel_table(self.sc_lo - n, self.sc_hi - n, *d_fc))
        else:
            al12_f = ctx._alpha12(self.p_f, self.kdpf)
            al12_c = ctx._alpha12(self.pc0, self.kdpc)
            ab_ib, ph_ib = _phase_pair(ctx.al12_i[0] - ctx.al12_b[0],
                                       ctx.al12_i[1] - ctx.al12_b[1], flip_f=False)
            ab_fb, ph_fb = _phase_pair(al12_f[0] - ctx.al12_b[0],
                                       al12_f[1] - ctx.al12_b[1], flip_f=True)
            ab_ic, ph_ic = _phase_pair(ctx.al12_i[0] - al12_c[0],
                                       ctx.al12_i[1] - al12_c[1], flip_f=False)
            ab_fc, ph_fc = _phase_pair(al12_f[0] - al12_c[0],
                                       al12_f[1] - al12_c[1], flip_f=True)
            self.sb_lo, self.sb_hi = _s_window(n, s_support_bound(ab_ib, 0.0),
                                               s_support_bound(ab_fb, 0.0))
            self.sc_lo, self.sc_hi = _s_window(n, s_support_bound(ab_ic, 0.0),
                                               s_support_bound(ab_fc, 0.0))
            if self.sb_lo <= self.sb_hi:
                self.coef_fb = _circ_coef_f(ab_ib, ph_ib, self.sb_lo, self.sb_hi)
                self.coef_mb = _circ_coef_m(ab_fb, ph_fb, self.sb_lo - n, self.sb_hi - n)
            if self.sc_lo <= self.sc_hi:
                self.coef_fc = _circ_coef_f(ab_ic, ph_ic, self.sc_lo, self.sc_hi)
                self.coef_mc = _circ_coef_m(ab_fc, ph_fc, self.sc_lo - n, self.sc_hi - n)

        # complex denominator coefficients per regularization
        if ctx.reg.method == METHOD_IMAG_MASS:
            self.d0b_c, self.d1b_c = _imag_mass_shift(ctx, ctx.d0b, ctx.d1b,
                                                      ctx.kdpb, ctx.omega_b)
            self.d0c_c, self.d1c_c = _imag_mass_shift(ctx, self.d0c, self.d1c,
                                                      self.kdpc, wc)
        else:
            self.d0b_c, self.d1b_c = complex(ctx.d0b), complex(ctx.d1b)
            self.d0c_c, self.d1c_c = complex(self.d0c), complex(self.d1c)
            _check_poles(ctx.d0b, ctx.d1b, self.sb_lo, self.sb_hi)
            _check_poles(self.d0c, self.d1c, self.sc_lo, self.sc_hi)


def _c3(table):
    return np.ascontiguousarray(table.astype(np.complex128))


def _j_signed(jtab, orders):
    out = jtab[np.abs(orders)]
    odd_neg = (orders < 0) & (np.abs(orders) % 2 == 1)
    out = np.where(odd_neg, -out, out)
    return out


def _circ_coef_m(abar, phase, nu_lo, nu_hi):
    """Emission-vertex coefficient triple (J e^{i phi nu}, +combo, -combo)."""
    nus = np.arange(nu_lo, nu_hi + 1)
    nmax = int(np.abs(nus).max()) + 1
    jtab = _K.bessel_j_array(nmax, abar)
    jm = _j_signed(jtab, nus - 1) * np.exp(1j * phase * (nus - 1))
    jp = _j_signed(jtab, nus + 1) * np.exp(1j * phase * (nus + 1))
    out = np.empty((len(nus), 3), dtype=np.complex128)
    out[:, 0] = _j_signed(jtab, nus) * np.exp(1j * phase * nus)
    out[:, 1] = jm + jp
    out[:, 2] = -1j * (jm - jp)
    return out


def _circ_coef_f(abar, phase, s_lo, s_hi):
    """Absorption-vertex coefficients carry the reversed index J_{-s}."""
    ms = -np.arange(s_lo, s_hi + 1)
    nmax = int(np.abs(ms).max()) + 1
    jtab = _K.bessel_j_array(nmax, abar)
    jm = _j_signed(jtab, ms - 1) * np.exp(1j * phase * (ms - 1))
    jp = _j_signed(jtab, ms + 1) * np.exp(1j * phase * (ms + 1))
    out = np.empty((len(ms), 3), dtype=np.complex128)
    out[:, 0] = _j_signed(jtab, ms) * np.exp(1j * phase * ms)
    out[:, 1] = jm + jp
    out[:, 2] = -1j * (jm - jp)
    return out


def _imag_mass_shift(ctx, d0, d1, kd_mid, omega_emitted):
    """Complex denominator coefficients with Q_i -> Q_i - i m Gamma(kappa.q_i)/(2 Q_i)
    and m -> m - i Gamma(kappa.p_mid)/2 applied inside p^2 - m*^2.

    The mass width attaches to the bare m^2 of m*^2 = m^2 - e^2 a^2/2, not to
    the intensity shift: with the width on the full m^2(1+xi^2) the two
    imaginary insertions no longer cancel against each other (net Im ~
    m Gamma xi^2), which wrecks the soft-photon interchannel cancellation and
    makes the two regularization methods differ by factors of several below
    the first resonance, contradicting their required sub-percent agreement.
    """
    gam_i = GAMMA_SLOPE * ctx.kdot_qi / M_E
    delta_i = M_E * gam_i / (2.0 * ctx.Q_i)
    delta_m = 0.5 * GAMMA_SLOPE * kd_mid / M_E
    d0_c = (d0
            + (-1j * delta_i) * (2.0 * ctx.Q_i - 1j * delta_i - 2.0 * omega_emitted)
            + (2j * M_E * delta_m + delta_m ** 2))
    d1_c = d1 + (-1j * delta_i) * (2.0 * ctx.om)
    return d0_c, d1_c


def _check_poles(d0, d1, s_lo, s_hi):
    s_star = -d0 / d1
    s_near = round(s_star)
    if s_lo <= s_near <= s_hi:
        if abs(d0 + d1 * s_near) < 1e-12 * abs(d1):
            raise ResonancePole(
                f"propagator pole at s = {s_near} (use a regularization method)")


# ---------------------------------------------------------------------------
# vertex structures
# ---------------------------------------------------------------------------

def _structs_linear(ctx, od, eps_m_sl, eps_m_kap, kd_mid):
    """(S0, S1, S2) multiplying (A_0, A_1, A_2) at an emission vertex between
    the out state (kappa.p_f) and the intermediate state (kd_mid)."""
    e = E_CHARGE
    S1 = (e / (2.0 * kd_mid)) * (eps_m_sl @ ctx.kapsl @ ctx.asl) \
        + (e / (2.0 * od.kdpf)) * (ctx.asl @ ctx.kapsl @ eps_m_sl)
    S2 = (-(e ** 2) * ctx.a_sq * eps_m_kap / (2.0 * od.kdpf * kd_mid)) * ctx.kapsl
    return np.stack([eps_m_sl, S1, S2])


def _structs_linear_f(ctx, od, eps_f_sl, eps_f_kap, kd_mid):
    """Absorption-vertex twin, between the intermediate state and the in state."""
    e = E_CHARGE
    kd_in = ctx.om * ctx.p_i[0]
    S1 = (e / (2.0 * kd_in)) * (eps_f_sl @ ctx.kapsl @ ctx.asl) \
        + (e / (2.0 * kd_mid)) * (ctx.asl @ ctx.kapsl @ eps_f_sl)
    S2 = (-(e ** 2) * ctx.a_sq * eps_f_kap / (2.0 * kd_mid * kd_in)) * ctx.kapsl
    return np.stack([eps_f_sl, S1, S2])


def _structs_circular(ctx, od, eps_sl, eps_kap, kd_mid, out_side):
    e = E_CHARGE
    kd_other = od.kdpf if out_side else ctx.om * ctx.p_i[0]
    S0 = eps_sl - (e ** 2 * ctx.a1_sq * eps_kap / (2.0 * kd_other * kd_mid)) * ctx.kapsl
    if out_side:
        S1 = 0.5 * ((e / (2.0 * kd_mid)) * (eps_sl @ ctx.kapsl @ ctx.a1sl)
                    + (e / (2.0 * kd_other)) * (ctx.a1sl @ ctx.kapsl @ eps_sl))
        S2 = 0.5 * ((e / (2.0 * kd_mid)) * (eps_sl @ ctx.kapsl @ ctx.a2sl)
                    + (e / (2.0 * kd_other)) * (ctx.a2sl @ ctx.kapsl @ eps_sl))
    else:
        S1 = 0.5 * ((e / (2.0 * kd_other)) * (eps_sl @ ctx.kapsl @ ctx.a1sl)
                    + (e / (2.0 * kd_mid)) * (ctx.a1sl @ ctx.kapsl @ eps_sl))
        S2 = 0.5 * ((e / (2.0 * kd_other)) * (eps_sl @ ctx.kapsl @ ctx.a2sl)
                    + (e / (2.0 * kd_mid)) * (ctx.a2sl @ ctx.kapsl @ eps_sl))
    return np.stack([S0, S1, S2])


class _EpsData:
    """Per-polarization-vector precomputation shared across photon orders."""

    __slots__ = ("lf", "sl", "kap_dot")

    def __init__(self, ctx, eps_lf):
        self.lf = eps_lf
        self.sl = chiral_slash_lf(eps_lf)
        self.kap_dot = lf_dot(ctx.kappa, eps_lf)


def _struct_stack(ctx, od, eps_list, kd_mid, out_side):
    out = np.empty((len(eps_list), 3, 4, 4), dtype=np.complex128)
    for i, eps in enumerate(eps_list):
        if ctx.laser.polarization == kin.LINEAR:
            if out_side:
                out[i] = _structs_linear(ctx, od, eps.sl, eps.kap_dot, kd_mid)
            else:
                out[i] = _structs_linear_f(ctx, od, eps.sl, eps.kap_dot, kd_mid)
        else:
            out[i] = _structs_circular(ctx, od, eps.sl, eps.kap_dot, kd_mid, out_side)
    return out


# ---------------------------------------------------------------------------
# bracket assembly and public amplitude API
# ---------------------------------------------------------------------------

def _bracket_matrices(ctx, od, eps_b_lf, eps_c_lf):
    """4x4 bracket matrices for all polarization pairings.

    Returns (n_b, n_c, 4, 4): index [ib, ic] is the bracket with
    eps_b = eps_b_lf[ib], eps_c = eps_c_lf[ic].
    """
    nb, nc = len(eps_b_lf), len(eps_c_lf)
    if od.sb_lo <= od.sb_hi:
        smb = _struct_stack(ctx, od, eps_c_lf, ctx.kdpb, out_side=True)
        sfb = _struct_stack(ctx, od, eps_b_lf, ctx.kdpb, out_side=False)
        out_b = _K.channel_brackets(od.coef_mb, od.coef_fb, smb, sfb,
                                    ctx.prop0_b, ctx.kapsl,
                                    od.d0b_c, od.d1b_c, od.sb_lo, _DROP_TOL)
        out_b = np.transpose(out_b, (1, 0, 2, 3))
    else:
        out_b = np.zeros((nb, nc, 4, 4), dtype=np.complex128)
    if od.sc_lo <= od.sc_hi:
        smc = _struct_stack(ctx, od, eps_b_lf, od.kdpc, out_side=True)
        sfc = _struct_stack(ctx, od, eps_c_lf, od.kdpc, out_side=False)
        out_c = _K.channel_brackets(od.coef_mc, od.coef_fc, smc, sfc,
                                    od.prop0_c, ctx.kapsl,
                                    od.d0c_c, od.d1c_c, od.sc_lo, _DROP_TOL)
    else:
        out_c = np.zeros((nb, nc, 4, 4), dtype=np.complex128)
    # channel b was [eps_c variant, eps_b variant]; channel c is [eps_b, eps_c]
    return out_b, out_c


def _as_eps(ctx, eps_list):
    return [e if isinstance(e, _EpsData) else _EpsData(ctx, e) for e in eps_list]


def _order_tensor(ctx, od, eps_b, eps_c, split_channels=False):
    """Amplitude tensor S[r_i-1, r_f-1, ib, ic] for one photon order."""
    eps_b = _as_eps(ctx, eps_b)
    eps_c = _as_eps(ctx, eps_c)
    bb, bc = _bracket_matrices(ctx, od, eps_b, eps_c)
    ui = ctx.spinor_pair
    uf = np.stack([chiral_bar(chiral_spinor_lf(od.p_f, 1)),
                   chiral_bar(chiral_spinor_lf(od.p_f, 2))])
    if split_channels:
        sb = np.einsum('fa,xyab,ib->ifxy', uf, bb, ui)
        sc = np.einsum('fa,xyab,ib->ifxy', uf, bc, ui)
        return sb, sc
    return np.einsum('fa,xyab,ib->ifxy', uf, bb + bc, ui)


def _eps_lf(eps, direction, slot):
    """Light-front form of a user polarization vector, or the basis vector."""
    if eps is None:
        basis = kin.polarization_basis(direction)
        eps = basis.eps1 if slot == 0 else basis.eps2
    return lf_from_txyz(np.asarray(eps))


def make_context(config: ScatterConfig) -> _PointContext:
    return _PointContext(config.laser, config.electron, config.omega_b,
                         config.dir_b, config.dir_c, config.regularization)


def order_data(ctx: _PointContext, n: int) -> _OrderData | None:
    """Per-order workspace; None when the n-channel is closed."""
    wc = kin.omega_c_exact_lf(n, ctx.q_i, ctx.kappa, ctx.k_b, ctx.kt_c)
    if wc is None:
        return None
    return _OrderData(ctx, n, wc)


def amplitude_tensor(config: ScatterConfig, n: int | None = None,
                     basis: str = "cartesian"):
    """S[r_i-1, r_f-1, lambda_b-1, lambda_c-1] over the full polarization
    basis (Cartesian eps1/eps2 or helicity R/L) at photon order n.

    Returns (tensor, order_data); (None, None) if the channel is closed.
    """
    ctx = make_context(config)
    od = order_data(ctx, config.n if n is None else n)
    if od is None:
        return None, None
    bb = kin.polarization_basis(config.dir_b)
    bc = kin.polarization_basis(config.dir_c)
    if basis == "cartesian":
        eb = [lf_from_txyz(bb.eps1), lf_from_txyz(bb.eps2)]
        ec = [lf_from_txyz(bc.eps1), lf_from_txyz(bc.eps2)]
    elif basis == "helicity":
        eb = [lf_from_txyz(bb.epsR), lf_from_txyz(bb.epsL)]
        ec = [lf_from_txyz(bc.epsR), lf_from_txyz(bc.epsL)]
    else:
        raise ValueError(f"unknown basis {basis!r}")
    return _order_tensor(ctx, od, eb, ec), od


def reduced_amplitude(config: ScatterConfig, split_channels: bool = False) -> ReducedAmplitude:
    """The bracketed spinor amplitude at the configuration's (n, spins, eps)."""
    ctx = make_context(config)
    od = order_data(ctx, config.n)
    if od is None:
        raise kin.ChannelClosed(f"n = {config.n} channel closed at this point")
    eb = [_eps_lf(config.eps_b, config.dir_b, 0)]
    ec = [_eps_lf(config.eps_c, config.dir_c, 0)]
    i, f = config.r_i - 1, config.r_f - 1
    if split_channels:
        sb, sc = _order_tensor(ctx, od, eb, ec, split_channels=True)
        return ReducedAmplitude(value=complex(sb[i, f, 0, 0] + sc[i, f, 0, 0]),
                                n=config.n, part_b=complex(sb[i, f, 0, 0]),
                                part_c=complex(sc[i, f, 0, 0]))
    s = _order_tensor(ctx, od, eb, ec)
    return ReducedAmplitude(value=complex(s[i, f, 0, 0]), n=config.n)


def pulse_factor(ctx: _PointContext, od: _OrderData, tau: float) -> float:
    """Finite-pulse damping: product over the summation grid of
    [1 - exp(-tau (p^2 - m*^2)^2 / m^3)] for both channels."""
    m3 = M_E ** 3
    phi = 1.0
    for d0, d1, lo, hi in ((ctx.d0b, ctx.d1b, od.sb_lo, od.sb_hi),
                           (od.d0c, od.d1c, od.sc_lo, od.sc_hi)):
        d = d0 + d1 * np.arange(lo, hi + 1)
        phi *= float(np.prod(-np.expm1(-tau * d * d / m3)))
    return phi


def regularization_factor(config: ScatterConfig, method: str | None = None):
    """The regularization data for one configuration.

    'pulse': the multiplicative rate factor Phi (float).
    'imag-mass': dict of complex denominator coefficient pairs per channel.
    """
    reg = config.regularization if method is None else Regularization(
        method=method, tau=config.regularization.tau)
    if reg.method == METHOD_NONE:
        raise ValueError("no regularization factor for method 'none'")
    cfg = ScatterConfig(laser=config.laser, electron=config.electron,
                        omega_b=config.omega_b, dir_b=config.dir_b,
                        dir_c=config.dir_c, n=config.n, regularization=reg)
    ctx = make_context(cfg)
    od = order_data(ctx, cfg.n)
    if od is None:
        raise kin.ChannelClosed(f"n = {cfg.n} channel closed at this point")
    if reg.method == METHOD_PULSE:
        return pulse_factor(ctx, od, reg.resolved_tau(config.laser))
    return {"b": (od.d0b_c, od.d1b_c), "c": (od.d0c_c, od.d1c_c)}


# ---------------------------------------------------------------------------
# vertex current matrices exposed for inspection (Dirac representation)
# ---------------------------------------------------------------------------

def _to_dirac(m_chiral):
    return DIRAC_TO_CHIRAL.conj().T @ m_chiral @ DIRAC_TO_CHIRAL


def current_m(config: ScatterConfig, s: int, channel: str = "b") -> np.ndarray:
    """Emission-vertex current M^(s-n) (linear polarization), Dirac rep."""
    if config.laser.polarization != kin.LINEAR:
        raise ValueError("current_m is the linear-polarization current")
    ctx = make_context(config)
    od = order_data(ctx, config.n)
    if od is None:
        raise kin.ChannelClosed("channel closed")
    eps_b = _eps_lf(config.eps_b, config.dir_b, 0)
    eps_c = _eps_lf(config.eps_c, config.dir_c, 0)
    if channel == "b":
        stack = _struct_stack(ctx, od, _as_eps(ctx, [eps_c]), ctx.kdpb, out_side=True)[0]
        coefs = od.coef_mb[s - od.sb_lo]
    else:
        stack = _struct_stack(ctx, od, _as_eps(ctx, [eps_b]), od.kdpc, out_side=True)[0]
        coefs = od.coef_mc[s - od.sc_lo]
    m = coefs[0] * stack[0] + coefs[1] * stack[1] + coefs[2] * stack[2]
    return _to_dirac(m)


def current_f(config: ScatterConfig, s: int, channel: str = "b") -> np.ndarray:
    """Absorption-vertex current F^s (linear polarization), Dirac rep."""
    if config.laser.polarization != kin.LINEAR:
        raise ValueError("current_f is the linear-polarization current")
    ctx = make_context(config)
    od = order_data(ctx, config.n)
    if od is None:
        raise kin.ChannelClosed("channel closed")
    eps_b = _eps_lf(config.eps_b, config.dir_b, 0)
    eps_c = _eps_lf(config.eps_c, config.dir_c, 0)
    if channel == "b":
        stack = _struct_stack(ctx, od, _as_eps(ctx, [eps_b]), ctx.kdpb, out_side=False)[0]
        coefs = od.coef_fb[s - od.sb_lo]
    else:
        stack = _struct_stack(ctx, od, _as_eps(ctx, [eps_c]), od.kdpc, out_side=False)[0]
        coefs = od.coef_fc[s - od.sc_lo]
    m = coefs[0] * stack[0] + coefs[1] * stack[1] + coefs[2] * stack[2]
    return _to_dirac(m)


def current_n_g_circular(config: ScatterConfig, s: int,
                         channel: str = "b") -> tuple[np.ndarray, np.ndarray]:
    """Circular-polarization vertex pair (N^(s-n), G^s), Dirac rep."""
    if config.laser.polarization != kin.CIRCULAR:
        raise ValueError("current_n_g_circular needs circular polarization")
    ctx = make_context(config)
    od = order_data(ctx, config.n)
    if od is None:
        raise kin.ChannelClosed("channel closed")
    eps_b = _eps_lf(config.eps_b, config.dir_b, 0)
    eps_c = _eps_lf(config.eps_c, config.dir_c, 0)
    if channel == "b":
        sm = _struct_stack(ctx, od, _as_eps(ctx, [eps_c]), ctx.kdpb, out_side=True)[0]
        sf = _struct_stack(ctx, od, _as_eps(ctx, [eps_b]), ctx.kdpb, out_side=False)[0]
        cm = od.coef_mb[s - od.sb_lo]
        cf = od.coef_fb[s - od.sb_lo]
    else:
        sm = _struct_stack(ctx, od, _as_eps(ctx, [eps_b]), od.kdpc, out_side=True)[0]
        sf = _struct_stack(ctx, od, _as_eps(ctx, [eps_c]), od.kdpc, out_side=False)[0]
        cm = od.coef_mc[s - od.sc_lo]
        cf = od.coef_fc[s - od.sc_lo]
    n_mat = cm[0] * sm[0] + cm[1] * sm[1] + cm[2] * sm[2]
    g_mat = cf[0] * sf[0] + cf[1] * sf[1] + cf[2] * sf[2]
    return _to_dirac(n_mat), _to_dirac(g_mat)


# ---------------------------------------------------------------------------
# perturbative double Compton scattering (one laser photon)
# ---------------------------------------------------------------------------

class _PdcsContext:
    """Tree-level kinematics with undressed conservation
    p_f + k_b + k_c = p_i + kappa."""

    def __init__(self, laser, electron, omega_b, dir_b, dir_c):
        self.laser = laser
        self.electron = electron
        self.omega_b = omega_b
        self.dir_b = dir_b
        self.dir_c = dir_c
        self.p_i = kin.electron_lf(electron)
        self.kappa = kin.laser_lf(laser)
        self.k_b = kin.photon_lf(omega_b, dir_b)
        kt_c = kin.photon_lf(1.0, dir_c)
        wc = kin.omega_c_exact_lf(1, self.p_i, self.kappa, self.k_b, kt_c)
        self.omega_c = wc
        if wc is None:
            return
        self.k_c = wc * kt_c
        self.p_f = self.p_i + self.kappa - self.k_b - self.k_c
        self.pf_dot_kc = lf_dot(self.p_f, self.k_c)

        def prop(p, den):
            if den == 0.0:
                raise ResonancePole("tree-level propagator pole")
            return (chiral_slash_lf(p) + M_E * _ID4) / den

        self.P_fc = prop(self.p_f + self.k_c, 2.0 * lf_dot(self.p_f, self.k_c))
        self.P_ik = prop(self.p_i + self.kappa, 2.0 * lf_dot(self.p_i, self.kappa))
        self.P_ib = prop(self.p_i - self.k_b, -2.0 * lf_dot(self.p_i, self.k_b))
        self.P_fk = prop(self.p_f - self.kappa, -2.0 * lf_dot(self.p_f, self.kappa))
        self.P_fb = prop(self.p_f + self.k_b, 2.0 * lf_dot(self.p_f, self.k_b))
        self.P_ic = prop(self.p_i - self.k_c, -2.0 * lf_dot(self.p_i, self.k_c))


def laser_polarization_lf(laser: kin.LaserConfig) -> np.ndarray:
    """Unit polarization of the laser mode for the tree-level amplitude."""
    if laser.polarization == kin.LINEAR:
        return np.array([0.0, 0.0, 1.0, 0.0], dtype=complex)
    return np.array([0.0, 0.0, 1.0, 1.0j]) / np.sqrt(2.0)


def _pdcs_chain_sum(ctx: _PdcsContext, eps_b_lf, eps_c_lf, eps_l_lf):
    eb = chiral_slash_lf(eps_b_lf)
    ec = chiral_slash_lf(eps_c_lf)
    el = chiral_slash_lf(eps_l_lf)
    return (ec @ ctx.P_fc @ eb @ ctx.P_ik @ el
            + ec @ ctx.P_fc @ el @ ctx.P_ib @ eb
            + el @ ctx.P_fk @ ec @ ctx.P_ib @ eb
            + eb @ ctx.P_fb @ ec @ ctx.P_ik @ el
            + eb @ ctx.P_fb @ el @ ctx.P_ic @ ec
            + el @ ctx.P_fk @ eb @ ctx.P_ic @ ec)


def make_pdcs_context(config: ScatterConfig) -> _PdcsContext:
    return _PdcsContext(config.laser, config.electron, config.omega_b,
                        config.dir_b, config.dir_c)


def pdcs_tensor(ctx: _PdcsContext, basis: str = "cartesian"):
    """Tree-level amplitude tensor S[r_i-1, r_f-1, lambda_b-1, lambda_c-1]."""
    if ctx.omega_c is None:
        return None
    bb = kin.polarization_basis(ctx.dir_b)
    bc = kin.polarization_basis(ctx.dir_c)
    if basis == "cartesian":
        eb = [lf_from_txyz(bb.eps1), lf_from_txyz(bb.eps2)]
        ec = [lf_from_txyz(bc.eps1), lf_from_txyz(bc.eps2)]
    else:
        eb = [lf_from_txyz(bb.epsR), lf_from_txyz(bb.epsL)]
        ec = [lf_from_txyz(bc.epsR), lf_from_txyz(bc.epsL)]
    el = laser_polarization_lf(ctx.laser)
    ui = np.stack([chiral_spinor_lf(ctx.p_i, 1), chiral_spinor_lf(ctx.p_i, 2)])
    uf = np.stack([chiral_bar(chiral_spinor_lf(ctx.p_f, 1)),
                   chiral_bar(chiral_spinor_lf(ctx.p_f, 2))])
    out = np.empty((2, 2, 2, 2), dtype=complex)
    for ib in range(2):
        for ic in range(2):
            nmat = _pdcs_chain_sum(ctx, eb[ib], ec[ic], el)
            out[:, :, ib, ic] = np.einsum('fa,ab,ib->if', uf, nmat, ui)
    return out


def pdcs_amplitude(config: ScatterConfig) -> complex:
    """Sum of the six tree diagrams, sandwiched at the config's spins/eps."""
    ctx = make_pdcs_context(config)
    if ctx.omega_c is None:
        raise kin.ChannelClosed("tree-level channel closed at this point")
    eb = _eps_lf(config.eps_b, config.dir_b, 0)
    ec = _eps_lf(config.eps_c, config.dir_c, 0)
    el = laser_polarization_lf(config.laser)
    nmat = _pdcs_chain_sum(ctx, eb, ec, el)
    uf = chiral_bar(chiral_spinor_lf(ctx.p_f, config.r_f))
    ui = chiral_spinor_lf(ctx.p_i, config.r_i)
    return complex(uf @ nmat @ ui)
