"""Differential and integrated two-photon rates, the final polarization
density matrix, and the concurrence entanglement measure.

Rates are returned in s^-1 sr^-2 MeV^-1 (differential) and s^-1 (integrated);
the natural-unit-to-SI conversion happens only here, at the output boundary.
"""

import concurrent.futures as _futures
from dataclasses import dataclass, field

import numpy as np

from . import kinematics as kin
from .amplitude import (METHOD_PULSE, Regularization, ScatterConfig,
                        _eps_lf, _order_tensor, _pdcs_chain_sum,
                        laser_polarization_lf, make_context,
                        make_pdcs_context, order_data, pdcs_tensor,
                        pulse_factor)
from .clifford import chiral_bar, chiral_spinor_lf, lf_from_txyz
from .constants import ABS_E, M_E, MEV_TO_PER_SEC

_TWO_PI_5 = (2.0 * np.pi) ** 5


class ZeroAmplitudeError(Exception):
    """All amplitudes vanished; the polarization density matrix is undefined."""


@dataclass(frozen=True)
class DifferentialRatePoint:
    """Polarization-resolved (or -summed) differential rate, n-resolved."""
    value: float                       # s^-1 sr^-2 MeV^-1
    per_n: dict
    n_used: int
    converged: bool
    all_closed: bool


@dataclass(frozen=True)
class PolarizationDensityMatrix:
    matrix: np.ndarray                 # 4x4 complex, trace 1
    basis: str                         # 'cartesian' | 'helicity'
    weight: float                      # pre-normalization trace (rate units)


@dataclass(frozen=True)
class ConcurrenceResult:
    concurrence: float
    zetas: np.ndarray                  # descending eigenvalues of Q


@dataclass(frozen=True)
class IntegrationBounds:
    theta_b_max: float = 1.5e-3
    theta_c_max: float = 2.5e-3
    omega_b_min: float = 1.0e-3
    omega_b_max: float = 1.0


@dataclass(frozen=True)
class QuadratureOrders:
    psi_b: int = 16
    psi_c: int = 16
    theta_b: int = 12
    theta_c: int = 12
    omega_b: int = 20

    @classmethod
    def coarse(cls):
        return cls(psi_b=8, psi_c=8, theta_b=6, theta_c=6, omega_b=10)


@dataclass(frozen=True)
class IntegratedRateResult:
    value: float                       # s^-1
    error_est: float
    rel_resolution: float
    n_points: int
    theory: str
    converged: bool


# the two-qubit spin-flip operator sigma^2 x sigma^2 in the |11>,|12>,|21>,|22> basis
SPIN_FLIP = np.array([[0.0, 0.0, 0.0, -1.0],
                      [0.0, 0.0, 1.0, 0.0],
                      [0.0, 1.0, 0.0, 0.0],
                      [-1.0, 0.0, 0.0, 0.0]])


def _basis_pairs(config, basis="cartesian"):
    bb = kin.polarization_basis(config.dir_b)
    bc = kin.polarization_basis(config.dir_c)
    if basis == "cartesian":
        return ([lf_from_txyz(bb.eps1), lf_from_txyz(bb.eps2)],
                [lf_from_txyz(bc.eps1), lf_from_txyz(bc.eps2)])
    return ([lf_from_txyz(bb.epsR), lf_from_txyz(bb.epsL)],
            [lf_from_txyz(bc.epsR), lf_from_txyz(bc.epsL)])


def _prefactor_natural(ctx, od):
    """e^4 m^2 omega_b omega_c^2 / (8 (2 pi)^5 Q_i q_f.k_c)."""
    return (ABS_E ** 4 * M_E ** 2 * ctx.omega_b * od.omega_c ** 2
            / (8.0 * _TWO_PI_5 * ctx.Q_i * od.qf_dot_kc))


def _iter_orders(config, ctx, eps_b, eps_c, hard_cap):
    """Yields (n, od, S_tensor, weight_natural); generator shared by the rate
    and density-matrix accumulators."""
    reg = config.regularization
    tau = reg.resolved_tau(config.laser) if reg.method == METHOD_PULSE else None
    for n in range(1, hard_cap + 1):
        od = order_data(ctx, n)
        if od is None:
            yield n, None, None, 0.0
            continue
        s = _order_tensor(ctx, od, eps_b, eps_c)
        w = _prefactor_natural(ctx, od)
        if tau is not None:
            w *= pulse_factor(ctx, od, tau)
        yield n, od, s, w


def differential_rate(config: ScatterConfig, n_max: int = 60,
                      tail_rel: float = 1.0e-8, hard_cap: int = 240) -> DifferentialRatePoint:
    """Differential rate summed over photon orders.

    With eps_b/eps_c set, the rate at those fixed polarizations; with both
    None, summed over the transverse polarization basis of each photon.
    Electron spins are summed (final) and averaged (initial).  The n-sum
    runs to n_max and extends up to hard_cap until the relative tail of
    three consecutive orders drops below tail_rel.
    """
    ctx = make_context(config)
    summed = config.eps_b is None and config.eps_c is None
    if summed:
        eps_b, eps_c = _basis_pairs(config)
    else:
        eps_b = [_eps_lf(config.eps_b, config.dir_b, 0)]
        eps_c = [_eps_lf(config.eps_c, config.dir_c, 0)]
    per_n = {}
    total = 0.0
    small = 0
    n_used = 0
    converged = False
    any_open = False
    for n, od, s, w in _iter_orders(config, ctx, eps_b, eps_c, hard_cap):
        if od is None:
            per_n[n] = 0.0
            continue
        any_open = True
        contrib = w * float(np.sum(np.abs(s) ** 2)) * MEV_TO_PER_SEC
        per_n[n] = contrib
        total += contrib
        n_used = n
        if total > 0.0 and contrib < tail_rel * total:
            small += 1
            if small >= 3 and n >= min(8, n_max):
                converged = True
                break
        else:
            small = 0
    return DifferentialRatePoint(value=total, per_n=per_n, n_used=n_used,
                                 converged=converged, all_closed=not any_open)


def differential_rate_pdcs(config: ScatterConfig) -> float:
    """Tree-level (one-laser-photon) reference rate; exact xi^2 scaling.

    Polarization handling as in differential_rate.  Returns 0.0 for a
    closed channel.
    """
    ctx = make_pdcs_context(config)
    if ctx.omega_c is None:
        return 0.0
    if config.eps_b is None and config.eps_c is None:
        s = pdcs_tensor(ctx)
    else:
        eb = _eps_lf(config.eps_b, config.dir_b, 0)
        ec = _eps_lf(config.eps_c, config.dir_c, 0)
        nmat = _pdcs_chain_sum(ctx, eb, ec, laser_polarization_lf(config.laser))
        ui = np.stack([chiral_spinor_lf(ctx.p_i, 1), chiral_spinor_lf(ctx.p_i, 2)])
        uf = np.stack([chiral_bar(chiral_spinor_lf(ctx.p_f, 1)),
                       chiral_bar(chiral_spinor_lf(ctx.p_f, 2))])
        s = np.einsum('fa,ab,ib->if', uf, nmat, ui)
    xi = config.laser.xi
    w = (xi ** 2 * M_E ** 4 * ABS_E ** 4 * config.omega_b * ctx.omega_c ** 2
         / (16.0 * _TWO_PI_5 * config.electron.energy_mev * ctx.pf_dot_kc))
    return w * float(np.sum(np.abs(s) ** 2)) * MEV_TO_PER_SEC


def density_matrix(config: ScatterConfig, n_max: int = 60,
                   basis: str = "cartesian", tail_rel: float = 1.0e-8,
                   hard_cap: int = 240) -> PolarizationDensityMatrix:
    """Two-photon polarization density matrix in basis |11>,|12>,|21>,|22>.

    Photon orders add incoherently (distinct omega_c) with their
    differential-rate weights; electron spins are traced out; the result is
    normalized to unit trace.
    """
    if basis not in ("cartesian", "helicity"):
        raise ValueError(f"unknown basis {basis!r}")
    ctx = make_context(config)
    eps_b, eps_c = _basis_pairs(config, basis)
    rho = np.zeros((4, 4), dtype=complex)
    trace = 0.0
    small = 0
    for n, od, s, w in _iter_orders(config, ctx, eps_b, eps_c, hard_cap):
        if od is None:
            continue
        vecs = s.reshape(4, 4)           # (spin pair, |lambda_b lambda_c>)
        block = w * np.einsum('ka,kb->ab', vecs, vecs.conj())
        rho += block
        contrib = float(np.trace(block).real)
        trace += contrib
        if trace > 0.0 and contrib < tail_rel * trace:
            small += 1
            if small >= 3 and n >= min(8, n_max):
                break
        else:
            small = 0
    if trace <= 0.0:
        raise ZeroAmplitudeError("all amplitudes vanished; density matrix undefined")
    rho /= trace
    rho = 0.5 * (rho + rho.conj().T)
    return PolarizationDensityMatrix(matrix=rho, basis=basis,
                                     weight=trace * MEV_TO_PER_SEC)


def density_matrix_pdcs(config: ScatterConfig, basis: str = "cartesian") -> PolarizationDensityMatrix:
    """Tree-level analogue of density_matrix."""
    ctx = make_pdcs_context(config)
    if ctx.omega_c is None:
        raise ZeroAmplitudeError("closed channel; density matrix undefined")
    s = pdcs_tensor(ctx, basis)
    vecs = s.reshape(4, 4)
    rho = np.einsum('ka,kb->ab', vecs, vecs.conj())
    trace = float(np.trace(rho).real)
    if trace <= 0.0:
        raise ZeroAmplitudeError("all amplitudes vanished; density matrix undefined")
    rho /= trace
    rho = 0.5 * (rho + rho.conj().T)
    return PolarizationDensityMatrix(matrix=rho, basis=basis, weight=trace)


def concurrence(rho: PolarizationDensityMatrix | np.ndarray) -> ConcurrenceResult:
    """Wootters concurrence C = max(0, sqrt(z1) - sqrt(z2) - sqrt(z3) - sqrt(z4))
    from the descending eigenvalues of Q = rho (s2 x s2) rho* (s2 x s2).

    Evaluated through the Hermitian similarity sqrt(rho) rho~ sqrt(rho)
    (identical spectrum, fully symmetric eigensolves); the non-Hermitian
    eigensolve applied to Q directly loses digits at nearly degenerate
    eigenvalues.  Tests verify the two routes agree to 1e-10.
    """
    mat = rho.matrix if isinstance(rho, PolarizationDensityMatrix) else np.asarray(rho)
    herm_dev = np.max(np.abs(mat - mat.conj().T))
    if herm_dev > 1e-8 * max(1.0, np.max(np.abs(mat))):
        raise ValueError(f"density matrix not Hermitian (dev {herm_dev:.3e})")
    ev, vec = np.linalg.eigh(0.5 * (mat + mat.conj().T))
    if ev.min() < -1.0e-10:
        raise ValueError(f"density-matrix eigenvalue {ev.min():.3e} below "
                         "-1e-10; corrupt upstream state")
    rho_flip = SPIN_FLIP @ mat.conj() @ SPIN_FLIP
    q = mat @ rho_flip
    if np.array_equal(q, q.conj().T):
        # exactly Hermitian Q (real textbook states): solve it directly
        zetas = np.linalg.eigvalsh(q)
    else:
        root = (vec * np.sqrt(np.clip(ev, 0.0, None))) @ vec.conj().T
        m = root @ rho_flip @ root
        zetas = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    if zetas.min() < -1.0e-10:
        raise ValueError(f"Q eigenvalue {zetas.min():.3e} below -1e-10; "
                         "corrupt density matrix")
    re = np.sort(np.clip(zetas, 0.0, None))[::-1]
    roots = np.sqrt(re)
    c = max(0.0, roots[0] - roots[1] - roots[2] - roots[3])
    return ConcurrenceResult(concurrence=min(1.0, c), zetas=re)


# ---------------------------------------------------------------------------
# integrated rate
# ---------------------------------------------------------------------------

def _gl_nodes(n, a, b):
    x, w = np.polynomial.legendre.leggauss(n)
    return 0.5 * (b - a) * x + 0.5 * (a + b), 0.5 * (b - a) * w, x


def _point_rate(theory, laser, electron, omega_b, dir_b, dir_c, reg, n_max):
    cfg = ScatterConfig(laser=laser, electron=electron, omega_b=omega_b,
                        dir_b=dir_b, dir_c=dir_c, regularization=reg)
    if theory == "pdcs":
        return differential_rate_pdcs(cfg)
    return differential_rate(cfg, n_max=n_max).value


def _angle_chunk(args):
    (theory, laser, electron, reg, n_max, tnodes, chunk) = args
    g = np.zeros(len(tnodes))
    for (psb, psc, thb, thc, w_ang) in chunk:
        dir_b = kin.PhotonDirection(theta=thb, psi=psb)
        dir_c = kin.PhotonDirection(theta=thc, psi=psc)
        for it, t in enumerate(tnodes):
            om = float(np.exp(t))
            val = om * _point_rate(theory, laser, electron, om, dir_b, dir_c,
                                   reg, n_max)   # log-axis jacobian
            g[it] += w_ang * val
    return g


def integrated_rate(laser: kin.LaserConfig, electron: kin.ElectronConfig,
                    bounds: IntegrationBounds | None = None,
                    orders: QuadratureOrders | None = None,
                    theory: str = "nonpert",
                    regularization: Regularization | None = None,
                    n_max: int = 60, threads: int = 1) -> IntegratedRateResult:
    """Polarization-summed rate integrated over both solid angles and the
    photon-b energy window, by iterated Gauss-Legendre quadrature.

    The omega_b axis integrates in log(omega_b) (the spectrum carries an
    infrared 1/omega_b enhancement); angular axes carry their sin(theta)
    measures.  Deterministic for a fixed orders choice; `threads` forks
    worker processes over angle blocks with a fixed reduction order.

    Unless overridden, the propagators are NOT pulse-regularized here: the
    pulse width tau = 1e4/omega overlaps the soft-photon denominators
    (|d| ~ 1.5e-3 * omega_b) for omega_b below a few keV, suppressing the
    infrared end of the window by an order of magnitude, while inside the
    safe window the unregularized integrand is finite and method independent.
    """
    if theory not in ("nonpert", "pdcs"):
        raise ValueError(f"unknown theory {theory!r}")
    b = bounds or IntegrationBounds()
    o = orders or QuadratureOrders()
    reg = regularization or Regularization.none()

    psb, wpsb, _ = _gl_nodes(o.psi_b, 0.0, 2.0 * np.pi)
    psc, wpsc, _ = _gl_nodes(o.psi_c, 0.0, 2.0 * np.pi)
    thb, wthb, _ = _gl_nodes(o.theta_b, 0.0, b.theta_b_max)
    thc, wthc, _ = _gl_nodes(o.theta_c, 0.0, b.theta_c_max)
    tno, wt, xstd = _gl_nodes(o.omega_b, np.log(b.omega_b_min), np.log(b.omega_b_max))

    angle_jobs = []
    for i, pb in enumerate(psb):
        for j, pc in enumerate(psc):
            for k, tb in enumerate(thb):
                for l, tc in enumerate(thc):
                    w = wpsb[i] * wpsc[j] * wthb[k] * np.sin(tb) * wthc[l] * np.sin(tc)
                    angle_jobs.append((pb, pc, tb, tc, w))

    n_chunks = max(1, min(len(angle_jobs), 8 * max(1, threads)))
    chunks = [angle_jobs[i::n_chunks] for i in range(n_chunks)]
    payloads = [(theory, laser, electron, reg, n_max, tno, ch) for ch in chunks]

    if threads > 1:
        with _futures.ProcessPoolExecutor(max_workers=threads) as pool:
            gs = list(pool.map(_angle_chunk, payloads))
    else:
        gs = [_angle_chunk(p) for p in payloads]
    g = np.sum(gs, axis=0)              # angle-integrated log-energy profile

    value = float(wt @ g)
    # resolution heuristic: Legendre spectrum of the sampled energy profile
    vander = np.polynomial.legendre.legvander(xstd, o.omega_b - 1)
    wstd = wt / (0.5 * (np.log(b.omega_b_max) - np.log(b.omega_b_min)))
    coeffs = np.array([(2 * j + 1) / 2.0 * np.sum(wstd * vander[:, j] * g)
                       for j in range(o.omega_b)])
    scale = np.abs(coeffs).max()
    rel = float((np.abs(coeffs[-1]) + np.abs(coeffs[-2])) / scale) if scale > 0 else 0.0
    return IntegratedRateResult(value=value, error_est=rel * abs(value),
                                rel_resolution=rel,
                                n_points=len(angle_jobs) * o.omega_b,
                                theory=theory, converged=rel < 1.0e-2)


def power_law_exponent(x: np.ndarray, y: np.ndarray) -> float:
    """Least-squares slope of log y vs log x (positive pairs only).

    Equal weight per decade; emphasizes the small-x points when y spans
    orders of magnitude.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    mask = (x > 0) & (y > 0)
    if mask.sum() < 2:
        raise ValueError("need at least two positive points for a power-law fit")
    return float(np.polyfit(np.log(x[mask]), np.log(y[mask]), 1)[0])


def power_law_fit(x: np.ndarray, y: np.ndarray,
                  eta_range=(0.5, 6.0), step=1e-3) -> float:
    """Exponent of the least-squares fit y = A x^eta on the values themselves.

    For each candidate eta the amplitude A is optimal in closed form; the
    returned eta minimizes the value-space residual over a deterministic
    grid.  Weighs the large-y points more than the log-log regression.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) < 2:
        raise ValueError("need at least two points for a power-law fit")
    etas = np.arange(eta_range[0], eta_range[1] + step, step)
    best_eta, best_sse = etas[0], np.inf
    for eta in etas:
        basis = x ** eta
        a = float(basis @ y) / float(basis @ basis)
        sse = float(np.sum((y - a * basis) ** 2))
        if sse < best_sse:
            best_eta, best_sse = float(eta), sse
    return best_eta


def power_law_exponent_weighted(x, y, sigma_rel) -> float:
    """Log-log regression with per-point relative uncertainties.

    Appropriate when y_i are small differences of large quantities carrying
    a common relative quadrature error: sigma_rel_i ~ big_i / y_i, giving
    log-space weights 1/sigma_rel_i^2.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    w = 1.0 / np.asarray(sigma_rel, dtype=float) ** 2
    mask = (x > 0) & (y > 0)
    if mask.sum() < 2:
        raise ValueError("need at least two positive points for a power-law fit")
    lx, ly, w = np.log(x[mask]), np.log(y[mask]), w[mask]
    mx = np.sum(w * lx) / np.sum(w)
    my = np.sum(w * ly) / np.sum(w)
    return float(np.sum(w * (lx - mx) * (ly - my)) / np.sum(w * (lx - mx) ** 2))
