"""Ordinary and generalized Bessel functions, and summation-cutoff estimates.

The two-argument generalized Bessel function is the periodic integral

    A_k(n, alpha, beta) = (1/2pi) int_0^2pi cos^k(t) e^{i(n t - alpha sin t + beta sin 2t)} dt

real-valued for real (alpha, beta).  Evaluation is by uniform trapezoidal
quadrature, spectrally accurate for periodic analytic integrands; the
recurrence A_{k>0}(n) = [A_{k-1}(n+1) + A_{k-1}(n-1)]/2 is used as a
cross-check in the tests, not for evaluation.
"""

from dataclasses import dataclass

import numpy as np

from .backend import get_kernels

_K = get_kernels()


@dataclass(frozen=True)
class GenBesselArgs:
    k: int
    n: int
    alpha: float
    beta: float

    def __post_init__(self):
        if self.k not in (0, 1, 2):
            raise ValueError(f"cos-power k must be 0, 1 or 2, got {self.k}")


def bessel_j(n: int, x: float) -> float:
    """Ordinary Bessel function J_n(x) of integer order, J_-n = (-1)^n J_n."""
    an = abs(int(n))
    val = _K.bessel_j_array(an, float(x))[an]
    if n < 0 and an % 2 == 1:
        val = -val
    return float(val)


def bessel_j_array(nmax: int, x: float) -> np.ndarray:
    """[J_0(x), ..., J_nmax(x)]."""
    return _K.bessel_j_array(int(nmax), float(x))


def quad_nodes(nu_max: int, alpha: float, beta: float) -> int:
    """Trapezoid node count for gen_bessel_table.

    The N-node trapezoid rule returns sum_m A(nu + m N), so it is exact up
    to the aliased orders |nu +- N| >= N - nu_max; the margin keeps those
    beyond the super-exponential decay edge |alpha| + 2|beta|.
    """
    spread = abs(alpha) + 2.0 * abs(beta)
    need = nu_max + 1.6 * spread + 48.0
    return int(64 * np.ceil(need / 64.0))


def gen_bessel_table(nu_lo: int, nu_hi: int, alpha: float, beta: float,
                     n_nodes: int | None = None) -> np.ndarray:
    """A_k(nu, alpha, beta), k = 0..2, for all nu in [nu_lo, nu_hi]; shape (N, 3)."""
    if nu_hi < nu_lo:
        raise ValueError("nu_hi < nu_lo")
    if n_nodes is None:
        n_nodes = quad_nodes(max(abs(nu_lo), abs(nu_hi)), alpha, beta)
    return _K.gen_bessel_table(int(nu_lo), int(nu_hi), float(alpha), float(beta),
                               int(n_nodes))


def gen_bessel_a(args: GenBesselArgs) -> float:
    """Generalized Bessel function A_k(n, alpha, beta) to 1e-12 absolute.

    Node count starts at max(64, 8(|alpha| + 2|beta| + |n|)) and doubles
    until two successive evaluations agree.
    """
    n_nodes = int(max(64, np.ceil(8.0 * (abs(args.alpha) + 2.0 * abs(args.beta)
                                         + abs(args.n)))))
    prev = _K.gen_bessel_table(args.n, args.n, args.alpha, args.beta, n_nodes)[0, args.k]
    for _ in range(8):
        n_nodes *= 2
        cur = _K.gen_bessel_table(args.n, args.n, args.alpha, args.beta, n_nodes)[0, args.k]
        if abs(cur - prev) <= 1e-12:
            return float(cur)
        prev = cur
    return float(prev)


def j_plus_minus(s: int, alpha: float, phi: float) -> tuple[complex, complex]:
    """The helicity combinations (J_s^+, J_s^-) of ordinary Bessel functions:

    J_s^+ = [J_{s-1} e^{i(s-1)phi} + J_{s+1} e^{i(s+1)phi}] / 2
    J_s^- = [J_{s-1} e^{i(s-1)phi} - J_{s+1} e^{i(s+1)phi}] / (2i)
    """
    jm = bessel_j(s - 1, alpha) * np.exp(1j * (s - 1) * phi)
    jp = bessel_j(s + 1, alpha) * np.exp(1j * (s + 1) * phi)
    return complex(0.5 * (jm + jp)), complex(-0.5j * (jm - jp))


def s_support_bound(alpha: float, beta: float, tail_tol: float = 1e-14) -> int:
    """Fast conservative bound on the order beyond which |A_k| < tail_tol.

    Calibrated against the super-exponential decay past the turning point
    |n| ~ |alpha| + 2|beta|; verified by the doubled-cutoff tests.
    """
    spread = abs(alpha) + 2.0 * abs(beta)
    extra = max(0.0, -np.log10(max(tail_tol, 1e-300)) - 14.0)
    return int(np.ceil(spread + 10.0 + extra + 3.5 * (spread + 1.0) ** 0.6))


def s_cutoff(alpha_max: float, beta_max: float, tail_tol: float = 1e-14) -> int:
    """Smallest verified S with |A_k(n, ., .)| and |J_n(.)| < tail_tol for |n| > S.

    Starts from the analytic bound and walks outward until eight consecutive
    orders on both sides are below tail_tol.  Monotone in all arguments.
    """
    if tail_tol <= 0.0:
        raise ValueError("tail_tol must be positive")
    guess = s_support_bound(alpha_max, beta_max, tail_tol)
    probe = 8
    for _ in range(64):
        tab = gen_bessel_table(guess + 1, guess + probe, alpha_max, beta_max)
        neg = gen_bessel_table(-(guess + probe), -(guess + 1), alpha_max, beta_max)
        if max(np.abs(tab).max(), np.abs(neg).max()) < tail_tol:
            return guess
        guess += probe
    return guess
