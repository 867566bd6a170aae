import numpy as np
import pytest

from dcompton import clifford as cf
from dcompton.constants import M_E


def random_four_vectors(rng, count, scale=1.0):
    return rng.normal(scale=scale, size=(count, 4))


def on_shell_momentum(rng, pmax=3.0 * M_E):
    p3 = rng.uniform(-pmax, pmax, size=3)
    return np.array([np.sqrt(M_E ** 2 + p3 @ p3), *p3])


class TestGamma:
    def test_gamma_squares(self):
        assert np.allclose(cf.gamma(0) @ cf.gamma(0), np.eye(4))
        assert np.allclose(cf.gamma(1) @ cf.gamma(1), -np.eye(4))

    def test_off_diagonal_anticommutator(self):
        g01 = cf.gamma(0) @ cf.gamma(1) + cf.gamma(1) @ cf.gamma(0)
        assert np.allclose(g01, 0.0)

    def test_full_anticommutation(self):
        metric = np.diag([1.0, -1.0, -1.0, -1.0])
        for mu in range(4):
            for nu in range(4):
                anti = cf.gamma(mu) @ cf.gamma(nu) + cf.gamma(nu) @ cf.gamma(mu)
                assert np.allclose(anti, 2.0 * metric[mu, nu] * np.eye(4))

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            cf.gamma(4)

    def test_hermiticity(self):
        g0 = cf.gamma(0)
        for mu in range(4):
            g = cf.gamma(mu)
            assert np.allclose(g0 @ g.conj().T @ g0, g)


class TestSlash:
    def test_lightlike_square(self):
        k = np.array([2.0, 0.0, 0.0, -2.0])
        assert np.allclose(cf.slash(k) @ cf.slash(k), 0.0)

    def test_rest_frame_square(self):
        p = np.array([M_E, 0.0, 0.0, 0.0])
        assert np.allclose(cf.slash(p) @ cf.slash(p), M_E ** 2 * np.eye(4))

    def test_orthogonal_anticommute(self):
        k = np.array([1.0, 0.0, 0.0, -1.0])
        a = np.array([0.0, 1.3, -0.2, 0.0])
        anti = cf.slash(a) @ cf.slash(k) + cf.slash(k) @ cf.slash(a)
        assert np.allclose(anti, 0.0)

    def test_random_pair_identity(self, rng):
        for _ in range(200):
            p, q = random_four_vectors(rng, 2)
            anti = cf.slash(p) @ cf.slash(q) + cf.slash(q) @ cf.slash(p)
            expect = 2.0 * cf.mdot(p, q) * np.eye(4)
            assert np.max(np.abs(anti - expect)) < 1e-12 * max(1.0, abs(cf.mdot(p, q)))


class TestSpinor:
    def test_rest_frame(self):
        u = cf.free_spinor(np.array([M_E, 0.0, 0.0, 0.0]), 1)
        assert np.allclose(u, [1, 0, 0, 0])

    def test_normalization_high_energy(self):
        E = 1.0e3 * M_E
        p = np.array([E, 0.0, 0.0, np.sqrt(E ** 2 - M_E ** 2)])
        for r in (1, 2):
            u = cf.free_spinor(p, r)
            assert abs(cf.sandwich(cf.bar(u), np.eye(4), u) - 1.0) < 1e-12

    def test_dirac_equation_residual(self, rng):
        # direct matrix-vector residual, scaled by the matrix norm
        E = 1.0e3 * M_E
        p = np.array([E, 0.0, 0.0, np.sqrt(E ** 2 - M_E ** 2)])
        u = cf.free_spinor(p, 2)
        res = (cf.slash(p) - M_E * np.eye(4)) @ u
        assert np.max(np.abs(res)) < 1e-12 * E * np.max(np.abs(u))
        for _ in range(50):
            p = on_shell_momentum(rng)
            for r in (1, 2):
                u = cf.free_spinor(p, r)
                res = (cf.slash(p) - M_E * np.eye(4)) @ u
                assert np.max(np.abs(res)) < 1e-12

    def test_off_shell_rejected(self):
        with pytest.raises(ValueError):
            cf.free_spinor(np.array([2.0, 0.0, 0.0, 0.0]), 1)

    def test_spin_sum_projector(self, rng):
        for _ in range(50):
            p = on_shell_momentum(rng)
            total = np.zeros((4, 4), dtype=complex)
            for r in (1, 2):
                u = cf.free_spinor(p, r)
                total += np.outer(u, cf.bar(u))
            assert np.max(np.abs(total - cf.spin_sum_projector(p))) < 1e-12


class TestSandwich:
    def test_normalization(self, rng):
        p = on_shell_momentum(rng)
        u = cf.free_spinor(p, 1)
        assert abs(cf.sandwich(cf.bar(u), np.eye(4), u) - 1.0) < 1e-13

    def test_gamma0_expectation(self):
        # oracle: explicit contraction gives ubar gamma^0 u = E/m for p || x^3
        E = 7.0 * M_E
        p = np.array([E, 0.0, 0.0, np.sqrt(E ** 2 - M_E ** 2)])
        u = cf.free_spinor(p, 1)
        expected = (E + M_E) / (2 * M_E) * (1 + (E - M_E) / (E + M_E))
        assert abs(expected - E / M_E) < 1e-12
        assert abs(cf.sandwich(cf.bar(u), cf.gamma(0), u) - E / M_E) < 1e-12

    def test_linearity(self, rng):
        p = on_shell_momentum(rng)
        u = cf.free_spinor(p, 2)
        ub = cf.bar(u)
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        b = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        lhs = cf.sandwich(ub, a + b, u)
        rhs = cf.sandwich(ub, a, u) + cf.sandwich(ub, b, u)
        assert abs(lhs - rhs) < 1e-12 * max(1.0, abs(lhs))


class TestChiralBridge:
    """The light-front chiral internals agree with the Dirac-representation API."""

    def test_similarity_unitary(self):
        s = cf.DIRAC_TO_CHIRAL
        assert np.allclose(s @ s.conj().T, np.eye(4))

    def test_gamma0_maps(self):
        s = cf.DIRAC_TO_CHIRAL
        assert np.allclose(s @ cf.GAMMA0 @ s.conj().T, cf.GAMMA0_CHIRAL)

    def test_slash_maps(self, rng):
        s = cf.DIRAC_TO_CHIRAL
        for _ in range(20):
            v = rng.normal(size=4)
            lhs = cf.chiral_slash_lf(cf.lf_from_txyz(v))
            rhs = s @ cf.slash(v) @ s.conj().T
            assert np.max(np.abs(lhs - rhs)) < 1e-13

    def test_spinor_maps(self, rng):
        s = cf.DIRAC_TO_CHIRAL
        for _ in range(20):
            p = on_shell_momentum(rng)
            for r in (1, 2):
                lhs = cf.chiral_spinor_lf(cf.lf_from_txyz(p), r)
                rhs = s @ cf.free_spinor(p, r)
                assert np.max(np.abs(lhs - rhs)) < 1e-12

    def test_sandwich_invariant(self, rng):
        p = on_shell_momentum(rng)
        q = on_shell_momentum(rng)
        m = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        u1 = cf.free_spinor(p, 1)
        u2 = cf.free_spinor(q, 2)
        v_dirac = cf.sandwich(cf.bar(u2), m, u1)
        s = cf.DIRAC_TO_CHIRAL
        w1 = cf.chiral_spinor_lf(cf.lf_from_txyz(p), 1)
        w2 = cf.chiral_spinor_lf(cf.lf_from_txyz(q), 2)
        v_chiral = cf.chiral_bar(w2) @ (s @ m @ s.conj().T) @ w1
        assert abs(v_dirac - v_chiral) < 1e-12 * max(1.0, abs(v_dirac))

    def test_lf_dot_matches(self, rng):
        for _ in range(20):
            a, b = rng.normal(size=(2, 4))
            assert abs(cf.lf_dot(cf.lf_from_txyz(a), cf.lf_from_txyz(b))
                       - cf.mdot(a, b)) < 1e-13
