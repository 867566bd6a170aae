import numpy as np
import pytest

from dcompton.constants import M_E
from dcompton.kinematics import (ElectronConfig, LaserConfig, PhotonDirection)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def fig_laser():
    """Laser parameters used throughout the reference figures."""
    return LaserConfig(omega_ev=2.5, xi=1.0)


@pytest.fixture
def fig_electron():
    return ElectronConfig(energy_mev=1.0e3 * M_E)


def random_direction(rng, theta_max=2.0e-3):
    return PhotonDirection(theta=float(rng.uniform(1e-5, theta_max)),
                           psi=float(rng.uniform(0.0, 2.0 * np.pi)))


def random_safe_point(rng, theta_b_max=2.0e-3, theta_c_max=2.5e-3):
    """Random kinematic point inside the regularization-independent window."""
    return dict(
        omega_b=float(rng.uniform(0.05, 1.0)),
        dir_b=random_direction(rng, theta_b_max),
        dir_c=random_direction(rng, theta_c_max),
    )


@pytest.fixture
def safe_point(rng):
    return lambda **kw: random_safe_point(rng, **kw)
