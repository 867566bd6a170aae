"""Two-photon emission by a relativistic electron in an intense plane-wave
laser field: polarization-resolved rates, the perturbative double-Compton
reference, and photon-pair concurrence."""

__version__ = "0.1.0"

from .amplitude import (Regularization, ReducedAmplitude, ResonancePole,
                        ScatterConfig, amplitude_tensor, pdcs_amplitude,
                        reduced_amplitude, regularization_factor)
from .backend import active_backend
from .kinematics import (ChannelClosed, ElectronConfig, LaserConfig,
                         PhotonDirection, PolarizationBasis, arctan_two, chi,
                         dressed_momentum, omega_c_ceiling, omega_c_exact,
                         polarization_basis, resonance_omega_b_type1,
                         resonance_omega_b_type2)
from .observables import (ConcurrenceResult, DifferentialRatePoint,
                          IntegratedRateResult, IntegrationBounds,
                          PolarizationDensityMatrix, QuadratureOrders,
                          ZeroAmplitudeError, concurrence, density_matrix,
                          density_matrix_pdcs, differential_rate,
                          differential_rate_pdcs, integrated_rate,
                          power_law_exponent)

__all__ = [name for name in dir() if not name.startswith("_")]
