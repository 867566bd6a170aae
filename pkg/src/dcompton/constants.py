"""Physical constants. Internal unit system: energies in MeV, hbar = c = 1.

Rates computed internally are dimensionless per MeV per sr^2; multiplying by
MEV_TO_PER_SEC converts them to s^-1 sr^-2 MeV^-1 at the output boundary.
"""

import numpy as np

M_E = 0.510998946                       # electron mass [MeV]
ALPHA_EM = 1.0 / 137.035999             # fine-structure constant
ABS_E = float(np.sqrt(4.0 * np.pi * ALPHA_EM))   # |e|, Gaussian natural units
E_CHARGE = -ABS_E                       # electron charge, e = -|e|

MEV_TO_PER_SEC = 1.519268e21            # 1 MeV of rate in s^-1
I_CRIT_W_CM2 = 2.3e29                   # critical intensity [W/cm^2]
EV_TO_MEV = 1.0e-6
