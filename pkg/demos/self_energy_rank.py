"""
Free-electron self-energy and mass renormalization
==================================================

The mode sum for a free electron grows linearly with the cutoff.  The mass
counter term removes it exactly, leaving only the logarithmic bound-state
remainder.
"""

# %%
import numpy as np

from lambkit.selfenergy import (ModeIntegralSpec, divergence_rank, free_self_energy_analytic,
                                free_self_energy_numeric, make_ledger)
from lambkit.units import load_constants

constants = load_constants()
p2 = 1e6  # eV^2
cutoffs = np.geomspace(1e-2, 1e2, 10) * constants.m_e

# %%
shifts = []
for lam in cutoffs:
    num = free_self_energy_numeric(p2, constants.m_e, ModeIntegralSpec(32, 12, lam), constants)
    ana = free_self_energy_analytic(p2, constants.m_e, lam, constants)
    shifts.append(num)
    print(f"cutoff {lam:12.4e} eV: numeric {num:+.6e}, analytic {ana:+.6e}")
print("divergence rank:", divergence_rank(cutoffs, shifts))

# %%
ledger = make_ledger(constants.m_e, constants.m_e, constants)
se = free_self_energy_analytic(p2, constants.m_e, constants.m_e, constants)
print("delta_m / m_e at cutoff m_e:", ledger.delta_m / constants.m_e)
print("self-energy + counter term:", se + ledger.counter_term(p2, mass=constants.m_e))
