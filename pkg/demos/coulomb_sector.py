"""
Potentials of spherical charge distributions
============================================

Compare the potential of a Gaussian nucleus with its closed form, then look
at the vacuum-polarization density it would induce.
"""

# %%
import math

import numpy as np
from scipy.special import erf

from lambkit.coulomb import (RadialDensity, interaction_energy, potential_from_density,
                             uehling_induced_density)
from lambkit.units import load_constants

constants = load_constants()
s = 0.7
grid = np.linspace(0.0, 12 * s, 20001)
rho = RadialDensity(grid, np.exp(-grid**2 / (2 * s * s)) / (2 * math.pi * s * s) ** 1.5)

# %%
for r in (0.01, 0.5, 2.0, 20.0):
    exact = erf(r / (math.sqrt(2) * s)) / (4 * math.pi * r)
    print(f"r = {r:5.2f}: phi = {potential_from_density(rho, r):.12e}  exact {exact:.12e}")

# %%
# energy of a hydrogen 1s electron in the field of this spread-out charge
egrid = np.linspace(0.0, 40.0, 40001)
electron = RadialDensity(egrid, np.exp(-2 * egrid) / math.pi)
print("interaction energy (Hartree):", interaction_energy(rho, electron))

# %%
induced = uehling_induced_density(rho, constants)
print("induced density at the origin:", induced.values[0])
print("induced net charge:           ", induced.total_charge)
