"""
Pseudostate spectrum of the 2s state
====================================

Diagonalize the p-wave Coulomb problem in a finite basis, project the 2s
momentum vector onto it, and check completeness with two sum rules.
"""

# %%
import math

from lambkit.hydrogenic import BasisSpec, build_pseudostates, sum_rules
from lambkit.lambshift import average_excitation_energy

spec = build_pseudostates(BasisSpec(100, 0.5))
closure, weighted = sum_rules(spec)
print(f"sum f_n        = {closure:.15f}   (target 1/4)")
print(f"sum dE_n f_n   = {weighted:.15f}   (target 2 pi |psi(0)|^2 = 1/4)")

# %%
# the low pseudostates are the genuine np bound states
for n, de in enumerate(spec.delta_e[1:5], start=3):
    print(f"{n}p: dE = {de:.12f}  exact {1 / 8 - 1 / (2 * n * n):.12f}")

# %%
# the log-weighted mean excitation energy barely moves with the basis
for size in (40, 80, 100, 160):
    avg = average_excitation_energy(build_pseudostates(BasisSpec(size, 0.5)))
    print(f"N = {size:3d}: <E> = {avg.value:.5f} Ry,  ln <E> = {math.log(avg.value):.6f}")
