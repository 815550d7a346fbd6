"""
How the 2s shift depends on the photon cutoff
=============================================

The spectral sum grows like ln(cutoff) once the cutoff is far above the
atomic excitations.  The closed form uses that asymptote.
"""

# %%
from lambkit.hydrogenic import BasisSpec, build_pseudostates, hydrogen
from lambkit.lambshift import (PAPER_LITERAL, RECONCILED, ShiftParams, affine_log_fit,
                               average_excitation_energy, closed_form_prefactor, invert_cutoff,
                               shift_closed_form, shift_numeric, sweep_cutoff)
from lambkit.ratio import load_reference_values
from lambkit.units import EV, EnergyQuantity, load_constants

constants = load_constants()
h = hydrogen(constants)
spec = build_pseudostates(BasisSpec(100, 0.5))
avg = average_excitation_energy(spec)

# %%
for factor in (0.01, 1.0, 100.0, 1e4):
    cut = EnergyQuantity(factor * constants.m_e, EV)
    num = shift_numeric(ShiftParams(h, cut, spec), constants).value
    closed = shift_closed_form(h, cut, avg, RECONCILED, constants).value
    print(f"cutoff {factor:8g} m_e: numeric {num:10.3f} MHz, closed form {closed:10.3f} MHz, "
          f"diff {num / closed - 1:+.3%}")

# %%
# the printed coefficient is 4 pi times larger
cut = EnergyQuantity(constants.m_e, EV)
print("paper-literal closed form at m_e:", shift_closed_form(h, cut, avg, PAPER_LITERAL, constants))

# %%
sweep = sweep_cutoff(h, spec, EnergyQuantity(10 * constants.m_e, EV),
                     EnergyQuantity(1000 * constants.m_e, EV), 10, constants)
slope, _, resid = affine_log_fit(sweep.cutoffs_ev, sweep.shifts_mhz)
print(f"slope {slope:.4f} MHz per e-fold (asymptote {closed_form_prefactor(h, constants):.4f}), "
      f"residual {resid:.1e} of range")

# %%
lam = invert_cutoff(load_reference_values().hydrogen, h, avg, RECONCILED, constants)
print(f"cutoff reproducing the hydrogen measurement: {lam.value / constants.m_e:.4f} "
      f"± {lam.sigma / constants.m_e:.1e} m_e")
