"""Non-relativistic Lamb shift: mode sums, pseudostate spectra and the muonium ratio."""

from .errors import ConfigurationError, ConvergenceError, DomainError, LambkitError
from .units import EnergyQuantity, Measurement, PhysicalConstants, convert, load_constants
from .hydrogenic import (AtomSpec, BasisSpec, PseudostateSpectrum, build_pseudostates,
                         make_atom, sum_rules)
from .lambshift import (CutoffSweep, ShiftParams, average_excitation_energy, invert_cutoff,
                        shift_closed_form, shift_numeric, sweep_cutoff)
from .ratio import ComparisonReport, compare, load_reference_values, predict_muonium, ratio_factor
from .coulomb import RadialDensity, interaction_energy, potential_from_density, uehling_induced_density
from .selfenergy import ModeIntegralSpec, free_self_energy_analytic, free_self_energy_numeric, make_ledger

__version__ = "0.1.0"
