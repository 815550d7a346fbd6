"""The 2s1/2 Lamb shift as a cutoff-regularized sum over p-wave pseudostates.

After the mass counter-term is combined with the bound-state self-energy, every
intermediate state contributes ::

    f_n * int_0^cutoff dk dE_n / (dE_n + k) = f_n * dE_n * ln(1 + cutoff / dE_n)

and the shift is ``(2 alpha / 3 pi m_e^2)`` times the sum of these.  Restoring
units from reduced atomic units gives the overall factor
``(2 alpha / 3 pi) (alpha m_r / m_e)^2 * m_r alpha^2``.

When the cutoff dominates, the energy-weighted sum rule ``sum dE_n f_n = 1/4``
turns the sum into ``(m_r^3 alpha^5 / 6 pi m_e^2) ln(cutoff / <E>)``, with
``<E>`` the log-weighted mean excitation energy.  The printed closed form
carries the coefficient ``2 m_r^3 alpha^5 / 3 m_e^2`` instead, exactly
``4 pi`` larger.  Both are offered as ``prefactor_mode``:
``"reconciled"`` (default) and ``"paper_literal"``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .hydrogenic import AtomSpec, PseudostateSpectrum
from .units import (EV, MHZ, RYDBERG_REDUCED, EnergyQuantity,
                    Measurement, PhysicalConstants, convert)

RECONCILED = "reconciled"
PAPER_LITERAL = "paper_literal"
MODES = (RECONCILED, PAPER_LITERAL)
MODE_RATIO = 4.0 * math.pi


def _mode_factor(mode: str) -> float:
    if mode == RECONCILED:
        return 1.0
    if mode == PAPER_LITERAL:
        return MODE_RATIO
    raise DomainError(f"unknown prefactor mode {mode!r}; expected one of {', '.join(MODES)}")


def state_k_integral(delta_e, cutoff):
    """``int_0^cutoff dk delta_e / (delta_e + k) = delta_e ln(1 + cutoff/delta_e)``.

    Exactly zero at ``delta_e = 0``.  Accepts scalars or arrays.
    """
    if not np.all(np.asarray(cutoff) > 0):
        raise DomainError("cutoff must be positive")
    de = np.asarray(delta_e, dtype=float)
    if np.any(de < 0):
        raise DomainError("excitation energy must be >= 0")
    safe = np.where(de > 0, de, 1.0)
    out = np.where(de > 0, de * np.log1p(cutoff / safe), 0.0)
    return float(out) if out.ndim == 0 else out


def _au_energy(atom: AtomSpec, constants: PhysicalConstants) -> float:
    """Reduced Hartree ``m_r alpha^2`` in eV."""
    return atom.reduced_mass * constants.alpha**2


def _to_ev(q: EnergyQuantity, atom: AtomSpec, constants: PhysicalConstants) -> float:
    return convert(q, EV, constants, atom.reduced_mass).value


def _ev_to_mhz(value_ev: float, constants: PhysicalConstants) -> float:
    return value_ev / (constants.planck_h * 1e6)


def spectral_prefactor(atom: AtomSpec, constants: PhysicalConstants,
                       mode: str = RECONCILED) -> float:
    """Factor (MHz) multiplying the reduced-a.u. sum ``sum f_n dE_n ln(1 + cutoff/dE_n)``."""
    a = constants.alpha
    coupling = (2.0 * a / (3.0 * math.pi)) * (a * atom.reduced_mass / constants.m_e) ** 2
    return _mode_factor(mode) * _ev_to_mhz(coupling * _au_energy(atom, constants), constants)


def closed_form_prefactor(atom: AtomSpec, constants: PhysicalConstants,
                          mode: str = RECONCILED) -> float:
    """Shift per unit of ``ln(cutoff/<E>)`` in MHz: ``m_r^3 alpha^5 / (6 pi m_e^2)`` (reconciled)."""
    mr = atom.reduced_mass
    value_ev = mr**3 * constants.alpha**5 / (6.0 * math.pi * constants.m_e**2)
    return _mode_factor(mode) * _ev_to_mhz(value_ev, constants)


def average_excitation_energy(spectrum: PseudostateSpectrum) -> EnergyQuantity:
    """Log-weighted mean ``ln<E> = sum w_n ln dE_n / sum w_n`` with ``w_n = dE_n f_n``.

    Returned in reduced Rydbergs.
    """
    weights = spectrum.excitation_weights
    total = weights.sum()
    if not total > 0:
        raise DomainError("spectrum carries no excitation weight")
    mask = weights > 0
    log_mean = np.sum(weights[mask] * np.log(spectrum.delta_e[mask])) / total
    # one reduced Hartree is two reduced Rydbergs
    return EnergyQuantity(2.0 * math.exp(log_mean), RYDBERG_REDUCED)


@dataclass(frozen=True)
class ShiftParams:
    atom: AtomSpec
    cutoff: EnergyQuantity
    spectrum: PseudostateSpectrum
    prefactor_mode: str = RECONCILED

    def __post_init__(self):
        _mode_factor(self.prefactor_mode)
        if not self.cutoff.value > 0:
            raise DomainError(f"cutoff must be positive, got {self.cutoff}")

    def cutoff_au(self, constants: PhysicalConstants) -> float:
        return _to_ev(self.cutoff, self.atom, constants) / _au_energy(self.atom, constants)

    def validate(self, constants: PhysicalConstants) -> None:
        """Require the cutoff to lie above the mean excitation energy.

        A spectrum without excitation weight has no mean energy; its shift is
        zero at every cutoff and nothing is checked.
        """
        lam = self.cutoff_au(constants)
        if not self.spectrum.excitation_weights.sum() > 0:
            return
        avg = average_excitation_energy(self.spectrum).value / 2.0
        if not lam > avg:
            raise DomainError(
                f"cutoff {self.cutoff} lies below the mean excitation energy "
                f"({avg * _au_energy(self.atom, constants):.6g} eV); the spectral sum is "
                f"only meaningful when the cutoff dominates")


def spectral_sum(spectrum: PseudostateSpectrum, cutoff_au: float) -> float:
    """``sum f_n dE_n ln(1 + cutoff/dE_n)`` in reduced a.u.; the degenerate channel adds nothing."""
    de = np.where(np.abs(spectrum.delta_e) < 1e-12, 0.0, spectrum.delta_e)
    return float(np.sum(spectrum.strength * state_k_integral(de, cutoff_au)))


def shift_numeric(params: ShiftParams, constants: PhysicalConstants) -> EnergyQuantity:
    params.validate(constants)
    total = spectral_sum(params.spectrum, params.cutoff_au(constants))
    return EnergyQuantity(spectral_prefactor(params.atom, constants, params.prefactor_mode) * total, MHZ)


def shift_closed_form(atom: AtomSpec, cutoff: EnergyQuantity, avg_e: EnergyQuantity,
                      mode: str, constants: PhysicalConstants) -> EnergyQuantity:
    lam = _to_ev(cutoff, atom, constants)
    avg = _to_ev(avg_e, atom, constants)
    if not avg > 0:
        raise DomainError(f"mean excitation energy must be positive, got {avg_e}")
    if lam < avg:
        raise DomainError(f"cutoff {cutoff} must not lie below the mean excitation energy {avg_e}")
    return EnergyQuantity(closed_form_prefactor(atom, constants, mode) * math.log(lam / avg), MHZ)


def invert_cutoff(observed: Measurement, atom: AtomSpec, avg_e: EnergyQuantity, mode: str,
                  constants: PhysicalConstants) -> Measurement:
    """Cutoff (eV) that makes the closed form reproduce ``observed``."""
    shift = convert(observed, MHZ, constants, atom.reduced_mass)
    if not shift.value > 0:
        raise DomainError(f"observed shift must be positive, got {observed}")
    pref = closed_form_prefactor(atom, constants, mode)
    avg = _to_ev(avg_e, atom, constants)
    lam = avg * math.exp(shift.value / pref)
    return Measurement(lam, lam * shift.sigma / pref, EV)


@dataclass(frozen=True)
class CutoffSweep:
    cutoffs_ev: np.ndarray
    shifts_mhz: np.ndarray
    mode: str = RECONCILED
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        lam = np.array(self.cutoffs_ev, dtype=float)
        shift = np.array(self.shifts_mhz, dtype=float)
        if lam.shape != shift.shape or lam.ndim != 1:
            raise DomainError("sweep columns must be 1-d and of equal length")
        if np.any(np.diff(lam) <= 0):
            raise DomainError("sweep cutoffs must be strictly increasing")
        if np.any(np.diff(shift) <= 0):
            raise DomainError("sweep shifts must be strictly increasing")
        lam.setflags(write=False)
        shift.setflags(write=False)
        object.__setattr__(self, "cutoffs_ev", lam)
        object.__setattr__(self, "shifts_mhz", shift)

    @property
    def rows(self) -> list[tuple[float, float]]:
        return list(zip(self.cutoffs_ev.tolist(), self.shifts_mhz.tolist()))

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# mode = {self.mode}\n")
        for key, value in self.metadata.items():
            buf.write(f"# {key} = {value}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["lambda_eV", "shift_MHz"])
        for lam, shift in self.rows:
            writer.writerow([f"{lam:.17g}", f"{shift:.17g}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "CutoffSweep":
        meta = {}
        body = []
        for line in text.splitlines():
            if line.startswith("#"):
                key, _, value = line[1:].partition("=")
                meta[key.strip()] = value.strip()
            elif line.strip():
                body.append(line)
        reader = csv.reader(body)
        header = next(reader)
        if header != ["lambda_eV", "shift_MHz"]:
            raise DomainError(f"unexpected sweep header {header}")
        rows = np.array([[float(a), float(b)] for a, b in reader]).reshape(-1, 2)
        mode = meta.pop("mode", RECONCILED)
        return cls(rows[:, 0], rows[:, 1], mode, meta)


def sweep_cutoff(atom: AtomSpec, spectrum: PseudostateSpectrum, lo: EnergyQuantity,
                 hi: EnergyQuantity, points: int, constants: PhysicalConstants, *,
                 log_spacing: bool = True, mode: str = RECONCILED) -> CutoffSweep:
    lo_ev, hi_ev = _to_ev(lo, atom, constants), _to_ev(hi, atom, constants)
    if points < 2:
        raise DomainError(f"a sweep needs at least 2 points, got {points}")
    if not 0 < lo_ev < hi_ev:
        raise DomainError(f"sweep range must satisfy 0 < lo < hi, got {lo} .. {hi}")
    avg = average_excitation_energy(spectrum)
    ShiftParams(atom, EnergyQuantity(lo_ev, EV), spectrum, mode).validate(constants)
    grid = np.geomspace(lo_ev, hi_ev, points) if log_spacing else np.linspace(lo_ev, hi_ev, points)
    shifts = [shift_numeric(ShiftParams(atom, EnergyQuantity(lam, EV), spectrum, mode), constants).value
              for lam in grid]
    meta = {"atom": atom.label, "N": spectrum.basis.size, "beta": spectrum.basis.scale,
            "mean_excitation_Ry": f"{avg.value:.17g}"}
    return CutoffSweep(grid, np.array(shifts), mode, meta)


def affine_log_fit(cutoffs, shifts) -> tuple[float, float, float]:
    """Fit ``shift = a ln(cutoff) + b``; returns ``(a, b, max|residual| / range)``."""
    x = np.log(np.asarray(cutoffs, dtype=float))
    y = np.asarray(shifts, dtype=float)
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    return float(slope), float(intercept), float(np.max(np.abs(resid)) / (y.max() - y.min()))


def log_correction(atom_a: AtomSpec, atom_b: AtomSpec, cutoff: EnergyQuantity,
                   avg_e: EnergyQuantity, constants: PhysicalConstants) -> float:
    """Relative departure of the closed-form ratio a/b from ``(m_r,a / m_r,b)^3``.

    ``avg_e`` is in reduced Rydbergs, so its eV value differs between atoms
    while the cutoff (in eV) is shared.
    """
    sa = shift_closed_form(atom_a, cutoff, avg_e, RECONCILED, constants).value
    sb = shift_closed_form(atom_b, cutoff, avg_e, RECONCILED, constants).value
    return (sa / sb) / (atom_a.reduced_mass / atom_b.reduced_mass) ** 3 - 1.0
