"""Physical constants, energy units and uncertainty-carrying scalars.

Energies inside the spectral code are kept in reduced-mass atomic units
(multiples of ``m_r * alpha**2``); everything crossing a module boundary is an
:class:`EnergyQuantity` with an explicit unit tag.  The four supported units are

``eV``
    electron-volts.
``MHz``
    frequency equivalent, ``E = h * nu``.
``rydberg_reduced``
    the Rydberg energy of a two-body system, ``Ry_inf * m_r / m_e``.
``atomic_unit_reduced``
    twice the reduced Rydberg (the reduced Hartree).

The two reduced units need the reduced mass of the system (in eV) to be
converted.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, fields, replace
from importlib import resources
from typing import Callable, Mapping

from .errors import ConfigurationError, DomainError

EV = "eV"
MHZ = "MHz"
RYDBERG_REDUCED = "rydberg_reduced"
ATOMIC_UNIT_REDUCED = "atomic_unit_reduced"
UNITS = (EV, MHZ, RYDBERG_REDUCED, ATOMIC_UNIT_REDUCED)

# file key -> dataclass field
CONSTANT_KEYS = {
    "alpha": "alpha",
    "m_e_eV": "m_e",
    "m_mu_eV": "m_mu",
    "M_p_eV": "M_p",
    "planck_h_eV_s": "planck_h",
    "rydberg_inf_eV": "rydberg_inf",
}

RYDBERG_CONSISTENCY_RTOL = 1e-6


@dataclass(frozen=True)
class PhysicalConstants:
    """The pinned constant set.  Masses are rest energies in eV."""

    alpha: float
    m_e: float
    m_mu: float
    M_p: float
    planck_h: float
    rydberg_inf: float

    def __post_init__(self):
        key_of = {v: k for k, v in CONSTANT_KEYS.items()}
        for f in fields(self):
            value = getattr(self, f.name)
            if not (isinstance(value, (int, float)) and math.isfinite(value)):
                raise ConfigurationError(f"{key_of[f.name]}: not a finite number ({value!r})")
            if value <= 0:
                raise ConfigurationError(f"{key_of[f.name]}: must be positive, got {value!r}")
        if not self.m_e < self.m_mu:
            raise ConfigurationError("m_mu_eV: must exceed m_e_eV")
        # m_mu == M_p is allowed so that degenerate test sets can be built
        if not self.m_mu <= self.M_p:
            raise ConfigurationError("M_p_eV: must not be smaller than m_mu_eV")
        expected = 0.5 * self.alpha**2 * self.m_e
        if abs(self.rydberg_inf - expected) > RYDBERG_CONSISTENCY_RTOL * expected:
            raise ConfigurationError(
                f"rydberg_inf_eV: {self.rydberg_inf!r} inconsistent with alpha**2 * m_e / 2 = {expected!r}"
            )

    def as_dict(self) -> dict[str, float]:
        """Constants keyed by their file names."""
        return {key: getattr(self, name) for key, name in CONSTANT_KEYS.items()}

    @property
    def electron_to_proton(self) -> float:
        return self.m_e / self.M_p

    @property
    def electron_to_muon(self) -> float:
        return self.m_e / self.m_mu


def parse_key_values(text: str, allowed: Mapping[str, str] | None = None) -> dict[str, float]:
    """Parse ``key = value`` lines; ``#`` starts a comment line."""
    out: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = (part.strip() for part in line.partition("="))
        if allowed is not None and key not in allowed:
            raise ConfigurationError(f"{key}: unknown key")
        if key in out:
            raise ConfigurationError(f"{key}: given twice")
        try:
            out[key] = float(value)
        except ValueError:
            raise ConfigurationError(f"{key}: not a decimal number ({value!r})") from None
    return out


def read_document(source) -> str:
    """Text of ``source``: a path to a file, or the document text itself."""
    if isinstance(source, (str, os.PathLike)) and os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    if isinstance(source, str) and "=" in source:
        return source
    raise ConfigurationError(f"cannot read document {source!r}")


def default_constants_text() -> str:
    return resources.files("lambkit.data").joinpath("constants.txt").read_text(encoding="utf-8")


def load_constants(source=None, *, overlay: bool = True) -> PhysicalConstants:
    """Load the constant set.

    ``source`` is a path or the text of a key-value document.  With
    ``overlay=True`` (default) keys absent from the document keep their shipped
    values; with ``overlay=False`` the document must carry all six keys.
    """
    values = parse_key_values(default_constants_text(), CONSTANT_KEYS)
    if source is not None:
        given = parse_key_values(read_document(source), CONSTANT_KEYS)
        if not overlay:
            missing = [k for k in CONSTANT_KEYS if k not in given]
            if missing:
                raise ConfigurationError(f"{missing[0]}: missing key")
        values.update(given)
    missing = [k for k in CONSTANT_KEYS if k not in values]
    if missing:
        raise ConfigurationError(f"{missing[0]}: missing key")
    return PhysicalConstants(**{CONSTANT_KEYS[k]: v for k, v in values.items()})


def _check_unit(unit: str) -> str:
    if unit not in UNITS:
        raise DomainError(f"unknown energy unit {unit!r}; expected one of {', '.join(UNITS)}")
    return unit


@dataclass(frozen=True)
class EnergyQuantity:
    value: float
    unit: str

    def __post_init__(self):
        _check_unit(self.unit)
        object.__setattr__(self, "value", float(self.value))

    def _same_unit(self, other: "EnergyQuantity") -> None:
        if not isinstance(other, EnergyQuantity):
            raise TypeError(f"cannot combine EnergyQuantity with {type(other).__name__}")
        if other.unit != self.unit:
            raise DomainError(f"unit mismatch: {self.unit} vs {other.unit}")

    def __add__(self, other):
        self._same_unit(other)
        return EnergyQuantity(self.value + other.value, self.unit)

    def __sub__(self, other):
        self._same_unit(other)
        return EnergyQuantity(self.value - other.value, self.unit)

    def __neg__(self):
        return EnergyQuantity(-self.value, self.unit)

    def __mul__(self, factor: float):
        if isinstance(factor, EnergyQuantity):
            raise TypeError("product of two energies is not an energy")
        return EnergyQuantity(self.value * factor, self.unit)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, EnergyQuantity):
            self._same_unit(other)
            return self.value / other.value
        return EnergyQuantity(self.value / other, self.unit)

    def __str__(self):
        return f"{self.value:.6g} {self.unit}"


@dataclass(frozen=True)
class Measurement:
    """A value with a one-sigma Gaussian uncertainty."""

    value: float
    sigma: float
    unit: str

    def __post_init__(self):
        _check_unit(self.unit)
        object.__setattr__(self, "value", float(self.value))
        object.__setattr__(self, "sigma", float(self.sigma))
        if not self.sigma >= 0:
            raise DomainError(f"sigma must be >= 0, got {self.sigma!r}")

    @property
    def quantity(self) -> EnergyQuantity:
        return EnergyQuantity(self.value, self.unit)

    def scaled(self, factor: float) -> "Measurement":
        return Measurement(self.value * factor, self.sigma * abs(factor), self.unit)

    def propagate(self, func: Callable[[float], float], derivative: Callable[[float], float],
                  unit: str | None = None) -> "Measurement":
        """First-order (linearized) propagation through ``func``."""
        return Measurement(func(self.value), abs(derivative(self.value)) * self.sigma,
                           self.unit if unit is None else unit)

    def __str__(self):
        return f"{self.value:.6g} ± {self.sigma:.2g} {self.unit}"


def _ev_per_unit(unit: str, constants: PhysicalConstants, reduced_mass: float | None) -> float:
    if unit == EV:
        return 1.0
    if unit == MHZ:
        return constants.planck_h * 1e6
    if reduced_mass is None:
        raise DomainError(f"converting {unit} needs the reduced mass of the system")
    if reduced_mass <= 0:
        raise DomainError(f"reduced mass must be positive, got {reduced_mass!r}")
    rydberg = constants.rydberg_inf * reduced_mass / constants.m_e
    return rydberg if unit == RYDBERG_REDUCED else 2.0 * rydberg


def convert(q, target_unit: str, constants: PhysicalConstants,
            reduced_mass: float | None = None):
    """Convert an :class:`EnergyQuantity` or :class:`Measurement` to ``target_unit``.

    ``reduced_mass`` (eV) is required whenever a reduced unit is involved.
    """
    _check_unit(target_unit)
    if q.unit == target_unit:
        return q
    factor = (_ev_per_unit(q.unit, constants, reduced_mass)
              / _ev_per_unit(target_unit, constants, reduced_mass))
    if isinstance(q, Measurement):
        return replace(q, value=q.value * factor, sigma=q.sigma * factor, unit=target_unit)
    return EnergyQuantity(q.value * factor, target_unit)
