"""Muonium Lamb shift from the hydrogen one through the reduced-mass cube law.

Since the 2s shift scales as ``m_r**3`` at fixed cutoff, the ratio of the muonium
and hydrogen shifts involves only masses::

    dE_mu / dE_H = ((1 + m_e/M_p) / (1 + m_e/m_mu))**3

Nothing in this module reads a cutoff or a spectrum.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

from .errors import ConfigurationError, DomainError
from .units import MHZ, Measurement, PhysicalConstants, read_document, parse_key_values

REFERENCE_KEYS = {
    "hydrogen_shift_MHz": "hydrogen_shift",
    "hydrogen_sigma_MHz": "hydrogen_sigma",
    "muonium_obs_MHz": "muonium_obs",
    "muonium_obs_sigma_MHz": "muonium_obs_sigma",
    "competing_theory_MHz": "competing_theory",
}


def reduced_mass(m1: float, m2: float) -> float:
    if not (m1 > 0 and m2 > 0):
        raise DomainError(f"masses must be positive, got {m1!r}, {m2!r}")
    return m1 * m2 / (m1 + m2)


def ratio_factor(constants: PhysicalConstants) -> float:
    """``(m_r(mu) / m_r(H))**3``: multiply a hydrogen shift by this to get muonium."""
    return ((1.0 + constants.m_e / constants.M_p) / (1.0 + constants.m_e / constants.m_mu)) ** 3


def inverse_ratio_factor(constants: PhysicalConstants) -> float:
    """``dE_H / dE_mu = ((1 + m_e/m_mu) / (1 + m_e/M_p))**3``."""
    return ((1.0 + constants.m_e / constants.m_mu) / (1.0 + constants.m_e / constants.M_p)) ** 3


def predict_muonium(hydrogen_shift: Measurement, constants: PhysicalConstants) -> Measurement:
    """Scale a measured hydrogen shift (MHz) to muonium.

    Mass-ratio uncertainties (~1e-8 relative) are neglected; only the
    hydrogen sigma is propagated.
    """
    if hydrogen_shift.unit != MHZ:
        raise DomainError(f"hydrogen shift must be in MHz, got {hydrogen_shift.unit}")
    if not hydrogen_shift.value > 0:
        raise DomainError(f"hydrogen shift must be positive, got {hydrogen_shift.value!r}")
    return hydrogen_shift.scaled(ratio_factor(constants))


@dataclass(frozen=True)
class ReferenceValues:
    hydrogen_shift: float
    hydrogen_sigma: float
    muonium_obs: float
    muonium_obs_sigma: float
    competing_theory: float

    @property
    def hydrogen(self) -> Measurement:
        return Measurement(self.hydrogen_shift, self.hydrogen_sigma, MHZ)

    @property
    def muonium(self) -> Measurement:
        return Measurement(self.muonium_obs, self.muonium_obs_sigma, MHZ)

    @property
    def competing(self) -> Measurement:
        # quoted without an uncertainty
        return Measurement(self.competing_theory, 0.0, MHZ)


def load_reference_values(source=None) -> ReferenceValues:
    """Shipped reference values, optionally overlaid by a key-value document."""
    text = resources.files("lambkit.data").joinpath("reference_values.txt").read_text(encoding="utf-8")
    values = parse_key_values(text, REFERENCE_KEYS)
    if source is not None:
        values.update(parse_key_values(read_document(source), REFERENCE_KEYS))
    for key in ("hydrogen_sigma_MHz", "muonium_obs_sigma_MHz"):
        if values[key] < 0:
            raise ConfigurationError(f"{key}: must be >= 0")
    return ReferenceValues(**{REFERENCE_KEYS[k]: v for k, v in values.items()})


def pull(a: Measurement, b: Measurement) -> float:
    """``(a - b) / sqrt(sigma_a**2 + sigma_b**2)``."""
    if a.unit != b.unit:
        raise DomainError(f"unit mismatch: {a.unit} vs {b.unit}")
    combined = math.hypot(a.sigma, b.sigma)
    if combined == 0:
        if a.value == b.value:
            return 0.0
        raise DomainError("pull undefined: both sigmas are zero")
    return (a.value - b.value) / combined


@dataclass(frozen=True)
class ComparisonReport:
    predicted: Measurement
    observed: Measurement
    competing: Measurement
    pull_predicted: float
    pull_competing: float

    def to_dict(self) -> dict:
        return {
            "predicted_MHz": self.predicted.value,
            "predicted_sigma_MHz": self.predicted.sigma,
            "observed_MHz": self.observed.value,
            "observed_sigma_MHz": self.observed.sigma,
            "competing_MHz": self.competing.value,
            "competing_sigma_MHz": self.competing.sigma,
            "competing_theory_only": self.competing.sigma == 0,
            "pull_predicted": self.pull_predicted,
            "pull_competing": self.pull_competing,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "ComparisonReport":
        predicted = Measurement(data["predicted_MHz"], data["predicted_sigma_MHz"], MHZ)
        observed = Measurement(data["observed_MHz"], data["observed_sigma_MHz"], MHZ)
        competing = Measurement(data["competing_MHz"], data["competing_sigma_MHz"], MHZ)
        return cls(predicted, observed, competing, data["pull_predicted"], data["pull_competing"])


def compare(predicted: Measurement, reference: ReferenceValues | None = None) -> ComparisonReport:
    ref = reference or load_reference_values()
    observed, competing = ref.muonium, ref.competing
    return ComparisonReport(predicted, observed, competing,
                            pull(predicted, observed), pull(competing, observed))

