"""Second-order self-energy of a free electron and the mass counter-term.

Natural Heaviside-Lorentz units throughout: hbar = c = 1 and ``e**2 = 4 pi alpha``.
Masses, momenta, cutoffs and energies share one energy unit (eV in practice).
The photon energy is taken to dominate the electron recoil, so the energy
denominator of every mode is just ``k``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import DomainError
from .units import PhysicalConstants

# fixed, deliberately generic direction for the electron momentum
_P_DIRECTION = np.array([1.0, 2.0, 3.0]) / math.sqrt(14.0)


def e_squared(constants: PhysicalConstants) -> float:
    return 4.0 * math.pi * constants.alpha


@dataclass(frozen=True)
class ModeIntegralSpec:
    """Quadrature for the photon-mode sum.

    ``angular_points`` is the node count per angle: Gauss-Legendre in
    ``cos(theta)`` and as many uniform nodes in ``phi``.
    """

    k_points: int
    angular_points: int
    cutoff: float

    def __post_init__(self):
        if self.k_points < 2 or self.angular_points < 2:
            raise DomainError(f"k_points and angular_points must be >= 2, got "
                              f"{self.k_points}, {self.angular_points}")
        if not self.cutoff > 0:
            raise DomainError(f"cutoff must be positive, got {self.cutoff}")


def _direction_grid(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, wx = leggauss(n)
    phi = 2.0 * math.pi * np.arange(n) / n
    sin_t = np.sqrt(1.0 - x * x)
    dirs = np.stack([
        np.outer(sin_t, np.cos(phi)).ravel(),
        np.outer(sin_t, np.sin(phi)).ravel(),
        np.repeat(x, n),
    ], axis=1)
    weights = np.repeat(wx, n) * (2.0 * math.pi / n)
    return dirs, weights


def polarization_sum(p_vec: np.ndarray, k_hat: np.ndarray) -> np.ndarray:
    """``sum_lambda |eps(k, lambda) . p|**2 = p**2 - (k_hat . p)**2`` for each row of ``k_hat``."""
    kp = k_hat @ p_vec
    return p_vec @ p_vec - kp * kp


def free_self_energy_numeric(p_squared: float, m0: float, spec: ModeIntegralSpec,
                             constants: PhysicalConstants) -> float:
    """Direct quadrature of the free-electron mode sum.

    ``-(e/m0)**2 int d^3k/(2 pi)^3 (1/2k) sum_lambda |eps.p|**2 / k`` over
    ``|k| < cutoff``.
    """
    if p_squared < 0:
        raise DomainError(f"p_squared must be >= 0, got {p_squared}")
    if m0 == 0:
        raise DomainError("bare mass must be non-zero")
    if p_squared == 0:
        return 0.0
    p_vec = math.sqrt(p_squared) * _P_DIRECTION
    dirs, dir_w = _direction_grid(spec.angular_points)
    angular = dir_w @ polarization_sum(p_vec, dirs)

    xk, wk = leggauss(spec.k_points)
    k = 0.5 * spec.cutoff * (xk + 1.0)
    # d^3k = k^2 dk dOmega; the k^2 cancels the 1/(2k) * 1/k
    radial = 0.5 * spec.cutoff * np.sum(wk * k * k / (2.0 * k * k))

    return -(e_squared(constants) / m0**2) * radial * angular / (2.0 * math.pi) ** 3


def free_self_energy_analytic(p_squared: float, m0: float, cutoff: float,
                              constants: PhysicalConstants) -> float:
    """``-(1/6 pi^2) cutoff (e/m0)^2 p^2``, i.e. ``-(2 alpha cutoff / 3 pi) p^2 / m0^2``."""
    if p_squared < 0:
        raise DomainError(f"p_squared must be >= 0, got {p_squared}")
    if not cutoff > 0:
        raise DomainError(f"cutoff must be positive, got {cutoff}")
    if m0 == 0:
        raise DomainError("bare mass must be non-zero")
    return -cutoff * e_squared(constants) * p_squared / (6.0 * math.pi**2 * m0**2)


@dataclass(frozen=True)
class RenormalizationLedger:
    m0: float
    delta_m: float
    m_e: float
    cutoff: float

    def counter_term(self, p_squared: float, mass: float | None = None) -> float:
        """``+delta_m p^2 / (2 m^2)``; ``mass`` defaults to the renormalized mass."""
        m = self.m_e if mass is None else mass
        return self.delta_m * p_squared / (2.0 * m * m)


def mass_shift(cutoff: float, constants: PhysicalConstants) -> float:
    """``delta_m = cutoff e^2 / (3 pi^2) = 4 alpha cutoff / (3 pi)``."""
    return cutoff * e_squared(constants) / (3.0 * math.pi**2)


def make_ledger(m0: float, cutoff: float, constants: PhysicalConstants) -> RenormalizationLedger:
    if not m0 > 0:
        raise DomainError(f"bare mass must be positive, got {m0}")
    if not cutoff > 0:
        raise DomainError(f"cutoff must be positive, got {cutoff}")
    dm = mass_shift(cutoff, constants)
    return RenormalizationLedger(m0=m0, delta_m=dm, m_e=m0 + dm, cutoff=cutoff)


def divergence_rank(cutoffs, shifts) -> float:
    """Least-squares slope of ``log|shift|`` against ``log(cutoff)``."""
    x = np.log(np.asarray(cutoffs, dtype=float))
    y = np.log(np.abs(np.asarray(shifts, dtype=float)))
    if x.size < 2:
        raise DomainError("need at least two cutoffs to fit a divergence rank")
    return float(np.polyfit(x, y, 1)[0])
