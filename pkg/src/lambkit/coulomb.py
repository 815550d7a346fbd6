"""Static Coulomb sector for spherically symmetric charge densities.

Lengths are in reduced Bohr radii.  The potential of a density solves
``laplacian(phi) = -rho``::

    phi(r) = (1/4 pi) [ Q(r)/r + int_r^inf rho 4 pi r' dr' ],   Q(r) = int_0^r rho 4 pi r'^2 dr'

evaluated by the trapezoidal rule on the density's own grid, with the exact
point-charge tail ``q / (4 pi r)`` beyond the last grid point.  Charge factors
``e`` are left to the caller except in :func:`interaction_energy`.

The vacuum-polarization density from :func:`uehling_induced_density` is a
diagnostic only; nothing in the Lamb-shift code consumes it.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from .errors import DomainError
from .units import PhysicalConstants

# e^2/(4 pi) = 1 in atomic units with the rationalized charge convention
ATOMIC_E_SQUARED = 4.0 * math.pi


@dataclass(frozen=True, eq=False)
class RadialDensity:
    grid: np.ndarray
    values: np.ndarray
    induced: bool = False
    total_charge: float = float("nan")

    def __post_init__(self):
        grid = np.array(self.grid, dtype=float)
        values = np.array(self.values, dtype=float)
        if grid.ndim != 1 or grid.size == 0:
            raise DomainError("density grid is empty")
        if values.shape != grid.shape:
            raise DomainError("density values must match the grid")
        if grid[0] < 0 or np.any(np.diff(grid) <= 0):
            raise DomainError("density grid must be non-negative and strictly increasing")
        if not self.induced and np.any(values < 0):
            raise DomainError("density values must be >= 0")
        grid.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "total_charge", _charge(grid, values))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["r", "rho"])
        for r, rho in zip(self.grid, self.values):
            writer.writerow([f"{r:.17g}", f"{rho:.17g}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, induced: bool = False) -> "RadialDensity":
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        reader = csv.reader(lines)
        header = [h.strip() for h in next(reader, [])]
        if header != ["r", "rho"]:
            raise DomainError(f"density file must start with header 'r,rho', got {header}")
        data = np.array([[float(a), float(b)] for a, b in reader]).reshape(-1, 2)
        return cls(data[:, 0], data[:, 1], induced)


def _charge(grid, values) -> float:
    if grid.size == 1:
        return 0.0
    return float(trapezoid(4.0 * math.pi * values * grid**2, grid))


def _partial_integral(grid, integrand, cumulative, r):
    """Trapezoid integral of a linearly interpolated integrand from grid[0] to r."""
    i = np.clip(np.searchsorted(grid, r, side="right") - 1, 0, grid.size - 2)
    h = r - grid[i]
    slope = (integrand[i + 1] - integrand[i]) / (grid[i + 1] - grid[i])
    return cumulative[i] + h * (integrand[i] + 0.5 * slope * h)


def potential_from_density(rho: RadialDensity, r):
    """Potential of ``rho`` at radius (or radii) ``r``; no charge factor applied."""
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0):
        raise DomainError("radius must be >= 0")
    grid, values = rho.grid, rho.values
    if grid.size < 2:
        raise DomainError("density grid needs at least two points")
    inner_f = 4.0 * math.pi * values * grid**2
    outer_f = 4.0 * math.pi * values * grid
    inner_c = np.concatenate([[0.0], cumulative_trapezoid(inner_f, grid)])
    outer_c = np.concatenate([[0.0], cumulative_trapezoid(outer_f, grid)])
    total_outer = outer_c[-1]

    rc = np.clip(r_arr, grid[0], grid[-1])
    enclosed = np.where(r_arr <= grid[0], 0.0, _partial_integral(grid, inner_f, inner_c, rc))
    outside = total_outer - np.where(r_arr <= grid[0], 0.0, _partial_integral(grid, outer_f, outer_c, rc))
    with np.errstate(divide="ignore", invalid="ignore"):
        inside = np.where(r_arr > 0, enclosed / np.where(r_arr > 0, r_arr, 1.0), 0.0) + outside
        tail = rho.total_charge / np.where(r_arr > 0, r_arr, 1.0)
    phi = np.where(r_arr > grid[-1], tail, inside) / (4.0 * math.pi)
    return float(phi) if phi.ndim == 0 else phi


def _one_sided_energy(source: RadialDensity, target: RadialDensity) -> float:
    phi = potential_from_density(source, target.grid)
    return float(trapezoid(target.values * phi * 4.0 * math.pi * target.grid**2, target.grid))


def interaction_energy(rho_p: RadialDensity, rho_e: RadialDensity,
                       e_squared: float = ATOMIC_E_SQUARED) -> float:
    """``-e^2/(4 pi) double-integral rho_p(r') rho_e(r) / |r - r'|``.

    Both one-sided reductions (potential of one density integrated against
    the other) are computed on their natural grids and averaged, which keeps
    the discrete result exactly symmetric under swapping the arguments.  The
    default ``e_squared`` gives Hartree units.
    """
    for rho in (rho_p, rho_e):
        if rho.grid.size < 2:
            raise DomainError("density grid needs at least two points")
    pe = _one_sided_energy(rho_p, rho_e)
    ep = _one_sided_energy(rho_e, rho_p)
    return -e_squared * 0.5 * (pe + ep)


def radial_laplacian(grid: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Conservative 3-point stencil for ``(1/r^2) d/dr (r^2 df/dr)``.

    Cell faces sit midway between nodes.  A node at ``r = 0`` uses the
    symmetric limit ``3 f''(0)``; the outermost node has zero outward flux.
    """
    grid = np.asarray(grid, dtype=float)
    values = np.asarray(values, dtype=float)
    if grid.size < 3:
        raise DomainError("the Laplacian stencil needs at least 3 grid points")
    faces = 0.5 * (grid[1:] + grid[:-1])
    flux = faces**2 * np.diff(values) / np.diff(grid)
    flux = np.concatenate([[0.0 if grid[0] == 0 else grid[0] ** 2 * flux[0] / faces[0] ** 2], flux, [0.0]])
    lower = np.concatenate([[grid[0]], faces])
    upper = np.concatenate([faces, [grid[-1]]])
    volume = (upper**3 - lower**3) / 3.0
    return (flux[1:] - flux[:-1]) / volume


def uehling_coefficient(constants: PhysicalConstants, mass_ratio: float = 1.0) -> float:
    """``alpha / (15 pi m_e^2)`` in reduced Bohr radii squared.

    The electron Compton wavelength is ``alpha * m_r/m_e`` reduced Bohr radii;
    ``mass_ratio`` is ``m_r/m_e``.
    """
    compton = constants.alpha * mass_ratio
    return constants.alpha / (15.0 * math.pi) * compton**2


def uehling_induced_density(rho: RadialDensity, constants: PhysicalConstants,
                            mass_ratio: float = 1.0) -> RadialDensity:
    """``delta_rho = -(alpha / 15 pi m_e^2) laplacian(rho)``; values may be negative."""
    if rho.grid.size < 3:
        raise DomainError("the Uehling density needs at least 3 grid points")
    induced = -uehling_coefficient(constants, mass_ratio) * radial_laplacian(rho.grid, rho.values)
    return RadialDensity(rho.grid, induced, induced=True)
