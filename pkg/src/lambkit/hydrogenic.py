"""Reduced-mass hydrogen: bound levels and a pseudostate picture of the p-wave.

The momentum operator acting on an s state only reaches p states, so the sum
over intermediate ``(n, l)`` states collapses to the ``l = 1`` channel.  That
channel (bound states and continuum) is represented by the eigenvectors of
the radial Coulomb Hamiltonian restricted to a finite basis.  All quantities
here are in reduced-mass atomic units: lengths in ``1/(m_r alpha)``, energies
in ``m_r alpha**2``.

Basis
-----
With ``t = sqrt(2 beta r)`` the radial functions are ::

    u_i(r) = sqrt(beta) * t**2 * exp(-t**2 / 2) * p_i(t)

where ``p_i`` are orthonormal polynomials for the weight ``t**5 exp(-t**2)`` on
``[0, inf)``, so that ``<u_i|u_j> = delta_ij``.  The damping is ``exp(-beta r)``.
Polynomials in ``sqrt(r)`` resolve radii down to ``~1/(beta N**3)``, which puts the
highest pseudostates far above any photon cutoff of interest.  A basis of
polynomials in ``r`` alone stops near ``beta**2 N**2`` and leaves the log-weighted
excitation energy several percent short even at ``N = 160``.  For
``beta = 1/2`` the span contains ``p|2s>`` and ``r|2s>`` exactly.

Matrix elements use composite Gauss-Legendre quadrature in ``t``; the
orthonormal polynomials come from a Lanczos run on the same nodes.  Because
the spectrum spans ~10 decades, ``H`` is diagonalized through the shifted
inverse ``S c = mu (H + s S) c`` so that low-lying levels keep full
absolute precision.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import linalg
from scipy.special import gammaln

from .errors import ConvergenceError, DomainError
from .units import EV, EnergyQuantity, PhysicalConstants

E_2S = -0.125
ZERO_EXCITATION = 1e-12
NEGATIVE_TOLERANCE = 1e-10

VELOCITY = "velocity"
LENGTH = "length"

_WEIGHT_POWER = 5  # p_i orthonormal for t**5 exp(-t**2)
_PANEL_ORDER = 20
_PANEL_WIDTH = 0.1
_SHIFT = 1.0  # H + _SHIFT is positive definite (E >= -1/2)


@dataclass(frozen=True)
class AtomSpec:
    """A two-body Coulomb system; masses are rest energies in eV."""

    orbiter_mass: float
    nucleus_mass: float
    label: str = ""

    def __post_init__(self):
        if not (self.orbiter_mass > 0 and self.nucleus_mass > 0):
            raise DomainError(f"{self.label or 'atom'}: masses must be positive")

    @property
    def reduced_mass(self) -> float:
        return self.orbiter_mass / (1.0 + self.orbiter_mass / self.nucleus_mass)


def hydrogen(constants: PhysicalConstants) -> AtomSpec:
    return AtomSpec(constants.m_e, constants.M_p, "hydrogen")


def muonium(constants: PhysicalConstants) -> AtomSpec:
    return AtomSpec(constants.m_e, constants.m_mu, "muonium")


def antihydrogen(constants: PhysicalConstants) -> AtomSpec:
    # positron around an antiproton: same masses as hydrogen
    return AtomSpec(constants.m_e, constants.M_p, "antihydrogen")


ATOMS = {"hydrogen": hydrogen, "muonium": muonium, "antihydrogen": antihydrogen}


def make_atom(label: str, constants: PhysicalConstants) -> AtomSpec:
    try:
        return ATOMS[label](constants)
    except KeyError:
        raise DomainError(f"unknown atom {label!r}; expected one of {', '.join(ATOMS)}") from None


def bound_energy(atom: AtomSpec, n: int, constants: PhysicalConstants) -> EnergyQuantity:
    """Non-relativistic level ``-m_r alpha**2 / (2 n**2)`` in eV."""
    if n < 1:
        raise DomainError(f"principal quantum number must be >= 1, got {n}")
    return EnergyQuantity(-atom.reduced_mass * constants.alpha**2 / (2.0 * n * n), EV)


def psi0_squared(n: int, atom: AtomSpec | None = None) -> float:
    """``|psi_ns(0)|**2 = 1/(pi n**3)`` in reduced atomic units.

    The value is the same for every atom once lengths are reduced; ``atom``
    is accepted for symmetry with :func:`bound_energy`.
    """
    if n < 1:
        raise DomainError(f"principal quantum number must be >= 1, got {n}")
    return 1.0 / (math.pi * n**3)


@dataclass(frozen=True)
class BasisSpec:
    size: int = 100
    scale: float = 0.5
    channel_l: int = 1

    def __post_init__(self):
        if self.size < 2:
            raise DomainError(f"basis size must be >= 2, got {self.size}")
        if not self.scale > 0:
            raise DomainError(f"basis scale must be positive, got {self.scale}")
        if self.channel_l != 1:
            raise DomainError("only the l = 1 channel is connected to 2s by the momentum operator")


def _array_field(values):
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PseudostateSpectrum:
    """Excitation energies above 2s and ``|<n|p|2s>|**2`` strengths, reduced a.u."""

    delta_e: np.ndarray
    strength: np.ndarray
    basis: BasisSpec = field(default_factory=BasisSpec)
    gauge: str = VELOCITY

    def __post_init__(self):
        delta_e = _array_field(self.delta_e)
        strength = _array_field(self.strength)
        if delta_e.shape != strength.shape or delta_e.ndim != 1:
            raise DomainError("delta_e and strength must be 1-d arrays of equal length")
        if self.gauge not in (VELOCITY, LENGTH):
            raise DomainError(f"unknown gauge {self.gauge!r}")
        if np.any(delta_e < -NEGATIVE_TOLERANCE):
            raise DomainError(f"excitation energy below 2s: {delta_e.min():.3e}")
        if np.any(strength < 0):
            raise DomainError("negative strength")
        if np.any(np.diff(delta_e) < 0):
            raise DomainError("entries must be sorted by excitation energy")
        object.__setattr__(self, "delta_e", delta_e)
        object.__setattr__(self, "strength", strength)

    def __len__(self):
        return self.delta_e.size

    @property
    def entries(self) -> list[tuple[float, float]]:
        return list(zip(self.delta_e.tolist(), self.strength.tolist()))

    @property
    def excitation_weights(self) -> np.ndarray:
        """``delta_e * strength``, with the degenerate channel set to exactly zero."""
        return np.where(np.abs(self.delta_e) < ZERO_EXCITATION, 0.0, self.delta_e * self.strength)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(f"# N = {self.basis.size}\n# beta = {self.basis.scale!r}\n# gauge = {self.gauge}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["delta_e_au", "strength_au"])
        for de, f in zip(self.delta_e, self.strength):
            writer.writerow([f"{de:.17g}", f"{f:.17g}"])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "PseudostateSpectrum":
        meta = {}
        rows = []
        for line in text.splitlines():
            if line.startswith("#"):
                key, _, value = line[1:].partition("=")
                meta[key.strip()] = value.strip()
            elif line.strip():
                rows.append(line)
        reader = csv.reader(rows)
        header = next(reader)
        if header != ["delta_e_au", "strength_au"]:
            raise DomainError(f"unexpected spectrum header {header}")
        data = np.array([[float(a), float(b)] for a, b in reader]).reshape(-1, 2)
        basis = BasisSpec(int(meta.get("N", len(data))), float(meta.get("beta", 0.5)))
        return cls(data[:, 0], data[:, 1], basis, meta.get("gauge", VELOCITY))


def _panel_rule(upper: float, panels: int) -> tuple[np.ndarray, np.ndarray]:
    xg, wg = leggauss(_PANEL_ORDER)
    edges = np.linspace(0.0, upper, panels + 1)
    half = 0.5 * np.diff(edges)[:, None]
    mid = 0.5 * (edges[1:] + edges[:-1])[:, None]
    return (mid + half * xg).ravel(), (half * wg).ravel()


def _default_panels(size: int) -> tuple[float, int]:
    upper = math.sqrt(4.0 * size + 40.0) + 12.0
    return upper, int(math.ceil(upper / _PANEL_WIDTH))


@lru_cache(maxsize=16)
def _recurrence(size: int, panels: int) -> tuple[np.ndarray, np.ndarray]:
    """Three-term recurrence of the orthonormal polynomials for ``t**5 exp(-t**2)``.

    Lanczos with full reorthogonalization on a discretization that integrates
    the relevant polynomials to machine precision.  Independent of ``beta``.
    """
    upper, _ = _default_panels(size)
    t, w = _panel_rule(upper, panels)
    q = np.sqrt(w * t**_WEIGHT_POWER * np.exp(-t * t))
    q /= np.linalg.norm(q)
    basis = np.zeros((size, t.size))
    basis[0] = q
    a = np.zeros(size)
    b = np.zeros(size)
    for j in range(size):
        v = t * basis[j]
        a[j] = basis[j] @ v
        for _ in range(2):
            v -= basis[: j + 1].T @ (basis[: j + 1] @ v)
        if j + 1 < size:
            b[j + 1] = np.linalg.norm(v)
            basis[j + 1] = v / b[j + 1]
    return a, b


def _polynomials(t: np.ndarray, size: int, panels: int) -> tuple[np.ndarray, np.ndarray]:
    a, b = _recurrence(size, panels)
    p = np.zeros((size, t.size))
    dp = np.zeros_like(p)
    # mu_0 = int t^5 exp(-t^2) dt = Gamma(3)/2 = 1
    p[0] = math.exp(-0.5 * (gammaln(3.0) - math.log(2.0)))
    for j in range(size - 1):
        prev, dprev = (p[j - 1], dp[j - 1]) if j else (0.0, 0.0)
        p[j + 1] = ((t - a[j]) * p[j] - b[j] * prev) / b[j + 1]
        dp[j + 1] = (p[j] + (t - a[j]) * dp[j] - b[j] * dprev) / b[j + 1]
    return p, dp


def _two_s_velocity(r):
    # r * dR_20/dr for R_20 = (1 - r/2) exp(-r/2) / sqrt(2)
    return (0.25 * r * r - r) * np.exp(-0.5 * r) / math.sqrt(2.0)


def _two_s_length(r):
    # r * u_2s(r), u_2s = r R_20
    return r * r * (1.0 - 0.5 * r) * np.exp(-0.5 * r) / math.sqrt(2.0)


def _radial_matrices(basis: BasisSpec, panels: int):
    size, beta, ell = basis.size, basis.scale, basis.channel_l
    upper, _ = _default_panels(size)
    t, w = _panel_rule(upper, panels)
    p, dp = _polynomials(t, size, _default_panels(size)[1])
    r = t * t / (2.0 * beta)
    damp = math.sqrt(beta) * np.exp(-0.5 * t * t)
    u = damp * t * t * p
    du_dr = damp * ((2.0 - t * t) * p + t * dp) * beta  # (beta/t) d/dt of u
    wr = w * t / beta  # dr = t dt / beta
    uw = u * wr
    overlap = uw @ u.T
    kinetic = 0.5 * (du_dr * wr) @ du_dr.T + 0.5 * ell * (ell + 1) * (uw / (r * r)) @ u.T
    potential = -(uw / r) @ u.T
    return overlap, kinetic + potential, uw, r


def build_pseudostates(basis: BasisSpec | None = None, gauge: str = VELOCITY,
                       quadrature_panels: int | None = None) -> PseudostateSpectrum:
    """Diagonalize the p-wave Coulomb Hamiltonian and project the 2s dipole vector.

    Velocity-form strengths are ``(int u_n r dR_2s/dr dr)**2``; the angular
    factor of ``r_hat Y_00`` onto the ``l = 1`` harmonics sums to one, so the
    closure sum targets ``<2s|p**2|2s> = 1/4``.  Length-form strengths are
    ``delta_e**2 (int u_n r u_2s dr)**2``.
    """
    basis = basis or BasisSpec()
    if gauge not in (VELOCITY, LENGTH):
        raise DomainError(f"unknown gauge {gauge!r}")
    panels = quadrature_panels or _default_panels(basis.size)[1]
    overlap, hamiltonian, uw, r = _radial_matrices(basis, panels)

    shifted = hamiltonian + _SHIFT * overlap
    d = 1.0 / np.sqrt(np.diag(shifted))
    try:
        mu, vecs = linalg.eigh(d[:, None] * overlap * d, d[:, None] * shifted * d)
    except (linalg.LinAlgError, ValueError) as exc:
        raise ConvergenceError(
            f"eigensolver failed for N={basis.size}, beta={basis.scale}: {exc}") from exc
    if np.any(mu <= 0):
        raise ConvergenceError(f"non-positive shifted eigenvalue for N={basis.size}, beta={basis.scale}")
    vecs = d[:, None] * vecs
    energies = 1.0 / mu - _SHIFT
    order = np.argsort(energies)
    energies, vecs = energies[order], vecs[:, order]
    vecs /= np.sqrt(np.einsum("ij,ik,kj->j", vecs, overlap, vecs))

    delta_e = energies - E_2S
    if gauge == VELOCITY:
        strength = (vecs.T @ (uw @ _two_s_velocity(r))) ** 2
    else:
        strength = delta_e**2 * (vecs.T @ (uw @ _two_s_length(r))) ** 2
    return PseudostateSpectrum(delta_e, strength, basis, gauge)


def sum_rules(spectrum: PseudostateSpectrum) -> tuple[float, float]:
    """``(sum f_n, sum delta_e_n f_n)``; both tend to 1/4 for a complete 2s spectrum."""
    return float(np.sum(spectrum.strength)), float(np.sum(spectrum.excitation_weights))
