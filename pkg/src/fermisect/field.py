"""Mode kernel for a massive Fermi field on a bisected interval.

The detection interval has length ``2L`` and is split into two halves of
length ``L``.  Each carries its own plane-wave basis:

* full interval, coordinates ``[0, 2L]``, momentum ladder ``p_k = pi*k/L``;
* left half ``[0, L]`` and right half ``[L, 2L]``, ladder ``q_m = 2*pi*m/L``.

Every mode is normalized to unit L2 norm on its own interval (``1/sqrt(2L)``
on the full interval, ``1/sqrt(L)`` on a half), which is the normalization
under which the half-to-full expansion coefficients come out canonical in
their leading diagonal entry.  Positive/negative frequency content is carried
by two-component spinors; everything here is a pure function.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Branch",
    "DegenerateDispersion",
    "FieldConfig",
    "Ladder",
    "ModeIndex",
    "Region",
    "Spinor",
    "energy",
    "mode_function",
    "momentum",
    "section_momentum",
    "spinor",
    "spinor_cross_overlap",
    "spinor_overlap",
    "subsection_momentum",
]


class DegenerateDispersion(ValueError):
    """Spinor normalization ``1/sqrt(2*eps*(eps+mu))`` is singular at p = mu = 0."""


class Branch(enum.Enum):
    """Positive- or negative-frequency spinor branch."""

    POSITIVE = "+"
    NEGATIVE = "-"


class Ladder(enum.Enum):
    """Which momentum ladder a mode index refers to."""

    SECTION = "section"          # p_m = pi*m/L on the full interval
    SUBSECTION = "subsection"    # q_m = 2*pi*m/L on a half interval


class Region(enum.Enum):
    """Support of a mode function."""

    WHOLE = "whole"
    LEFT = "left"
    RIGHT = "right"

    def interval(self, cfg: "FieldConfig") -> tuple[float, float]:
        ell = cfg.half_length
        if self is Region.WHOLE:
            return (0.0, 2.0 * ell)
        if self is Region.LEFT:
            return (0.0, ell)
        return (ell, 2.0 * ell)

    @property
    def ladder(self) -> Ladder:
        return Ladder.SECTION if self is Region.WHOLE else Ladder.SUBSECTION


@dataclass(frozen=True)
class FieldConfig:
    """Physical and numerical parameters of a field computation.

    Parameters
    ----------
    mass : float
        Field mass ``mu`` in inverse-length units (hbar = c = 1).  May be 0.
    half_length : float
        Half of the full interval; the halves each have length ``half_length``.
    time : float
        Evaluation time.  Enters only through phases of mode functions and
        expansion coefficients.
    truncation : int
        Symmetric mode cutoff: sums over the full-interval ladder run over
        ``|k| <= truncation``.  Default 257 (a power of two plus one, so the
        doubling convergence probe lands on round cutoffs).
    """

    mass: float
    half_length: float
    time: float = 0.0
    truncation: int = 257

    def __post_init__(self) -> None:
        if self.mass < 0:
            raise ValueError(f"mass must be >= 0, got {self.mass}")
        if self.half_length <= 0:
            raise ValueError(f"half_length must be > 0, got {self.half_length}")
        if self.truncation < 1:
            raise ValueError(f"truncation must be >= 1, got {self.truncation}")

    @property
    def mu_l(self) -> float:
        """Interval half-length in units of the Compton wavelength."""
        return self.mass * self.half_length

    @classmethod
    def from_mu_l(cls, mu_l: float, half_length: float = 1.0, **kwargs) -> "FieldConfig":
        return cls(mass=mu_l / half_length, half_length=half_length, **kwargs)


@dataclass(frozen=True)
class ModeIndex:
    """Integer mode index on one of the two momentum ladders."""

    index: int
    ladder: Ladder


@dataclass(frozen=True)
class Spinor:
    """Two-component frequency-branch spinor, unit norm."""

    upper: float
    lower: float
    branch: Branch

    def as_array(self) -> np.ndarray:
        return np.array([self.upper, self.lower])

    def dot(self, other: "Spinor") -> float:
        return self.upper * other.upper + self.lower * other.lower


def energy(p, mass):
    """Dispersion ``eps(p) = sqrt(mass**2 + p**2)``; even in p, >= mass."""
    return np.hypot(np.asarray(p, dtype=float), mass)


def section_momentum(k, cfg: FieldConfig):
    """Full-interval ladder ``p_k = pi*k/L``."""
    return np.pi * np.asarray(k, dtype=float) / cfg.half_length


def subsection_momentum(m, cfg: FieldConfig):
    """Half-interval ladder ``q_m = 2*pi*m/L``."""
    return 2.0 * np.pi * np.asarray(m, dtype=float) / cfg.half_length


def momentum(mode: ModeIndex, cfg: FieldConfig) -> float:
    """Momentum of a mode on its ladder."""
    if mode.ladder is Ladder.SECTION:
        return float(section_momentum(mode.index, cfg))
    return float(subsection_momentum(mode.index, cfg))


def spinor(p: float, mass: float, branch: Branch) -> Spinor:
    """Frequency-branch spinor at momentum ``p``.

    Raises
    ------
    DegenerateDispersion
        If ``p = mass = 0``, where the normalization is singular.
    """
    eps = float(energy(p, mass))
    if eps == 0.0:
        raise DegenerateDispersion("spinor undefined at p = mass = 0")
    norm = math.sqrt(2.0 * eps * (eps + mass))
    if branch is Branch.POSITIVE:
        return Spinor((eps + mass) / norm, p / norm, branch)
    return Spinor(-p / norm, (eps + mass) / norm, branch)


def _check_nondegenerate(eps_q, eps_p) -> None:
    if np.any(np.asarray(eps_q) == 0.0) or np.any(np.asarray(eps_p) == 0.0):
        raise DegenerateDispersion("spinor overlap undefined at p = mass = 0")


def spinor_overlap(q, p, mass):
    """Positive-branch overlap ``u+(q) . u+(p)``.

    Equals ``[(eps_p+mu)(eps_q+mu) + p*q] / [2*sqrt(eps_p*eps_q*(eps_p+mu)*(eps_q+mu))]``;
    symmetric in (q, p) and exactly 1 at q = p.  Accepts arrays.
    """
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    eps_q = energy(q, mass)
    eps_p = energy(p, mass)
    _check_nondegenerate(eps_q, eps_p)
    num = (eps_p + mass) * (eps_q + mass) + p * q
    den = 2.0 * np.sqrt(eps_p * eps_q * (eps_p + mass) * (eps_q + mass))
    return num / den


def spinor_cross_overlap(q, p, mass):
    """Cross-branch factor ``u-(q) . u+(p)``.

    Equals ``[p*(eps_q+mu) - q*(eps_p+mu)] / [2*sqrt(eps_p*eps_q*(eps_p+mu)*(eps_q+mu))]``;
    antisymmetric under q <-> p and zero at q = p.  Accepts arrays.
    """
    q = np.asarray(q, dtype=float)
    p = np.asarray(p, dtype=float)
    eps_q = energy(q, mass)
    eps_p = energy(p, mass)
    _check_nondegenerate(eps_q, eps_p)
    num = p * (eps_q + mass) - q * (eps_p + mass)
    den = 2.0 * np.sqrt(eps_p * eps_q * (eps_p + mass) * (eps_q + mass))
    return num / den


def mode_function(index: int, region: Region, x, cfg: FieldConfig, t: float | None = None):
    """Plane-wave mode ``exp(i*(p*x - eps*t))`` on the region, unit L2 norm.

    Half-interval modes vanish identically outside their half.  ``x`` may be
    an array.  ``t`` defaults to ``cfg.time``.
    """
    if t is None:
        t = cfg.time
    x = np.asarray(x, dtype=float)
    if region is Region.WHOLE:
        p = float(section_momentum(index, cfg))
        amp = 1.0 / math.sqrt(2.0 * cfg.half_length)
        return amp * np.exp(1j * (p * x - float(energy(p, cfg.mass)) * t))
    p = float(subsection_momentum(index, cfg))
    amp = 1.0 / math.sqrt(cfg.half_length)
    lo, hi = region.interval(cfg)
    inside = (x >= lo) & (x <= hi)
    return np.where(inside, amp * np.exp(1j * (p * x - float(energy(p, cfg.mass)) * t)), 0.0 + 0.0j)
