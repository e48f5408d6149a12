"""Potentials, unit convention and derived wavenumbers.

Open well:          V(x) =  v0 (exp(2|x|/a) - 1),  v0 > 0
Bottomless barrier: V(x) = -u0 (exp(2|x|/a) - 1),  u0 > 0

``two_mu_over_hbar2`` is 2*mu/hbar^2; the default 1 means 2 mu = hbar = 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EnergyBelowWellBottom, NoClassicalTurningPoints


@dataclass(frozen=True)
class WellParams:
    v0: float = 1.0
    a: float = 1.0
    two_mu_over_hbar2: float = 1.0

    def __post_init__(self):
        if not (self.v0 > 0 and self.a > 0 and self.two_mu_over_hbar2 > 0):
            raise DomainError(f"well needs v0, a, two_mu_over_hbar2 > 0; got {self}")

    @property
    def q(self) -> float:
        return math.sqrt(self.two_mu_over_hbar2 * self.v0)

    @property
    def lam(self) -> float:
        return self.q * self.a


@dataclass(frozen=True)
class BarrierParams:
    u0: float = 5.0
    a: float = 1.0
    two_mu_over_hbar2: float = 1.0

    def __post_init__(self):
        if not (self.u0 > 0 and self.a > 0 and self.two_mu_over_hbar2 > 0):
            raise DomainError(f"barrier needs u0, a, two_mu_over_hbar2 > 0; got {self}")

    @property
    def s(self) -> float:
        return math.sqrt(self.two_mu_over_hbar2 * self.u0)

    @property
    def lam(self) -> float:
        return self.s * self.a


@dataclass(frozen=True)
class Wavenumbers:
    k_or_p: complex
    q_or_s: float
    order: complex
    lam: float


@dataclass(frozen=True)
class EnergyGridSpec:
    """Uniform energy grid, endpoints included."""

    emin: float
    emax: float
    points: int

    def __post_init__(self):
        if self.points < 1:
            raise DomainError("grid needs at least one point")
        if self.points > 1 and not self.emax > self.emin:
            raise DomainError("grid must be increasing")

    def energies(self) -> np.ndarray:
        if self.points == 1:
            return np.array([float(self.emin)])
        return np.linspace(self.emin, self.emax, self.points)


def potential_value(params: WellParams | BarrierParams, x: float) -> float:
    shape = math.expm1(2.0 * abs(x) / params.a)
    if isinstance(params, WellParams):
        return params.v0 * shape
    return -params.u0 * shape


def wavenumbers(params: WellParams | BarrierParams, E: float) -> Wavenumbers:
    """k (well) or p (barrier) at energy E together with the Bessel order i*k*a.

    For the barrier below E = u0 the branch p = +i sqrt(c (u0 - E)) is used,
    so the order is real and non-positive there.
    """
    c = params.two_mu_over_hbar2
    if isinstance(params, WellParams):
        if E <= -params.v0:
            raise EnergyBelowWellBottom(f"E={E} is at or below the well bottom -v0={-params.v0}")
        k = complex(math.sqrt(c * (E + params.v0)))
        return Wavenumbers(k, params.q, 1j * k * params.a, params.lam)
    d = E - params.u0
    p = complex(math.sqrt(c * d)) if d >= 0 else 1j * math.sqrt(-c * d)
    return Wavenumbers(p, params.s, 1j * p * params.a, params.lam)


def wavenumber_p(params: BarrierParams, E: float) -> complex:
    return wavenumbers(params, E).k_or_p


def turning_points(params: WellParams | BarrierParams, E: float) -> tuple[float, float]:
    """Classical turning points (x1, x2) = (-x2, x2)."""
    if isinstance(params, WellParams):
        if E <= 0:
            raise NoClassicalTurningPoints(f"well has no turning points at E={E} <= 0")
        x2 = 0.5 * params.a * math.log1p(E / params.v0)
    else:
        if E >= 0:
            raise NoClassicalTurningPoints(f"barrier has no turning points at E={E} >= 0")
        x2 = 0.5 * params.a * math.log1p(-E / params.u0)
    return -x2, x2


def exp_phase(p: complex, a: float) -> complex:
    """exp(pi p a) for complex p."""
    return cmath.exp(math.pi * p * a)
