"""
Exact scattering at the bottomless exponential barrier.

With z = s a exp(|x|/a) the barrier equation becomes Bessel's equation of
order nu = i p a.  For incidence from the left

    x < 0:  psi = A H2_nu(z) + B H1_{-nu}(z)
    x > 0:  psi = C H1_nu(z)

and matching psi, psi' at x = 0 (z = s a, dz/dx = -+ z/a) gives

    B/A = -1/2 exp(pi p a) [H2/H1 + H2'/H1']
    C/A = (2i / (pi s a)) / (H1 H1')
    R = |B/A|^2,   T = |exp(pi p a) C/A|^2.

p lives on the branch of ``model.wavenumbers`` (p = i sqrt(c(u0-E)) below
E = u0), so exp(pi p a) is a phase below u0 and a real factor above it.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import specfun
from .curves import CurveTable
from .errors import BracketingFailed, NoSignChange, PoleEncountered, XWellError
from .model import BarrierParams, EnergyGridSpec, WellParams, wavenumbers
from .roots import bisect_secant, sign_changes


@dataclass(frozen=True)
class MatchCoefficients:
    A: complex
    B: complex
    C: complex


@dataclass(frozen=True)
class ScatterPoint:
    E: float
    p: complex
    r_amp: complex
    t_ratio: complex
    R: float
    T: float

    @property
    def unitarity_defect(self) -> float:
        return abs(self.R + self.T - 1.0)


@dataclass(frozen=True)
class _HankelData:
    nu: complex
    z: float
    p: complex
    h1: complex
    h2: complex
    h1p: complex
    h2p: complex
    h1m: complex    # H1_{-nu}
    h1mp: complex   # H1'_{-nu}


def _hankel_data(params: BarrierParams, E: float) -> _HankelData:
    w = wavenumbers(params, E)
    nu, z = w.order, w.lam
    h1, h2, h1p, h2p = specfun.hankel_all(nu, z)
    h1m, _, h1mp, _ = specfun.hankel_all(-nu, z)
    return _HankelData(nu, z, w.k_or_p, h1, h2, h1p, h2p, h1m, h1mp)


def coefficients_ABC(params: BarrierParams, E: float) -> MatchCoefficients:
    """Matching amplitudes at x = 0 in closed form.

    A carries the sign that makes B/A, C/A equal the direct solution of the
    matching equations.
    """
    d = _hankel_data(params, E)
    A = -2.0 * d.h1m * d.h1p
    B = d.h1p * d.h2 + d.h1 * d.h2p
    C = d.h1m * d.h2p - d.h1mp * d.h2
    return MatchCoefficients(A, B, C)


def amplitude_ratios(params: BarrierParams, E: float) -> tuple[complex, complex, complex]:
    """(B/A, C/A, p) from the ratio formulas."""
    d = _hankel_data(params, E)
    if d.h1 == 0 or d.h1p == 0:
        raise PoleEncountered(f"H1 or H1' vanishes at E={E}")
    ph = cmath.exp(math.pi * d.p * params.a)
    r = -0.5 * ph * (d.h2 / d.h1 + d.h2p / d.h1p)
    t = (2j / (math.pi * d.z)) / (d.h1 * d.h1p)
    return r, t, d.p


def rt_probabilities(params: BarrierParams, E: float) -> ScatterPoint:
    r, t, p = amplitude_ratios(params, E)
    ph = cmath.exp(math.pi * p * params.a)
    return ScatterPoint(float(E), p, r, t, abs(r) ** 2, abs(ph * t) ** 2)


def rt_from_coefficients(params: BarrierParams, E: float, coeffs: MatchCoefficients | None = None) -> tuple[float, float]:
    coeffs = coefficients_ABC(params, E) if coeffs is None else coeffs
    if coeffs.A == 0:
        raise PoleEncountered(f"A = 0 at E={E}")
    p = wavenumbers(params, E).k_or_p
    ph = cmath.exp(math.pi * p * params.a)
    return abs(coeffs.B / coeffs.A) ** 2, abs(ph * coeffs.C / coeffs.A) ** 2


def current_densities(params: BarrierParams, E: float, coeffs: MatchCoefficients) -> tuple[float, float, float]:
    """Signed incident, reflected and transmitted currents (Ji, Jr, Jt).

    J0 = 2 hbar/(mu a pi) = 4/(c a pi) with hbar = 1.  Below u0 (imaginary p)
    there are no exponential factors; above it the left side carries
    exp(-pi p a) and the right side exp(+pi p a).
    """
    j0 = 4.0 / (params.two_mu_over_hbar2 * params.a * math.pi)
    p = wavenumbers(params, E).k_or_p
    aa = abs(coeffs.A) ** 2
    bb = abs(coeffs.B) ** 2
    cc = abs(coeffs.C) ** 2
    if p.real == 0.0:
        return j0 * aa, -j0 * bb, j0 * cc
    left = math.exp(-math.pi * p.real * params.a)
    right = math.exp(math.pi * p.real * params.a)
    return j0 * left * aa, -j0 * left * bb, j0 * right * cc


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("XWELL_THREADS", "1")))
    except ValueError:
        return 1


def sweep(params: BarrierParams, grid: EnergyGridSpec, threads: int | None = None) -> CurveTable:
    """R(E), T(E) on a grid.  Points that fail are kept as NaN rows and listed in metadata."""
    energies = grid.energies()
    threads = _threads() if threads is None else threads

    def point(E):
        try:
            return rt_probabilities(params, float(E))
        except XWellError as exc:
            return exc

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(point, energies))
    else:
        results = [point(E) for E in energies]

    rows = []
    invalid = []
    for E, res in zip(energies, results):
        if isinstance(res, ScatterPoint):
            rows.append((res.E, res.R, res.T, res.unitarity_defect))
        else:
            rows.append((float(E), math.nan, math.nan, math.nan))
            invalid.append({"E": float(E), "error": str(res)})
    defects = [r[3] for r in rows if not math.isnan(r[3])]
    return CurveTable(
        columns=[("E", "energy"), ("R", "1"), ("T", "1"), ("unitarity_defect", "1")],
        rows=rows,
        metadata={
            "params": {"u0": params.u0, "a": params.a, "two_mu_over_hbar2": params.two_mu_over_hbar2},
            "grid": {"emin": grid.emin, "emax": grid.emax, "points": grid.points},
            "max_unitarity_defect": max(defects) if defects else math.nan,
            "invalid_points": invalid,
        },
    )


CROSSOVER_STEP = 0.05


def find_crossover(params: BarrierParams, search: tuple[float, float] = (-5.0, 5.0)) -> float:
    """First energy in ``search`` where R(E) = T(E) = 1/2."""
    lo, hi = search
    n = max(2, int(math.ceil((hi - lo) / CROSSOVER_STEP)) + 1)
    energies = np.linspace(lo, hi, n)
    g = lambda e: rt_probabilities(params, e).R - 0.5  # noqa: E731
    vals = [g(e) for e in energies]
    brackets = sign_changes(energies, vals)
    if not brackets:
        raise NoSignChange(f"R - 1/2 keeps its sign on [{lo}, {hi}]", (lo, hi))
    a, b, fa, fb = brackets[0]
    return bisect_secant(g, a, b, fa, fb, width=1e-8)


def barrier_top_crossover(u0: float = 5.0, a_range: tuple[float, float] = (0.2, 1.0),
                          search: tuple[float, float] = (-5.0, 5.0), tol: float = 1e-6,
                          two_mu_over_hbar2: float = 1.0) -> tuple[float, float]:
    """Length a in ``a_range`` for which the crossover sits at the barrier top E = 0.

    Returns (a*, E_c(a*)).
    """
    ec = lambda a: find_crossover(BarrierParams(u0, a, two_mu_over_hbar2), search)  # noqa: E731
    lo, hi = a_range
    flo, fhi = ec(lo), ec(hi)
    if flo * fhi > 0:
        raise NoSignChange(f"E_c keeps its sign for a in [{lo}, {hi}]", a_range)
    a_star = bisect_secant(ec, lo, hi, flo, fhi, width=tol, secant_steps=2)
    return a_star, ec(a_star)


# --- continuation u0 -> -v0 ---------------------------------------------------


class PoleKind(str, Enum):
    K_ZERO = "K-zero"
    K_PRIME_ZERO = "K'-zero"
    DEGENERATE = "degenerate"


def continued_hankel(params: WellParams, E: float) -> tuple[complex, complex, complex, complex, complex]:
    """H1, H2, H1', H2' at the imaginary argument i q a, and p = sqrt(c (E + v0)).

    H1_nu(iz)  = -(2i/pi) exp(-i pi nu/2) K_nu(z)
    H2_nu(iz)  = 2 exp(i pi nu/2) I_nu(z) - H1_nu(iz)
    derivatives with respect to the argument carry a factor -i.
    """
    c = params.two_mu_over_hbar2
    p = math.sqrt(c * (E + params.v0))
    nu = 1j * p * params.a
    z = params.lam
    K = specfun.k_imag_order(p * params.a, z)
    Kp = specfun.k_imag_order_deriv(p * params.a, z)
    I = specfun.bessel_i(nu, z)
    Ip = specfun.bessel_i(nu - 1.0, z) - nu / z * I
    em = cmath.exp(-0.5j * math.pi * nu)
    ep = cmath.exp(0.5j * math.pi * nu)
    h1 = -2j / math.pi * em * K
    h1p = -2.0 / math.pi * em * Kp
    j = ep * I
    jp = -1j * ep * Ip
    return h1, 2.0 * j - h1, h1p, 2.0 * jp - h1p, complex(p)


def continued_rt(params: WellParams, E: float) -> tuple[float, float]:
    """R(E), T(E) of the barrier formulas continued to u0 = -v0 (s -> i q)."""
    h1, h2, h1p, h2p, p = continued_hankel(params, E)
    if h1 == 0 or h1p == 0:
        raise PoleEncountered(f"continued denominator vanishes at E={E}")
    ph = cmath.exp(math.pi * p * params.a)
    r = -0.5 * ph * (h2 / h1 + h2p / h1p)
    t = (2j / (math.pi * 1j * params.lam)) / (h1 * h1p)
    return abs(r) ** 2, abs(ph * t) ** 2


def _denominator_factors(params: WellParams, E: float) -> tuple[float, float]:
    """Real factors of H1 H1' at i q a: (K_{ipa}(qa), K'_{ipa}(qa)).

    H1 H1' = (4i/pi^2) exp(pi p a) K K', so the phases are stripped exactly.
    """
    h1, _, h1p, _, p = continued_hankel(params, E)
    em = cmath.exp(0.5 * math.pi * p.real * params.a)  # exp(-i pi nu / 2)
    k = (h1 / (-2j / math.pi * em)).real
    kp = (h1p / (-2.0 / math.pi * em)).real
    return k, kp


POLE_SCAN_STEP = 0.02


def pole_locate(params: WellParams, n_max: int, step: float = POLE_SCAN_STEP) -> list[tuple[float, PoleKind]]:
    """Poles of the continued r = B/A and t = C/A, lowest n_max + 1 of them."""
    found: list[tuple[float, PoleKind]] = []
    dE = step * params.v0
    lo = -params.v0 + 1e-6 * params.v0
    while len(found) < n_max + 1:
        grid = np.arange(201) * dE + lo
        facs = [_denominator_factors(params, e) for e in grid]
        for idx, kind in ((0, PoleKind.K_ZERO), (1, PoleKind.K_PRIME_ZERO)):
            g = lambda e, i=idx: _denominator_factors(params, e)[i]  # noqa: E731
            for a, b, fa, fb in sign_changes(grid, [f[idx] for f in facs]):
                E = bisect_secant(g, a, b, fa, fb, width=1e-10)
                if any(abs(E - e0) < 1e-8 for e0, _ in found):
                    continue
                k, kp = _denominator_factors(params, E)
                if abs(k) < 1e-12 and abs(kp) < 1e-12:
                    kind_at = PoleKind.DEGENERATE
                else:
                    kind_at = PoleKind.K_ZERO if abs(k) < abs(kp) else PoleKind.K_PRIME_ZERO
                found.append((float(E), kind_at))
        lo = grid[-1]
        if lo > 1e6 * params.v0:
            raise BracketingFailed("pole scan ran away", (grid[0], lo))
    found.sort()
    return found[: n_max + 1]


def continued_sweep(params: WellParams, grid: EnergyGridSpec, n_max: int = 3) -> CurveTable:
    """R, T continued to u0 = -v0 on a grid, with the located poles in metadata."""
    rows = []
    for e in grid.energies():
        try:
            R, T = continued_rt(params, float(e))
        except PoleEncountered:
            R = T = math.inf
        rows.append((float(e), R, T))
    poles = pole_locate(params, n_max)
    return CurveTable(
        columns=[("E", "energy"), ("R", "1"), ("T", "1")],
        rows=rows,
        metadata={
            "params": {"v0": params.v0, "a": params.a, "two_mu_over_hbar2": params.two_mu_over_hbar2},
            "grid": {"emin": grid.emin, "emax": grid.emax, "points": grid.points},
            "poles": [{"E": E, "kind": kind.value} for E, kind in poles],
        },
    )
