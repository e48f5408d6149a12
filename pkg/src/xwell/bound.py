"""Exact bound states of the open well.

With z = q a exp(|x|/a) the Schroedinger equation becomes the modified Bessel
equation of order i k a, and the decaying solution is K_{ika}(z).  Parity
fixes the energy:

    even states:  K'_{ika}(qa) = 0      (n = 0, 2, 4, ...)
    odd states:   K_{ika}(qa) = 0       (n = 1, 3, 5, ...)

where k = sqrt(c (E + v0)), c = 2 mu / hbar^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from . import specfun
from .errors import ArgumentOutOfSpecfunDomain, BracketingFailed, QuadratureNonConvergence, TooFewStatesInRange
from .model import EnergyGridSpec, WellParams, wavenumbers
from .roots import bisect_secant, sign_changes


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"

    @classmethod
    def of(cls, n: int) -> "Parity":
        return cls.EVEN if n % 2 == 0 else cls.ODD


@dataclass(frozen=True)
class Eigenstate:
    n: int
    parity: Parity
    energy: float
    k: float
    norm_constant: float = 0.0


SCAN_STEP = 0.05          # in units of v0
SCAN_START = 1e-6         # offset above -v0
ROOT_WIDTH = 1e-8


def order_of(params: WellParams, E: float) -> float:
    """Imaginary part of the Bessel order, k a."""
    return wavenumbers(params, E).k_or_p.real * params.a


def parity_condition(params: WellParams, E: float, parity: Parity | str) -> float:
    """K'_{ika}(qa) for even parity, K_{ika}(qa) for odd parity."""
    nu = order_of(params, E)
    if Parity(parity) is Parity.EVEN:
        return specfun.k_imag_order_deriv(nu, params.lam)
    return specfun.k_imag_order(nu, params.lam)


def _roots_on_grid(params: WellParams, energies: np.ndarray, parity: Parity) -> list[float]:
    vals = [parity_condition(params, e, parity) for e in energies]
    roots = []
    for lo, hi, flo, fhi in sign_changes(energies, vals):
        g = lambda e: parity_condition(params, e, parity)  # noqa: E731
        roots.append(bisect_secant(g, lo, hi, flo, fhi, width=ROOT_WIDTH))
    return roots


def _interlaced(even: list[float], odd: list[float]) -> bool:
    merged = sorted([(e, 0) for e in even] + [(e, 1) for e in odd])
    return all(tag == i % 2 for i, (_, tag) in enumerate(merged))


def _states_from_roots(params: WellParams, even: list[float], odd: list[float], n_max: int) -> list[Eigenstate]:
    merged = sorted([(e, Parity.EVEN) for e in even] + [(e, Parity.ODD) for e in odd])
    out = []
    for n, (E, par) in enumerate(merged[: n_max + 1]):
        out.append(Eigenstate(n, par, float(E), wavenumbers(params, E).k_or_p.real))
    return out


def solve_spectrum(
    params: WellParams,
    n_max: int,
    scan: EnergyGridSpec | None = None,
    step: float | None = None,
) -> list[Eigenstate]:
    """Bound states n = 0..n_max, found by a sign-change scan and polished roots.

    Without an explicit ``scan`` the grid starts just above -v0 with spacing
    ``step`` (default 0.05 v0) and is extended until n_max + 2 roots are seen.
    A grid that fails to interlace even and odd roots is refined by halving.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if scan is not None:
        energies = scan.energies()
        even = _roots_on_grid(params, energies, Parity.EVEN)
        odd = _roots_on_grid(params, energies, Parity.ODD)
        if not _interlaced(even, odd):
            raise BracketingFailed("scan grid too coarse: even/odd roots do not interlace",
                                   (scan.emin, scan.emax))
        if len(even) + len(odd) < n_max + 1:
            raise TooFewStatesInRange(
                f"found {len(even) + len(odd)} states in [{scan.emin}, {scan.emax}], need {n_max + 1}",
                (scan.emin, scan.emax),
            )
        return _states_from_roots(params, even, odd, n_max)

    dE = (SCAN_STEP if step is None else step) * params.v0
    for _ in range(6):
        even: list[float] = []
        odd: list[float] = []
        lo = -params.v0 + SCAN_START * params.v0
        while len(even) + len(odd) < n_max + 2:
            hi = lo + 100 * dE
            grid = np.arange(101) * dE + lo
            # chunks overlap at their endpoints; drop a root found twice
            for r in _roots_on_grid(params, grid, Parity.EVEN):
                if not even or abs(r - even[-1]) > 10 * ROOT_WIDTH:
                    even.append(r)
            for r in _roots_on_grid(params, grid, Parity.ODD):
                if not odd or abs(r - odd[-1]) > 10 * ROOT_WIDTH:
                    odd.append(r)
            lo = hi
            if lo > 1e6 * params.v0:
                raise TooFewStatesInRange("energy scan ran away without finding enough states", (lo, hi))
        if _interlaced(even, odd):
            return _states_from_roots(params, even, odd, n_max)
        dE *= 0.5
    raise BracketingFailed("could not separate roots even after refining the scan", (-params.v0, lo))


def x_cap(params: WellParams, z_max: float = specfun.Z_MAX_SERIES) -> float:
    """Largest |x| whose Bessel argument q a exp(|x|/a) stays <= z_max."""
    return params.a * math.log(z_max / params.lam)


def _raw_psi(params: WellParams, state: Eigenstate, x: float) -> float:
    z = params.lam * math.exp(abs(x) / params.a)
    val = specfun.k_imag_order(state.k * params.a, z)
    if state.parity is Parity.ODD:
        val *= float(np.sign(x))
    return val


def eigenfunction(params: WellParams, state: Eigenstate, x: float) -> float:
    """psi(x); un-normalized (A = 1) unless ``state.norm_constant`` is set."""
    if abs(x) > x_cap(params) * (1 + 1e-12):
        raise ArgumentOutOfSpecfunDomain(f"|x|={abs(x):g} beyond x_cap={x_cap(params):g}")
    amp = state.norm_constant if state.norm_constant > 0 else 1.0
    return amp * _raw_psi(params, state, x)


def eigenfunction_slope_at_origin(params: WellParams, state: Eigenstate) -> float:
    """One-sided derivative psi'(0+) = (q) K'_{ika}(qa) for the un-normalized state."""
    return params.q * specfun.k_imag_order_deriv(state.k * params.a, params.lam)


def sample(params: WellParams, state: Eigenstate, points: int = 2001, xmax: float | None = None):
    """(x, psi) arrays on a symmetric grid over [-xmax, xmax]."""
    xmax = x_cap(params) if xmax is None else xmax
    xs = np.linspace(-xmax, xmax, points)
    return xs, np.array([eigenfunction(params, state, x) for x in xs])


def count_nodes(params: WellParams, state: Eigenstate, grid: np.ndarray | None = None) -> int:
    """Strict sign changes of psi on ``grid`` (zeros on the grid are skipped)."""
    if grid is None:
        grid = np.linspace(-x_cap(params), x_cap(params), 2001)
    signs = [np.sign(eigenfunction(params, state, x)) for x in grid]
    signs = [s for s in signs if s != 0]
    return int(sum(1 for s0, s1 in zip(signs, signs[1:]) if s0 != s1))


def _gl_integral(f, a: float, b: float, tol: float = 1e-13, max_panels: int = 512) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(32)
    panels = 2
    prev = None
    while panels <= max_panels:
        h = (b - a) / panels
        total = 0.0
        for i in range(panels):
            lo = a + i * h
            xs = lo + 0.5 * h * (nodes + 1.0)
            total += 0.5 * h * float(np.dot(weights, [f(x) for x in xs]))
        if prev is not None and abs(total - prev) <= tol * max(abs(total), 1.0):
            return total
        prev = total
        panels *= 2
    raise QuadratureNonConvergence(f"integral over [{a}, {b}] did not converge")


def tail_bound(params: WellParams, xc: float) -> float:
    """Upper bound on int_{|x|>xc} psi^2 dx for the un-normalized state.

    |K_{i nu}(z)| <= K_0(z) <= sqrt(pi/(2z)) exp(-z), so with z = qa exp(x/a)
    each tail is at most a pi exp(-2 z_c) / (4 z_c^2).
    """
    zc = params.lam * math.exp(xc / params.a)
    return 2.0 * params.a * math.pi * math.exp(-2.0 * zc) / (4.0 * zc * zc)


def normalize(params: WellParams, state: Eigenstate, xc: float | None = None) -> Eigenstate:
    xc = x_cap(params) if xc is None else xc
    half = _gl_integral(lambda x: _raw_psi(params, state, x) ** 2, 0.0, xc)
    total = 2.0 * half + tail_bound(params, xc)
    return replace(state, norm_constant=1.0 / math.sqrt(total))


def overlap(params: WellParams, s1: Eigenstate, s2: Eigenstate, xc: float | None = None) -> float:
    """int psi_1 psi_2 dx over [-xc, xc] using the states' norm constants."""
    xc = x_cap(params) if xc is None else xc
    c1 = s1.norm_constant or 1.0
    c2 = s2.norm_constant or 1.0
    f = lambda x: _raw_psi(params, s1, x) * _raw_psi(params, s2, x)  # noqa: E731
    return c1 * c2 * (_gl_integral(f, -xc, 0.0) + _gl_integral(f, 0.0, xc))
