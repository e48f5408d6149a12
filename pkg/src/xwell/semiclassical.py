"""WKB quantization of the open well and WKB tunneling through the barrier.

Both actions reduce to the same closed form in G >= 1,

    h(G) = G * artanh(sqrt(G^2 - 1)/G) - sqrt(G^2 - 1),

with f(E) = (2 q a / pi) h(g),  g = sqrt((E + v0)/v0)   (well, E >= 0)
and  F(E) = 2 s a h(G),         G = sqrt(1 - E/u0)      (barrier, E < 0).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import BracketingFailed, EnergyNotBelowBarrierTop, NegativeEnergyForWellAction
from .model import BarrierParams, WellParams
from .roots import bisect_secant


@dataclass(frozen=True)
class ActionValue:
    value: float
    g_or_G: float


def _artanh_minus(G: float) -> float:
    """G * (artanh(u) - u) with u = sqrt(G^2 - 1)/G; exactly 0 at G = 1."""
    if G <= 1.0:
        return 0.0
    r = math.sqrt((G - 1.0) * (G + 1.0))
    u = r / G
    if u < 1e-4:
        # artanh(u) - u = u^3/3 + u^5/5 + u^7/7 + ...
        u2 = u * u
        return G * u * u2 * (1 / 3 + u2 * (1 / 5 + u2 / 7))
    return G * (0.5 * math.log((1.0 + u) / (1.0 - u)) - u)


def action_f(params: WellParams, E: float) -> ActionValue:
    if E < 0:
        raise NegativeEnergyForWellAction(f"well action needs E >= 0, got {E}")
    g = math.sqrt((E + params.v0) / params.v0)
    return ActionValue(2.0 * params.lam / math.pi * _artanh_minus(g), g)


def barrier_action_F(params: BarrierParams, E: float) -> ActionValue:
    if not E < 0:
        raise EnergyNotBelowBarrierTop(f"WKB tunneling needs E < 0, got {E}")
    G = math.sqrt(1.0 - E / params.u0)
    return ActionValue(2.0 * params.lam * _artanh_minus(G), G)


def t_wkb(params: BarrierParams, E: float) -> float:
    F = barrier_action_F(params, E).value
    # 1/(1+e^{2F}) without overflow
    return math.exp(-2.0 * F) / (1.0 + math.exp(-2.0 * F)) if F > 0 else 1.0 / (1.0 + math.exp(2.0 * F))


def _bracket_upward(fn, target: float, e_hi: float) -> tuple[float, float]:
    lo = 0.0
    for _ in range(200):
        if fn(e_hi) > target:
            return lo, e_hi
        lo, e_hi = e_hi, 2.0 * e_hi
    raise BracketingFailed(f"action never exceeded {target}", (0.0, e_hi))


def wkb_energy(params: WellParams, n: int) -> float:
    """Energy solving f(E) = n + 1/2."""
    if n < 0:
        raise ValueError("n must be >= 0")
    target = n + 0.5
    fn = lambda e: action_f(params, e).value  # noqa: E731
    lo, hi = _bracket_upward(fn, target, params.v0)
    return bisect_secant(lambda e: fn(e) - target, lo, hi, width=1e-12, secant_steps=4)


def wkb_spectrum(params: WellParams, n_max: int) -> list[tuple[int, float]]:
    return [(n, wkb_energy(params, n)) for n in range(n_max + 1)]


def continued_barrier_action(params: WellParams, E: float) -> complex:
    """Barrier action F with u0 -> -v0, i.e. s -> i q and G -> g.

    F then equals i * pi * f(E), and T_WKB = 1/(1 + exp(2F)) has its poles
    where F = i (n + 1/2) pi.
    """
    g = math.sqrt(1.0 + E / params.v0)
    s = 1j * params.q
    return 2.0 * s * params.a * _artanh_minus(g)


def continued_t_wkb(params: WellParams, E: float) -> complex:
    return 1.0 / (1.0 + cmath.exp(2.0 * continued_barrier_action(params, E)))


def wkb_pole_condition(params: WellParams, n: int) -> float:
    """Energy of the n-th pole of the continued T_WKB."""
    if n < 0:
        raise ValueError("n must be >= 0")
    target = n + 0.5
    phase = lambda e: (continued_barrier_action(params, e) / (1j * math.pi)).real  # noqa: E731
    lo, hi = _bracket_upward(phase, target, params.v0)
    return bisect_secant(lambda e: phase(e) - target, lo, hi, width=1e-12, secant_steps=4)


def action_table(params: WellParams, grid, n_max: int = 3):
    """(E, f(E)) samples plus the WKB levels in metadata."""
    from .curves import CurveTable

    rows = [(float(e), action_f(params, float(e)).value) for e in grid.energies() if e >= 0]
    levels = wkb_spectrum(params, n_max)
    return CurveTable(
        columns=[("E", "energy"), ("f", "1")],
        rows=rows,
        metadata={
            "params": {"v0": params.v0, "a": params.a, "two_mu_over_hbar2": params.two_mu_over_hbar2},
            "grid": {"emin": grid.emin, "emax": grid.emax, "points": grid.points},
            "wkb_levels": [{"n": n, "E": e} for n, e in levels],
        },
    )


def tunnel_compare_table(params: BarrierParams, grid):
    """(E, T_exact, T_wkb); T_wkb is NaN at and above the barrier top."""
    from .curves import CurveTable
    from .scatter import rt_probabilities

    rows = []
    for e in grid.energies():
        e = float(e)
        tw = t_wkb(params, e) if e < 0 else math.nan
        rows.append((e, rt_probabilities(params, e).T, tw))
    return CurveTable(
        columns=[("E", "energy"), ("T_exact", "1"), ("T_wkb", "1")],
        rows=rows,
        metadata={
            "params": {"u0": params.u0, "a": params.a, "two_mu_over_hbar2": params.two_mu_over_hbar2},
            "grid": {"emin": grid.emin, "emax": grid.emax, "points": grid.points},
        },
    )
