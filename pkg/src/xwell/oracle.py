"""
Independent checks for the closed-form solvers.

* Numerov shooting for the well spectrum (no Bessel functions involved).
* K_nu from the ascending I-series, K = pi (I_{-nu} - I_nu) / (2 sin pi nu),
  summed in multiprecision so the cancellation at large x is harmless.
* Direct quadrature of the WKB action integrals.
* A numerical 2x2 solve of the matching conditions at x = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import integrate

from . import specfun
from .bound import Parity
from .errors import BracketingFailed, NearIntegerOrderLimitFailed, OverflowBeforeXmax, SingularSystem, StepTooLarge
from .model import BarrierParams, WellParams, potential_value, turning_points, wavenumbers
from .scatter import MatchCoefficients

RESCALE_AT = 1e100


@dataclass(frozen=True)
class ShootingResult:
    E: float
    tail_value: float
    bracket: tuple[float, float]


def default_x_max(params: WellParams, E: float) -> float:
    x2 = turning_points(params, E)[1] if E > 0 else 0.0
    return x2 + 3.0 * params.a


def _numerov_tails(params: WellParams, parity: Parity, energies: np.ndarray, h: float, x_max: float) -> np.ndarray:
    """psi(x_max) for each energy; columns are rescaled independently."""
    c = params.two_mu_over_hbar2
    a, v0 = params.a, params.v0
    E = np.atleast_1d(np.asarray(energies, dtype=float))
    n = int(round(x_max / h))
    xs = np.arange(n + 1) * h
    V = v0 * np.expm1(2.0 * xs / a)
    f0 = c * (V[0] - E)
    fp = c * 2.0 * v0 / a          # f'(0+)
    fpp = c * 4.0 * v0 / a ** 2    # f''(0+)
    if Parity(parity) is Parity.EVEN:
        y0 = np.ones_like(E)
        y1 = 1.0 + f0 * h ** 2 / 2 + fp * h ** 3 / 6 + (fpp + f0 ** 2) * h ** 4 / 24
    else:
        y0 = np.zeros_like(E)
        y1 = h + f0 * h ** 3 / 6 + fp * h ** 4 / 12
    k = h * h / 12.0
    w_prev = 1.0 - k * (c * (V[0] - E))
    w_cur = 1.0 - k * (c * (V[1] - E))
    u_prev, u_cur = w_prev * y0, w_cur * y1
    for i in range(1, n):
        w_next = 1.0 - k * (c * (V[i + 1] - E))
        # Numerov in u = w y form: u_{i+1} = 2 u_i + 12 (1 - w_i) y_i - u_{i-1}
        y_cur = u_cur / w_cur
        u_next = 2.0 * u_cur + 12.0 * (1.0 - w_cur) * y_cur - u_prev
        u_prev, u_cur, w_cur = u_cur, u_next, w_next
        big = np.maximum(np.abs(u_prev), np.abs(u_cur))
        over = big > RESCALE_AT
        if np.any(over):
            u_prev = np.where(over, u_prev / big, u_prev)
            u_cur = np.where(over, u_cur / big, u_cur)
    out = u_cur / w_cur
    if not np.all(np.isfinite(out)):
        raise OverflowBeforeXmax("Numerov tail overflowed despite rescaling")
    return out


def numerov_shoot(params: WellParams, parity: Parity | str, E: float, h: float | None = None,
                  x_max: float | None = None) -> float:
    """psi(x_max) from integrating outward from x = 0 with even/odd start values.

    Only the sign of the returned tail is meaningful once rescaling kicks in.
    """
    h = 1e-3 * params.a if h is None else h
    if h > 1e-3 * params.a * (1 + 1e-12):
        raise StepTooLarge(f"h={h} exceeds 1e-3 a")
    x_max = default_x_max(params, E) if x_max is None else x_max
    return float(_numerov_tails(params, Parity(parity), np.array([E]), h, x_max)[0])


def _refine_brackets(params, parity, brackets, h, x_max, tol):
    """Multisection on all brackets at once: 16 sub-intervals per pass."""
    brackets = [list(b) for b in brackets]
    while brackets and max(b[1] - b[0] for b in brackets) > tol:
        pts = np.concatenate([np.linspace(lo, hi, 17) for lo, hi in brackets])
        tails = _numerov_tails(params, parity, pts, h, x_max).reshape(len(brackets), 17)
        for b, row, (lo, hi) in zip(brackets, tails, [tuple(b) for b in brackets]):
            grid = np.linspace(lo, hi, 17)
            s = np.sign(row)
            idx = np.nonzero(s[:-1] * s[1:] <= 0)[0]
            if len(idx) == 0:
                raise BracketingFailed("sign change lost during refinement", (lo, hi))
            j = idx[0]
            b[0], b[1] = grid[j], grid[j + 1]
    return [tuple(b) for b in brackets]


def shoot_spectrum(params: WellParams, n_max: int, h: float | None = None, step: float = 0.05,
                   tol: float = 1e-7) -> list[tuple[int, float]]:
    """Lowest n_max + 1 eigenvalues from sign changes of the Numerov tail."""
    h = 1e-3 * params.a if h is None else h
    need = {Parity.EVEN: (n_max + 2) // 2, Parity.ODD: (n_max + 1) // 2}
    e_hi = 10.0 * params.v0
    for _ in range(12):
        x_max = default_x_max(params, e_hi)
        grid = np.arange(step * params.v0, e_hi + 1e-12, step * params.v0)
        found = {}
        for par in (Parity.EVEN, Parity.ODD):
            tails = _numerov_tails(params, par, grid, h, x_max)
            s = np.sign(tails)
            idx = np.nonzero(s[:-1] * s[1:] < 0)[0]
            found[par] = [(grid[i], grid[i + 1]) for i in idx]
        if all(len(found[p]) >= need[p] for p in need):
            break
        e_hi *= 2.0
    else:
        raise BracketingFailed("Numerov scan did not find enough states", (0.0, e_hi))
    levels = []
    for par in (Parity.EVEN, Parity.ODD):
        for lo, hi in _refine_brackets(params, par, found[par][: need[par]], h, x_max, tol):
            levels.append((0.5 * (lo + hi), par))
    levels.sort()
    return [(n, E) for n, (E, _) in enumerate(levels[: n_max + 1])]


def numerov_inward(params: WellParams, E: float, x_start: float, x_stop: float,
                   h: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Integrate the decaying solution from x_start inward to x_stop (> 0).

    Inward integration keeps the decaying branch dominant, so ratios such as
    psi(x1)/psi(x2) deep in the forbidden region are reliable.  Returns (x, psi)
    ordered from x_start down to x_stop, with arbitrary overall scale.
    """
    h = 1e-3 * params.a if h is None else h
    c = params.two_mu_over_hbar2
    n = int(round((x_start - x_stop) / h))
    xs = x_start - np.arange(n + 1) * h
    f = c * (params.v0 * np.expm1(2.0 * xs / params.a) - E)
    w = 1.0 - h * h / 12.0 * f
    y = np.empty(n + 1)
    # WKB-like start: psi ~ exp(-int sqrt(f))
    y[0] = 1e-200
    y[1] = y[0] * math.exp(h * math.sqrt(max(f[0], 0.0)))
    for i in range(1, n):
        y[i + 1] = ((12.0 - 10.0 * w[i]) * y[i] - w[i - 1] * y[i - 1]) / w[i + 1]
        if abs(y[i + 1]) > RESCALE_AT:
            y[: i + 2] /= abs(y[i + 1])
    return xs, y


def shoot_bracket(params: WellParams, parity: Parity | str, lo: float, hi: float,
                  h: float | None = None, x_max: float | None = None, tol: float = 1e-7) -> ShootingResult:
    h = 1e-3 * params.a if h is None else h
    x_max = default_x_max(params, hi) if x_max is None else x_max
    t = _numerov_tails(params, Parity(parity), np.array([lo, hi]), h, x_max)
    if t[0] * t[1] > 0:
        raise BracketingFailed(f"no tail sign change on [{lo}, {hi}]", (lo, hi))
    (a, b), = _refine_brackets(params, Parity(parity), [(lo, hi)], h, x_max, tol)
    E = 0.5 * (a + b)
    return ShootingResult(E, numerov_shoot(params, parity, E, h, x_max), (a, b))


# --- K by the multiprecision I-series -----------------------------------------


def _mp_besseli_series(nu, x):
    half = mpmath.mpf(x) / 2
    q = half * half
    term = mpmath.power(half, nu) * mpmath.rgamma(nu + 1)
    total = term
    m = 0
    while True:
        m += 1
        term = term * q / (m * (m + nu))
        total += term
        if m > x and abs(term) < abs(total) * mpmath.eps:
            return total
        if m > 2000:
            raise NearIntegerOrderLimitFailed("I-series did not converge")


def k_series_oracle(nu: complex, x: float) -> complex:
    """K_nu(x) via pi (I_{-nu} - I_nu) / (2 sin pi nu); integer orders as the
    mean of nu +- delta, which is accurate to O(delta^2) since K is even."""
    nu = complex(nu)
    digits = 30 + int(2.0 * x / math.log(10.0)) + int(abs(nu.imag) * 1.5)
    with mpmath.workdps(digits):
        nu_mp = mpmath.mpc(nu.real, nu.imag)

        def k_at(v):
            s = mpmath.sin(mpmath.pi * v)
            return mpmath.pi * (_mp_besseli_series(-v, x) - _mp_besseli_series(v, x)) / (2 * s)

        dist = abs(nu_mp - mpmath.nint(nu.real))
        if dist < mpmath.mpf(10) ** (-8):
            d = mpmath.mpf(10) ** (-(digits // 3))
            val = (k_at(nu_mp + d) + k_at(nu_mp - d)) / 2
        else:
            val = k_at(nu_mp)
        return complex(val)


# --- WKB integrals by direct quadrature ----------------------------------------


def well_action_quadrature(params: WellParams, E: float) -> float:
    """(1/pi) int_{x1}^{x2} sqrt(c (E - V)) dx."""
    x1, x2 = turning_points(params, E)
    c = params.two_mu_over_hbar2
    f = lambda x: math.sqrt(max(0.0, c * (E - potential_value(params, x))))  # noqa: E731
    val, _ = integrate.quad(f, 0.0, x2, epsabs=1e-14, epsrel=1e-13, limit=200)
    return 2.0 * val / math.pi


def barrier_action_quadrature(params: BarrierParams, E: float) -> float:
    """int_{x1}^{x2} sqrt(c (V - E)) dx."""
    x1, x2 = turning_points(params, E)
    c = params.two_mu_over_hbar2
    f = lambda x: math.sqrt(max(0.0, c * (potential_value(params, x) - E)))  # noqa: E731
    val, _ = integrate.quad(f, 0.0, x2, epsabs=1e-14, epsrel=1e-13, limit=200)
    return 2.0 * val


# --- matching system ------------------------------------------------------------


def matching_linear_solve(params: BarrierParams, E: float, incidence: str = "left") -> MatchCoefficients:
    """A = 1 and (B, C) from

        B H1_{-nu} - C H1_nu   = -H2_nu
        B H1'_{-nu} + C H1'_nu = -H2'_nu

    (continuity of psi and of d psi/dx at x = 0; dz/dx changes sign there).

    ``incidence="right"`` mirrors the set-up: A H2 + B H1_{-nu} on x > 0 and
    C H1 on x < 0.  The matching rows are assembled from that picture.
    """
    w = wavenumbers(params, E)
    nu, z = w.order, w.lam
    h1, h2 = specfun.hankel_pair(nu, z)
    h1p, h2p = specfun.hankel_deriv_pair(nu, z)
    h1m, _ = specfun.hankel_pair(-nu, z)
    h1mp, _ = specfun.hankel_deriv_pair(-nu, z)
    if incidence == "left":
        # left side is (A, B) with dz/dx = -z/a, right side C with +z/a
        M = np.array([[h1m, -h1], [h1mp, h1p]], dtype=complex)
        rhs = np.array([-h2, -h2p], dtype=complex)
    elif incidence == "right":
        # right side (A, B) with +z/a, left side C with -z/a:
        #   A H2 + B H1m = C H1,  +(A H2' + B H1m') = -C H1'
        M = np.array([[h1m, -h1], [-h1mp, -h1p]], dtype=complex)
        rhs = np.array([-h2, h2p], dtype=complex)
    else:
        raise ValueError(f"incidence must be 'left' or 'right', got {incidence!r}")
    if abs(np.linalg.det(M)) < 1e-300 or np.linalg.cond(M) > 1e14:
        raise SingularSystem(f"matching system singular at E={E}")
    B, C = np.linalg.solve(M, rhs)
    return MatchCoefficients(1.0 + 0j, complex(B), complex(C))


def wavefunction_current(params: BarrierParams, E: float, coeffs: MatchCoefficients, x: float) -> float:
    """Im(psi* psi') * 2/c at x, from Hankel values directly (hbar = 1)."""
    w = wavenumbers(params, E)
    nu = w.order
    z = params.lam * math.exp(abs(x) / params.a)
    if x < 0:
        _, h2 = specfun.hankel_pair(nu, z)
        _, h2p = specfun.hankel_deriv_pair(nu, z)
        h1m, _ = specfun.hankel_pair(-nu, z)
        h1mp, _ = specfun.hankel_deriv_pair(-nu, z)
        psi = coeffs.A * h2 + coeffs.B * h1m
        dpsi = -(z / params.a) * (coeffs.A * h2p + coeffs.B * h1mp)
    else:
        h1, _ = specfun.hankel_pair(nu, z)
        h1p, _ = specfun.hankel_deriv_pair(nu, z)
        psi = coeffs.C * h1
        dpsi = (z / params.a) * coeffs.C * h1p
    # J = (hbar/mu) Im(psi* psi') and hbar/mu = 2/c
    return 2.0 / params.two_mu_over_hbar2 * (psi.conjugate() * dpsi).imag


# --- self-check ------------------------------------------------------------------


def wronskian_sample(n: int = 200, seed: int = 0) -> list[tuple[complex, float]]:
    """nu uniform on the disc |nu| <= 5, z uniform on [0.2, 20]."""
    rng = np.random.default_rng(seed)
    r = 5.0 * np.sqrt(rng.uniform(0.0, 1.0, n))
    th = rng.uniform(0.0, 2.0 * np.pi, n)
    zs = rng.uniform(0.2, 20.0, n)
    return [(complex(a * math.cos(t), a * math.sin(t)), float(z)) for a, t, z in zip(r, th, zs)]


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def run_selfcheck(seed: int = 0) -> list[CheckResult]:
    """Every oracle-versus-closed-form comparison at its gate tolerance."""
    from . import bound, scatter, semiclassical

    out = []
    well = WellParams(1.0, 1.0)

    exact = [s.energy for s in bound.solve_spectrum(well, 3)]
    shot = [E for _, E in shoot_spectrum(well, 3)]
    dev = max(abs(a - b) for a, b in zip(exact, shot))
    out.append(CheckResult("numerov_vs_bessel_roots", dev <= 1e-3, f"max |dE| = {dev:.3e}"))

    poles = [E for E, _ in scatter.pole_locate(well, 3)]
    dev = max(abs(a - b) for a, b in zip(exact, poles))
    out.append(CheckResult("poles_vs_spectrum", dev <= 1e-6, f"max |dE| = {dev:.3e}"))

    worst = 0.0
    for b in (BarrierParams(5.0, 1.0), BarrierParams(5.0, 0.2)):
        for E in (-3.0, 3.0, 8.0):
            lin = matching_linear_solve(b, E)
            cf = scatter.coefficients_ABC(b, E)
            for got, ref in ((cf.B / cf.A, lin.B), (cf.C / cf.A, lin.C)):
                worst = max(worst, abs(got - ref) / abs(ref))
    out.append(CheckResult("matching_solve_vs_closed_form", worst <= 1e-9, f"max rel = {worst:.3e}"))

    worst = 0.0
    for nu in (0.0, 0.5, 1.91727, 3.0, 6.0):
        for x in (0.1, 1.0, 5.0, 10.0):
            ref = k_series_oracle(1j * nu, x).real
            worst = max(worst, abs(specfun.k_imag_order(nu, x) - ref) / abs(ref))
    out.append(CheckResult("k_quadrature_vs_series", worst <= 1e-9, f"max rel = {worst:.3e}"))

    worst = 0.0
    for nu, z in wronskian_sample(200, seed):
        h1, h2, h1p, h2p = specfun.hankel_all(nu, z)
        worst = max(worst, abs(h1 * h2p - h1p * h2 + 4j / (math.pi * z)))
    out.append(CheckResult("hankel_wronskian", worst <= 1e-9, f"max defect = {worst:.3e}"))

    worst = 0.0
    for E in (0.5, 2.6471, 10.0, 19.0):
        ref = well_action_quadrature(well, E)
        worst = max(worst, abs(semiclassical.action_f(well, E).value - ref) / ref)
    bar = BarrierParams(5.0, 1.0)
    for E in (-0.5, -5.0, -20.0):
        ref = barrier_action_quadrature(bar, E)
        worst = max(worst, abs(semiclassical.barrier_action_F(bar, E).value - ref) / ref)
    out.append(CheckResult("wkb_closed_form_vs_quadrature", worst <= 1e-8, f"max rel = {worst:.3e}"))
    return out
