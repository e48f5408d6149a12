"""
Special functions for the exponential well and barrier.

Everything here works for a real positive argument and a complex order:

* ``gamma_complex`` / ``rgamma``: Lanczos approximation (g=7, 9 terms) with
  reflection for Re(z) < 1/2.
* ``bessel_j`` / ``bessel_i``: ascending power series, z <= 30.
* ``hankel_pair`` / ``hankel_deriv_pair``: H1, H2 built from J_{+nu}, J_{-nu}.
  Orders within 0.01 of an integer (sin(pi nu) ~ 0) are evaluated as the mean
  over a small circle in the order plane, which is exact for an entire
  function up to the K-th Taylor term.
* ``hankel_asymptotic``: large-argument expansion, used beyond the series
  domain.
* ``k_imag_order`` / ``k_imag_order_deriv``: K_{i nu}(x) from the cosine
  transform  K_{i nu}(x) = int_0^inf exp(-x cosh t) cos(nu t) dt  with
  composite 32-point Gauss-Legendre panels.

The series route (J, I) and the quadrature route (K) share no code, so they
can be checked against each other.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    ArgumentOutOfSpecfunDomain,
    ArgumentTooLargeForSeries,
    NearIntegerOrderLimitFailed,
    NonConvergence,
    PoleAtNonPositiveInteger,
    QuadratureNonConvergence,
)

EPS = np.finfo(float).eps

Z_MAX_SERIES = 30.0
MAX_TERMS = 200

# Hankel functions switch to the asymptotic expansion above this argument
# when the expansion has converged to machine precision.
Z_ASYMPTOTIC = 8.0

NEAR_INTEGER = 0.01
CIRCLE_RADIUS = 0.05
CIRCLE_POINTS = 16

GL_ORDER = 32
QUAD_TOL = 1e-12
QUAD_MAX_PANELS = 4096

_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class SpecFunResult:
    value: complex
    est_abs_error: float


def _nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _lanczos(z: complex) -> complex:
    # valid for Re(z) >= 1/2
    z -= 1.0
    x = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        x += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _SQRT_2PI * cmath.exp((z + 0.5) * cmath.log(t) - t) * x


def gamma_complex(z: complex) -> complex:
    """Gamma function of a complex argument.

    Raises PoleAtNonPositiveInteger at 0, -1, -2, ...
    """
    z = complex(z)
    if _nonpositive_integer(z):
        raise PoleAtNonPositiveInteger(f"Gamma has a pole at {z.real:g}")
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * _lanczos(1.0 - z))
    return _lanczos(z)


def rgamma(z: complex) -> complex:
    """1/Gamma(z), an entire function (exactly 0 at the poles of Gamma)."""
    z = complex(z)
    if _nonpositive_integer(z):
        return 0j
    if z.real < 0.5:
        return cmath.sin(math.pi * z) * _lanczos(1.0 - z) / math.pi
    return 1.0 / _lanczos(z)


def _check_arg(z: float) -> float:
    z = float(z)
    if not z > 0.0 or not math.isfinite(z):
        raise ArgumentOutOfSpecfunDomain(f"argument must be real and > 0, got {z!r}")
    return z


def _ascending_series(nu: complex, z: float, sign: float) -> SpecFunResult:
    """sum_m sign^m (z/2)^(2m+nu) / (m! Gamma(m+nu+1)).

    sign=-1 gives J_nu, sign=+1 gives I_nu.
    """
    if z > Z_MAX_SERIES:
        raise ArgumentTooLargeForSeries(
            f"z={z:g} exceeds the series domain z <= {Z_MAX_SERIES:g}; use hankel_asymptotic"
        )
    nu = complex(nu)
    # J_{-n} = (-1)^n J_n and I_{-n} = I_n for integer n
    if _nonpositive_integer(nu) and nu.real != 0.0:
        n = int(-nu.real)
        res = _ascending_series(complex(n), z, sign)
        f = (-1.0) ** n if sign < 0 else 1.0
        return SpecFunResult(f * res.value, res.est_abs_error)

    half = 0.5 * z
    q = sign * half * half
    lead = cmath.exp(nu * math.log(half))
    # start the term recurrence after any vanishing 1/Gamma factors
    term = lead * rgamma(nu + 1.0)
    total = term
    abs_sum = abs(term)
    for m in range(1, MAX_TERMS + 1):
        term = term * q / (m * (m + nu))
        total += term
        abs_sum += abs(term)
        if abs(term) <= EPS * abs(total) * 0.25 and m > half:
            err = abs(term) + 4.0 * EPS * abs_sum
            return SpecFunResult(total, err)
    raise NonConvergence(f"ascending series did not converge in {MAX_TERMS} terms (nu={nu}, z={z})")


def bessel_j(nu: complex, z: float, with_error: bool = False):
    """Bessel function of the first kind J_nu(z) for complex nu and 0 < z <= 30."""
    res = _ascending_series(nu, _check_arg(z), -1.0)
    return res if with_error else res.value


def bessel_i(nu: complex, z: float, with_error: bool = False):
    """Modified Bessel function I_nu(z) for complex nu and 0 < z <= 30."""
    res = _ascending_series(nu, _check_arg(z), 1.0)
    return res if with_error else res.value


def hankel_asymptotic(nu: complex, z: float, kind: int = 1, with_error: bool = False):
    """Large-z expansion of H^(kind)_nu(z).

    Summed until the smallest term; the size of that term is the error estimate.
    """
    z = _check_arg(z)
    nu = complex(nu)
    mu = 4.0 * nu * nu
    s = 1.0 if kind == 1 else -1.0
    ak = 1.0 + 0j
    total = ak
    prev = math.inf
    err = 0.0
    for k in range(1, MAX_TERMS + 1):
        ak = ak * (mu - (2 * k - 1) ** 2) / (k * 8.0 * z) * (1j * s)
        mag = abs(ak)
        if mag > prev:
            err = prev
            break
        total += ak
        prev = mag
        if mag <= 0.25 * EPS * abs(total):
            err = mag
            break
    else:
        err = prev
    phase = s * 1j * (z - 0.5 * nu * math.pi - 0.25 * math.pi)
    pref = math.sqrt(2.0 / (math.pi * z)) * cmath.exp(phase)
    val = pref * total
    if with_error:
        return SpecFunResult(val, abs(pref) * (err + 4.0 * EPS * abs(total)))
    return val


def _asymptotic_ok(nu: complex, z: float) -> bool:
    if z <= Z_ASYMPTOTIC:
        return False
    for order in (nu, nu - 1.0):
        for kind in (1, 2):
            r = hankel_asymptotic(order, z, kind, with_error=True)
            if r.est_abs_error > 1e-14 * max(abs(r.value), 1e-300):
                return False
    return True


def _h_from_j(nu: complex, z: float) -> tuple[complex, complex]:
    jp = _ascending_series(nu, z, -1.0).value
    jm = _ascending_series(-nu, z, -1.0).value
    den = 1j * cmath.sin(math.pi * nu)
    h1 = (jm - cmath.exp(-1j * math.pi * nu) * jp) / den
    h2 = (cmath.exp(1j * math.pi * nu) * jp - jm) / den
    return h1, h2


def _hankel_four_regular(nu: complex, z: float) -> tuple[complex, complex, complex, complex]:
    if z > Z_MAX_SERIES or (z > Z_ASYMPTOTIC and _asymptotic_ok(nu, z)):
        h1 = hankel_asymptotic(nu, z, 1)
        h2 = hankel_asymptotic(nu, z, 2)
        h1m = hankel_asymptotic(nu - 1.0, z, 1)
        h2m = hankel_asymptotic(nu - 1.0, z, 2)
    else:
        h1, h2 = _h_from_j(nu, z)
        h1m, h2m = _h_from_j(nu - 1.0, z)
    # H'_nu = H_{nu-1} - (nu/z) H_nu
    return h1, h2, h1m - nu / z * h1, h2m - nu / z * h2


def _distance_to_integer(nu: complex) -> float:
    return abs(nu - round(nu.real))


def _hankel_four(nu: complex, z: float) -> tuple[complex, complex, complex, complex]:
    nu = complex(nu)
    z = _check_arg(z)
    if _distance_to_integer(nu) >= NEAR_INTEGER:
        return _hankel_four_regular(nu, z)
    return _hankel_four_circle(nu, z)


def _hankel_four_circle(nu: complex, z: float) -> tuple[complex, complex, complex, complex]:
    acc = [0j, 0j, 0j, 0j]
    half = [0j, 0j, 0j, 0j]
    for k in range(CIRCLE_POINTS):
        w = nu + CIRCLE_RADIUS * cmath.exp(2j * math.pi * k / CIRCLE_POINTS)
        vals = _hankel_four_regular(w, z)
        for i, v in enumerate(vals):
            acc[i] += v
            if k % 2 == 0:
                half[i] += v
    out = tuple(a / CIRCLE_POINTS for a in acc)
    # the 8-point mean is a cheap convergence check on the 16-point mean
    for a, h in zip(out, half):
        h = h / (CIRCLE_POINTS // 2)
        if not abs(a - h) <= 1e-8 * max(abs(a), 1.0):
            raise NearIntegerOrderLimitFailed(f"order {nu} near an integer: circle mean unstable")
    return out


def hankel_pair(nu: complex, z: float) -> tuple[complex, complex]:
    """(H^(1)_nu(z), H^(2)_nu(z))."""
    h1, h2, _, _ = _hankel_four(nu, z)
    return h1, h2


def hankel_deriv_pair(nu: complex, z: float) -> tuple[complex, complex]:
    """(dH^(1)_nu/dz, dH^(2)_nu/dz)."""
    _, _, h1p, h2p = _hankel_four(nu, z)
    return h1p, h2p


def hankel_all(nu: complex, z: float) -> tuple[complex, complex, complex, complex]:
    """(H1, H2, H1', H2') in one pass."""
    return _hankel_four(nu, z)


# --- K of imaginary order by quadrature -------------------------------------


@lru_cache(maxsize=None)
def _gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def _t_max(x: float) -> float:
    # integrand below exp(-80) of its peak beyond this point
    return math.acosh(1.0 + 80.0 / x)


def _composite_gl(f, b: float, panels: int) -> float:
    nodes, weights = _gauss_legendre(GL_ORDER)
    h = b / panels
    left = np.arange(panels) * h
    t = (left[:, None] + 0.5 * h * (nodes[None, :] + 1.0)).ravel()
    return 0.5 * h * float(np.dot(np.tile(weights, panels), f(t)))


def _cosine_transform(nu: float, x: float, power_cosh: int) -> SpecFunResult:
    b = _t_max(x)

    def f(t):
        e = np.exp(-x * np.cosh(t))
        if power_cosh:
            e = e * np.cosh(t)
        return e * np.cos(nu * t)

    def mass(t):
        e = np.exp(-x * np.cosh(t))
        return e * np.cosh(t) if power_cosh else e

    panels = 4
    prev = _composite_gl(f, b, panels)
    scale = abs(_composite_gl(mass, b, panels))
    while panels < QUAD_MAX_PANELS:
        panels *= 2
        cur = _composite_gl(f, b, panels)
        diff = abs(cur - prev)
        if diff <= max(QUAD_TOL * min(1.0, abs(cur)), 64 * EPS * scale):
            return SpecFunResult(cur, diff + 8 * EPS * scale)
        prev = cur
    raise QuadratureNonConvergence(f"K_(i{nu})({x}) quadrature did not settle")


def k_imag_order(nu_im: float, x: float, with_error: bool = False):
    """K_{i nu}(x), real for real nu and x > 0; even in nu."""
    x = _check_arg(x)
    res = _cosine_transform(abs(float(nu_im)), x, 0)
    return res if with_error else res.value


def k_imag_order_deriv(nu_im: float, x: float, with_error: bool = False):
    """d/dx K_{i nu}(x) = -int_0^inf exp(-x cosh t) cosh t cos(nu t) dt."""
    x = _check_arg(x)
    res = _cosine_transform(abs(float(nu_im)), x, 1)
    res = SpecFunResult(-res.value, res.est_abs_error)
    return res if with_error else res.value
