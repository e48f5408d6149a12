"""Bracketing scans and root polishing shared by the spectrum solvers."""

from __future__ import annotations

import math
from typing import Callable, Iterable

import numpy as np

from .errors import BracketingFailed


def sign_changes(xs: Iterable[float], fs: Iterable[float]) -> list[tuple[float, float, float, float]]:
    """Adjacent grid pairs (x0, x1, f0, f1) across which f changes sign.

    An exact zero on the grid is reported as a degenerate bracket (x, x, 0, 0).
    """
    xs = np.asarray(list(xs), dtype=float)
    fs = np.asarray(list(fs), dtype=float)
    out = []
    for i in range(len(xs) - 1):
        f0, f1 = fs[i], fs[i + 1]
        if f0 == 0.0:
            out.append((xs[i], xs[i], 0.0, 0.0))
        elif f0 * f1 < 0.0:
            out.append((xs[i], xs[i + 1], f0, f1))
    if len(fs) and fs[-1] == 0.0:
        out.append((xs[-1], xs[-1], 0.0, 0.0))
    return out


def bisect_secant(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    flo: float | None = None,
    fhi: float | None = None,
    width: float = 1e-8,
    secant_steps: int = 3,
    max_iter: int = 200,
) -> float:
    """Bisection down to ``width`` then a few secant steps kept inside the bracket."""
    if lo == hi:
        return lo
    flo = f(lo) if flo is None else flo
    fhi = f(hi) if fhi is None else fhi
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise BracketingFailed(f"no sign change on [{lo}, {hi}]", (lo, hi))
    for _ in range(max_iter):
        if hi - lo <= width:
            break
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0.0:
            return mid
        if flo * fm < 0.0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    x0, f0, x1, f1 = lo, flo, hi, fhi
    best = lo if abs(flo) < abs(fhi) else hi
    for _ in range(secant_steps):
        if f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if not (lo <= x2 <= hi) or not math.isfinite(x2):
            break
        f2 = f(x2)
        best = x2
        if f2 == 0.0:
            break
        x0, f0, x1, f1 = x1, f1, x2, f2
    return best
