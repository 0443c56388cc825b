"""Real-order special functions: Gamma, Bessel J/Y and zeros, 0F1, 1F2, Airy.

Gamma, J, Y and Airy are thin wrappers over ``scipy.special`` (which is
accurate across the whole range we need, unlike a plain ascending series at
moderate argument).  Zero tables and 1F2 are computed here.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import special as sp

from .errors import DomainError, PoleError
from .numerics import Tolerance, find_root, integrate

__all__ = [
    "BesselOrder", "ZeroTable", "gamma", "bessel_j", "bessel_y", "bessel_jp",
    "bessel_zeros", "hyp0f1", "hyp1f2", "airy", "j_from_hyp0f1",
    "jhyp_printed_ratio",
]


@dataclass(frozen=True)
class BesselOrder:
    nu: float

    def __post_init__(self):
        if not (math.isfinite(self.nu) and self.nu > -1.0):
            raise DomainError(f"Bessel order must be > -1, got {self.nu}")


@dataclass(frozen=True)
class ZeroTable:
    nu: float
    zeros: Tuple[float, ...]

    def __post_init__(self):
        z = self.zeros
        if any(b <= a for a, b in zip(z, z[1:])) or (z and z[0] <= 0):
            raise ValueError("zero table must be positive and strictly increasing")

    def __len__(self):
        return len(self.zeros)

    def __getitem__(self, k):
        return self.zeros[k]


def _nu(nu) -> float:
    return nu.nu if isinstance(nu, BesselOrder) else float(nu)


def _is_nonpos_int(x: float) -> bool:
    return x <= 0 and float(x).is_integer()


def gamma(x):
    """Gamma function; PoleError at 0, -1, -2, ..."""
    xa = np.asarray(x, dtype=float)
    if np.any((xa <= 0) & (xa == np.round(xa))):
        raise PoleError(f"Gamma has a pole at {x}")
    out = sp.gamma(xa)
    return float(out) if out.ndim == 0 else out


def bessel_j(nu, z):
    """J_nu(z) for real order and z >= 0 (arrays accepted)."""
    za = np.asarray(z, dtype=float)
    if np.any(za < 0):
        raise DomainError("bessel_j needs z >= 0")
    out = sp.jv(_nu(nu), za)
    return float(out) if out.ndim == 0 else out


def bessel_jp(nu, z):
    """dJ_nu/dz via the recurrence (J_{nu-1} - J_{nu+1})/2."""
    v = _nu(nu)
    out = sp.jvp(v, np.asarray(z, dtype=float))
    return float(out) if np.ndim(out) == 0 else out


def bessel_y(nu, z):
    """Y_nu(z) for z > 0; integer orders use the log-series limit (scipy)."""
    za = np.asarray(z, dtype=float)
    if np.any(za <= 0):
        raise DomainError("bessel_y is singular at z = 0")
    out = sp.yv(_nu(nu), za)
    return float(out) if out.ndim == 0 else out


_ZERO_CACHE: dict = {}
_ZERO_LOCK = threading.Lock()
_ZTOL = Tolerance(abs_tol=1e-14, rel_tol=1e-14)


def _scan_zeros(nu: float, count: int) -> Tuple[float, ...]:
    # McMahon: j_{nu,k} ~ (k + nu/2 - 1/4) pi, so scanning this far is enough.
    hi = (count + nu / 2.0 + 1.0) * math.pi + 2.0
    while True:
        grid = np.arange(1e-9, hi, 0.05)
        vals = sp.jv(nu, grid)
        idx = np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) <= 0)[0]
        if len(idx) >= count:
            break
        hi *= 1.5
    out = []
    for i in idx[:count]:
        a, b = grid[i], grid[i + 1]
        if vals[i] == 0.0:
            out.append(float(a))
            continue
        out.append(find_root(lambda t: sp.jv(nu, t), (a, b), _ZTOL,
                             fprime=lambda t: sp.jvp(nu, t)))
    return tuple(out)


def bessel_zeros(nu, count: int) -> ZeroTable:
    """First ``count`` positive zeros of J_nu, cached per order."""
    v = BesselOrder(_nu(nu)).nu
    if count < 1:
        raise ValueError("count must be >= 1")
    with _ZERO_LOCK:
        have = _ZERO_CACHE.get(v)
        if have is None or len(have) < count:
            have = _scan_zeros(v, max(count, 2 * len(have) if have else count))
            _ZERO_CACHE[v] = have
    return ZeroTable(v, have[:count])


def hyp0f1(b: float, z):
    """Confluent hypergeometric limit function 0F1(;b;z)."""
    if _is_nonpos_int(b):
        raise PoleError(f"0F1 undefined for b = {b}")
    out = sp.hyp0f1(b, np.asarray(z, dtype=float))
    return float(out) if np.ndim(out) == 0 else out


def _series_1f2(a, b1, b2, z, max_terms=2000):
    term, total, peak, small = 1.0, 1.0, 1.0, 0
    for k in range(max_terms):
        term *= (a + k) / ((b1 + k) * (b2 + k) * (k + 1)) * z
        total += term
        peak = max(peak, abs(term))
        if abs(term) < 1e-18 * abs(total):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    return total, peak


def hyp1f2(a: float, b1: float, b2: float, z: float) -> float:
    """Generalized hypergeometric 1F2(a; b1, b2; z) for real arguments.

    Plain series when it is well conditioned.  For large negative z the
    alternating series cancels badly; then the integral representation
    1F2(a; a+1, b; z) = a * int_0^1 t^(a-1) 0F1(;b; z t) dt is used when it
    applies (it is the case met in Fourier-Bessel coefficients), and an
    extended-precision series otherwise.
    """
    if _is_nonpos_int(b1) or _is_nonpos_int(b2):
        raise PoleError(f"1F2 undefined for b1 = {b1}, b2 = {b2}")
    z = float(z)
    if z == 0.0:
        return 1.0
    total, peak = _series_1f2(a, b1, b2, z)
    if peak * 1e-16 <= 1e-12 * max(abs(total), 1e-300):
        return float(total)
    for bp, bo in ((b1, b2), (b2, b1)):
        if abs(bp - (a + 1.0)) < 1e-15 and a > 0:
            res = integrate(lambda t: a * t ** (a - 1.0) * sp.hyp0f1(bo, z * t), (0.0, 1.0),
                            Tolerance(1e-13, 1e-12, 60),
                            singular="lo" if a < 1 else None)
            return res.value
    import mpmath
    with mpmath.workdps(40 + int(math.log10(peak + 1.0))):
        return float(mpmath.hyp1f2(a, b1, b2, z))


def airy(x):
    """(Ai(x), Bi(x))."""
    ai, _, bi, _ = sp.airy(np.asarray(x, dtype=float))
    if np.ndim(ai) == 0:
        return float(ai), float(bi)
    return ai, bi


def j_from_hyp0f1(nu: float, z):
    """Standard identity J_nu(z) = (z/2)^nu 0F1(; nu+1; -z^2/4) / Gamma(nu+1)."""
    z = np.asarray(z, dtype=float)
    out = (z / 2.0) ** nu * sp.hyp0f1(nu + 1.0, -z * z / 4.0) / sp.gamma(nu + 1.0)
    return float(out) if out.ndim == 0 else out


def jhyp_printed_ratio(nu: float) -> float:
    """Ratio of the printed 0F1 prefactor (divisor 2**2) to the standard one (2**nu).

    Equals 2**nu / 4, which is 1 only at nu = 2; for the orders in use
    (0 < eta <= 1/2) the printed form is off by this constant factor.
    """
    return 2.0 ** nu / 4.0
