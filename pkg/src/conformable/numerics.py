"""Quadrature, root finding and numerical differentiation kernels.

Everything downstream (normalization checks, moments, transform oracles,
ODE residuals) goes through these three routines, so they are written to be
boringly robust rather than clever.
"""
from __future__ import annotations

import heapq
import math
import os
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import NonConvergence, NonFinite, NoSignChange

RealFunc = Callable[[float], float]

_EPS = np.finfo(float).eps

# 15-point Kronrod nodes on [0, 1] (symmetric), Kronrod weights, and the
# embedded 7-point Gauss weights (Gauss nodes are the odd-indexed Kronrod nodes).
_XGK = np.array([
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
])
_WGK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XGK[:-1], _XGK[::-1]])          # 15 nodes, ascending
_W_K = np.concatenate([_WGK[:-1], _WGK[::-1]])
_W_G = np.zeros(15)
_W_G[[1, 3, 5]] = _WG[:3]
_W_G[[13, 11, 9]] = _WG[:3]
_W_G[7] = _WG[3]


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError(f"interval endpoints must be finite, got [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)


@dataclass(frozen=True)
class Tolerance:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_depth: int = 60

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {v}")
        if self.max_depth < 1:
            raise ValueError("max_depth must be >= 1")


@dataclass(frozen=True)
class QuadResult:
    value: float
    abs_error_estimate: float
    evaluations: int

    def __float__(self) -> float:
        return self.value


def default_tolerance() -> Tolerance:
    """Package-wide default; ``CONFORMAL_TOL`` overrides both abs and rel parts."""
    env = os.environ.get("CONFORMAL_TOL")
    if env:
        t = float(env)
        return Tolerance(abs_tol=t, rel_tol=t)
    return Tolerance()


IntervalLike = Union[Interval, Sequence[float]]


def _as_interval(iv: IntervalLike) -> Interval:
    if isinstance(iv, Interval):
        return iv
    lo, hi = iv
    return Interval(float(lo), float(hi))


class _Evaluator:
    """Calls ``f`` on node arrays, falling back to a scalar loop if needed."""

    def __init__(self, f):
        self.f = f
        self.vectorized = None
        self.count = 0

    def __call__(self, x: np.ndarray) -> np.ndarray:
        self.count += x.size
        if self.vectorized is None:
            try:
                with np.errstate(all="ignore"):
                    y = np.asarray(self.f(x), dtype=float)
                if y.shape == x.shape or y.ndim == 0:
                    self.vectorized = True
                    return np.broadcast_to(y, x.shape).astype(float)
            except Exception:
                pass
            self.vectorized = False
        if self.vectorized:
            with np.errstate(all="ignore"):
                y = np.asarray(self.f(x), dtype=float)
            return np.broadcast_to(y, x.shape).astype(float)
        return np.array([float(self.f(float(xi))) for xi in x])


def _gk15(ev: _Evaluator, a: float, b: float):
    c = 0.5 * (a + b)
    h = 0.5 * (b - a)
    fx = ev(c + h * _NODES)
    if not np.all(np.isfinite(fx)):
        bad = (c + h * _NODES)[~np.isfinite(fx)][0]
        raise NonFinite(f"integrand is not finite at x = {bad!r}")
    resk = float(np.dot(_W_K, fx))
    resg = float(np.dot(_W_G, fx))
    reskh = 0.5 * resk
    resasc = float(np.dot(_W_K, np.abs(fx - reskh))) * abs(h)
    resabs = float(np.dot(_W_K, np.abs(fx))) * abs(h)
    err = abs((resk - resg) * h)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > np.finfo(float).tiny / (50.0 * _EPS):
        err = max(50.0 * _EPS * resabs, err)
    return resk * h, err, resabs


def _adaptive(ev: _Evaluator, a: float, b: float, tol: Tolerance) -> Tuple[float, float]:
    val, err, rabs = _gk15(ev, a, b)
    heap = [(-err, a, b, val, err, rabs, 0)]
    total, total_err, total_abs = val, err, rabs
    while True:
        target = max(tol.abs_tol, tol.rel_tol * abs(total))
        if total_err <= target or total_err <= 100.0 * _EPS * total_abs:
            return total, total_err
        _, lo, hi, v, e, ra, depth = heapq.heappop(heap)
        if depth >= tol.max_depth or len(heap) > 20000:
            exc = NonConvergence(
                f"adaptive quadrature exhausted depth {tol.max_depth} near [{lo}, {hi}] "
                f"(error estimate {total_err:.3g}, target {target:.3g})")
            exc.where = (lo, hi)
            raise exc
        mid = 0.5 * (lo + hi)
        try:
            v1, e1, r1 = _gk15(ev, lo, mid)
            v2, e2, r2 = _gk15(ev, mid, hi)
        except NonFinite:
            # nodes rounding onto a singular endpoint: let the caller substitute
            if min(lo - a, b - hi) > 1e-6 * (b - a):
                raise
            exc = NonConvergence(f"integrand blows up at an endpoint near [{lo}, {hi}]")
            exc.where = (lo, hi)
            raise exc
        total += v1 + v2 - v
        total_err += e1 + e2 - e
        total_abs += r1 + r2 - ra
        heapq.heappush(heap, (-e1, lo, mid, v1, e1, r1, depth + 1))
        heapq.heappush(heap, (-e2, mid, hi, v2, e2, r2, depth + 1))


def integrate(f: RealFunc, iv: IntervalLike, tol: Optional[Tolerance] = None, *,
              singular: Optional[str] = None, power: float = 2.0) -> QuadResult:
    """Adaptive 15-point Gauss-Kronrod quadrature of ``f`` over ``iv``.

    ``singular`` may be ``"lo"``, ``"hi"`` or ``"both"`` to flag power-law
    endpoint behaviour; the affected end is then flattened by the substitution
    ``x = lo + (hi - lo) * u**power`` (mirrored for the upper end) before the
    adaptive rule runs.  Without the flag, a failure that localizes at an
    endpoint is retried with that substitution at increasing powers, so
    integrable ``x**g`` endpoint singularities work either way.
    """
    iv = _as_interval(iv)
    tol = tol or default_tolerance()
    ev = _Evaluator(f)
    a, b = iv.lo, iv.hi
    L = b - a

    if singular is None:
        try:
            val, err = _adaptive(ev, a, b, tol)
        except NonConvergence as exc:
            end = _failing_end(exc, a, b)
            if end is None:
                raise
            return _retry_singular(f, iv, tol, end, exc)
    elif singular == "lo":
        def g(u):
            x = a + L * u ** power
            return _mapped(power * L * u ** (power - 1.0), _call(ev, x), x == a)
        val, err = _adaptive(_Evaluator(g), 0.0, 1.0, tol)
    elif singular == "hi":
        def g(v):
            x = b - L * v ** power
            return _mapped(power * L * v ** (power - 1.0), _call(ev, x), x == b)
        val, err = _adaptive(_Evaluator(g), 0.0, 1.0, tol)
    elif singular == "both":
        m = 0.5 * (a + b)
        half = Tolerance(tol.abs_tol / 2, tol.rel_tol, tol.max_depth)
        left = integrate(f, (a, m), half, singular="lo", power=power)
        right = integrate(f, (m, b), half, singular="hi", power=power)
        return QuadResult(left.value + right.value,
                          left.abs_error_estimate + right.abs_error_estimate,
                          left.evaluations + right.evaluations)
    else:
        raise ValueError(f"singular must be None, 'lo', 'hi' or 'both', got {singular!r}")
    return QuadResult(float(val), float(err), max(ev.count, 1))


def _failing_end(exc, a, b):
    lo, hi = getattr(exc, "where", (None, None))
    if lo is None:
        return None
    near = 1e-6 * (b - a)
    at_lo, at_hi = lo - a <= near, b - hi <= near
    if at_lo and at_hi:
        return "both"
    return "lo" if at_lo else "hi" if at_hi else None


def _retry_singular(f, iv, tol, end, exc):
    # Power-law endpoint x**g needs power >= 1/(g+1) to become bounded.
    for power in (2.0, 4.0, 8.0, 16.0):
        try:
            return integrate(f, iv, tol, singular=end, power=power)
        except NonConvergence:
            continue
    raise exc


def _mapped(jac, fx, at_end):
    # Once u**power underflows against the endpoint, the jacobian factor is
    # negligible and the substituted integrand is taken as its limit 0.
    with np.errstate(all="ignore"):
        out = np.asarray(jac * fx, dtype=float)
    bad = np.asarray(at_end) & ~np.isfinite(out)
    if np.any(bad):
        out = np.where(bad, 0.0, out)
    return out


def _call(ev: _Evaluator, x):
    x = np.asarray(x, dtype=float)
    if x.ndim == 0:
        return ev(x.reshape(1))[0]
    return ev(x)


def integrate_value(f: RealFunc, lo: float, hi: float, tol: Optional[Tolerance] = None,
                    **kw) -> float:
    """Shorthand returning only the integral value."""
    return integrate(f, (lo, hi), tol, **kw).value


def integrate_pieces(f: RealFunc, points: Sequence[float], tol: Optional[Tolerance] = None,
                     **kw) -> float:
    """Integrate over consecutive breakpoints (e.g. around discontinuities)."""
    pts = [float(p) for p in points]
    total = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        if hi > lo:
            total += integrate(f, (lo, hi), tol, **kw).value
    return total


# --------------------------------------------------------------------------
# root finding

def find_root(f: RealFunc, bracket: IntervalLike, tol: Optional[Tolerance] = None, *,
              fprime: Optional[RealFunc] = None, max_newton: int = 50) -> float:
    """Bracketed root: bisection down to width 1e-6, then safeguarded Newton.

    Newton steps that would leave the current bracket are replaced by a
    bisection step, so the bracket shrinks monotonically.  The returned point
    is certified by a sign change across ``[x - abs_tol/2, x + abs_tol/2]``
    (or an exact zero).
    """
    iv = _as_interval(bracket)
    tol = tol or default_tolerance()
    lo, hi = iv.lo, iv.hi
    flo, fhi = float(f(lo)), float(f(hi))
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if not (math.isfinite(flo) and math.isfinite(fhi)):
        raise NonFinite(f"non-finite function value at bracket ends [{lo}, {hi}]")
    if flo * fhi > 0:
        raise NoSignChange(f"f({lo}) = {flo:.3g} and f({hi}) = {fhi:.3g} have the same sign")

    coarse = max(1e-6, tol.abs_tol)
    while hi - lo > coarse:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            return mid
        fm = float(f(mid))
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    if hi - lo <= tol.abs_tol:
        return 0.5 * (lo + hi)

    if fprime is None:
        def fprime(t):
            return differentiate(f, t, 1, h=max(hi - lo, 1e-7))

    x = 0.5 * (lo + hi)
    for _ in range(max_newton):
        fx = float(f(x))
        if fx == 0.0:
            return x
        if (fx < 0) == (flo < 0):
            lo, flo = x, fx
        else:
            hi, fhi = x, fx
        if hi - lo <= max(tol.abs_tol, 4 * _EPS * abs(x)):
            return 0.5 * (lo + hi)
        d = float(fprime(x))
        step = fx / d if d != 0.0 and math.isfinite(d) else math.inf
        x_new = x - step
        if not (lo < x_new < hi):
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) < max(0.5 * tol.abs_tol, 2 * _EPS * abs(x)):
            half = max(0.5 * tol.abs_tol, 2 * _EPS * abs(x))
            a, b = max(lo, x_new - half), min(hi, x_new + half)
            fa, fb = float(f(a)), float(f(b))
            if fa == 0.0:
                return a
            if fb == 0.0 or fa * fb < 0:
                return x_new
        x = x_new
    # Newton stalled; finish by bisection, which always terminates.
    while hi - lo > tol.abs_tol:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            # bracket is down to adjacent floats
            break
        fm = float(f(mid))
        if fm == 0.0:
            return mid
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    return 0.5 * (lo + hi)


# --------------------------------------------------------------------------
# differentiation

_CON = 1.4
_NTAB = 10


def _stencil(f, x, h, order, side):
    if side == 0:
        if order == 1:
            return (f(x + h) - f(x - h)) / (2.0 * h)
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h)
    s = float(side)
    if order == 1:
        return s * (-3.0 * f(x) + 4.0 * f(x + s * h) - f(x + 2 * s * h)) / (2.0 * h)
    return (2.0 * f(x) - 5.0 * f(x + s * h) + 4.0 * f(x + 2 * s * h) - f(x + 3 * s * h)) / (h * h)


def differentiate(f: RealFunc, x: float, order: int = 1, *, h: Optional[float] = None,
                  domain: Optional[Tuple[float, float]] = None) -> float:
    """First or second derivative by Richardson-extrapolated finite differences.

    Central differences are used unless ``x`` sits within one initial step of
    an edge of ``domain``; then a second-order one-sided stencil pointing away
    from the edge is extrapolated instead.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    x = float(x)
    h0 = h if h is not None else 0.05 * max(abs(x), 0.2)
    side = 0
    if domain is not None:
        lo, hi = domain
        room_lo, room_hi = x - lo, hi - x
        if room_lo < h0 or room_hi < h0:
            room = min(room_lo, room_hi)
            if room > 0.05 * h0:
                h0 = 0.25 * room
            else:
                side = 1 if room_lo < room_hi else -1
                span = (hi - x) if side > 0 else (x - lo)
                h0 = min(h0, span / 3.5, max(room, 0.01 * h0))

    def fv(t):
        v = float(f(t))
        if not math.isfinite(v):
            raise NonFinite(f"derivative stencil hit a non-finite value at x = {t!r}")
        return v

    # Richardson exponents: central stencils expand in h^2, one-sided in h^2, h^3, ...
    def expo(j):
        return 2 * j if side == 0 else j + 1

    a = [[0.0] * _NTAB for _ in range(_NTAB)]
    hh = h0
    a[0][0] = _stencil(fv, x, hh, order, side)
    best, err = a[0][0], math.inf
    for i in range(1, _NTAB):
        hh /= _CON
        a[0][i] = _stencil(fv, x, hh, order, side)
        for j in range(1, i + 1):
            fac = _CON ** expo(j)
            a[j][i] = (a[j - 1][i] * fac - a[j - 1][i - 1]) / (fac - 1.0)
            errt = max(abs(a[j][i] - a[j - 1][i]), abs(a[j][i] - a[j - 1][i - 1]))
            if errt <= err:
                err, best = errt, a[j][i]
        if abs(a[i][i] - a[i - 1][i - 1]) >= 2.0 * err:
            break
    return best
