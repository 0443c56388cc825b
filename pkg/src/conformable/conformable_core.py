"""Conformable derivative and integral, the natural variable, and SOLDE translation.

The conformable derivative of order alpha is D^a f(x) = x^(1-a) f'(x).  For
differentiable f it is the ordinary derivative with respect to the natural
variable u = x^a / a, which is what makes every equation here reducible to a
classical one.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Union

import numpy as np

from .errors import DomainError, NonFinite
from .numerics import Interval, Tolerance, differentiate, integrate

RealFunc = Callable[[float], float]

# D^a f(0) is taken as the right limit, evaluated here.
ZERO_LIMIT_X = 1e-8
_POS = (0.0, math.inf)


@dataclass(frozen=True)
class Order:
    alpha: float

    def __post_init__(self):
        a = self.alpha
        if not (isinstance(a, (int, float, np.floating)) and math.isfinite(a) and 0.0 < a <= 1.0):
            raise DomainError(f"order alpha must lie in (0, 1], got {a!r}")
        object.__setattr__(self, "alpha", float(a))

    @property
    def eta(self) -> float:
        return self.alpha / (1.0 + self.alpha)


def as_order(a: Union[Order, float]) -> Order:
    return a if isinstance(a, Order) else Order(float(a))


def to_natural(x, ord) -> float:
    a = as_order(ord).alpha
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("natural variable needs x >= 0")
    out = x ** a / a
    return float(out) if out.ndim == 0 else out


def from_natural(u, ord) -> float:
    a = as_order(ord).alpha
    u = np.asarray(u, dtype=float)
    if np.any(u < 0):
        raise DomainError("natural variable needs u >= 0")
    out = (a * u) ** (1.0 / a)
    return float(out) if out.ndim == 0 else out


def _deriv(f, x, order, exact):
    if exact is not None:
        return float(exact(x))
    return differentiate(f, x, order, domain=_POS)


def conformable_derivative(f: RealFunc, ord, x: float, *,
                           fprime: Optional[RealFunc] = None) -> float:
    """x^(1-alpha) f'(x); at x = 0 the right limit (evaluated at 1e-8)."""
    a = as_order(ord).alpha
    x = float(x)
    if x < 0:
        raise DomainError("conformable derivative needs x >= 0")
    if x == 0.0:
        x = ZERO_LIMIT_X
    val = x ** (1.0 - a) * _deriv(f, x, 1, fprime)
    if not math.isfinite(val):
        raise NonFinite(f"D^alpha f is not finite at x = {x}")
    return val


def conformable_integral(f: RealFunc, ord, iv, tol: Optional[Tolerance] = None) -> float:
    """Weighted integral of f(t) t^(alpha-1) over ``iv`` (lo >= 0)."""
    a = as_order(ord).alpha
    iv = iv if isinstance(iv, Interval) else Interval(*map(float, iv))
    if iv.lo < 0:
        raise DomainError("conformable integral needs lo >= 0")

    def g(t):
        return f(t) * t ** (a - 1.0)

    sing = "lo" if (iv.lo == 0.0 and a < 1.0) else None
    # x = u^(1/a) flattens the t^(a-1) weight exactly.
    power = 1.0 / a if sing else 2.0
    return integrate(g, iv, tol, singular=sing, power=power).value


def apply_A2alpha(f: RealFunc, ord, x: float, *, fprime: Optional[RealFunc] = None,
                  fsecond: Optional[RealFunc] = None) -> float:
    """(d/dx)[x^(1-a) f'] = x^(1-a) f'' + (1-a) x^(-a) f'."""
    a = as_order(ord).alpha
    x = float(x)
    if x <= 0:
        raise NonFinite("A_2alpha is evaluated only for x > 0")
    d1 = _deriv(f, x, 1, fprime)
    d2 = _deriv(f, x, 2, fsecond)
    val = x ** (1.0 - a) * d2 + (1.0 - a) * x ** (-a) * d1
    if not math.isfinite(val):
        raise NonFinite(f"A_2alpha f is not finite at x = {x}")
    return val


@dataclass(frozen=True)
class SoldeSpec:
    """p y'' + q y' + r y = s in the variable u."""
    p: RealFunc
    q: RealFunc
    r: RealFunc
    s: RealFunc = lambda u: 0.0
    name: str = ""


@dataclass(frozen=True)
class ConformableSolde:
    """P y'' + Q y' + R y = S in x."""
    P: RealFunc
    Q: RealFunc
    R: RealFunc
    S: RealFunc
    ord: Order
    name: str = ""


def translate_solde(spec: SoldeSpec, ord) -> ConformableSolde:
    o = as_order(ord)
    a = o.alpha

    def u(x):
        return x ** a / a

    def P(x):
        return spec.p(u(x)) * x ** (2.0 - 2.0 * a)

    def Q(x):
        return (1.0 - a) * x ** (1.0 - 2.0 * a) * spec.p(u(x)) + x ** (1.0 - a) * spec.q(u(x))

    def R(x):
        return spec.r(u(x))

    def S(x):
        return spec.s(u(x))

    return ConformableSolde(P, Q, R, S, o, spec.name)


def solde_residual(cs: ConformableSolde, y: RealFunc, grid: Iterable[float], *,
                   dy: Optional[RealFunc] = None, d2y: Optional[RealFunc] = None) -> float:
    """max over grid of |P y'' + Q y' + R y - S|."""
    worst = 0.0
    for x in grid:
        x = float(x)
        if x <= 0:
            raise DomainError("residual grid must lie in x > 0")
        r = (cs.P(x) * _deriv(y, x, 2, d2y) + cs.Q(x) * _deriv(y, x, 1, dy)
             + cs.R(x) * y(x) - cs.S(x))
        if not math.isfinite(r):
            raise NonFinite(f"residual is not finite at x = {x}")
        worst = max(worst, abs(r))
    return worst


# Worked examples: base equations in u and their classical solutions.

def bessel_spec(v: float) -> SoldeSpec:
    # Standard Bessel equation carries -v^2 (the sign used by its J/Y solutions).
    return SoldeSpec(lambda u: u * u, lambda u: u, lambda u: u * u - v * v, name=f"bessel(v={v})")


def confluent_spec(b: float) -> SoldeSpec:
    return SoldeSpec(lambda u: u, lambda u: b, lambda u: -1.0, name=f"0F1(b={b})")


def airy_spec() -> SoldeSpec:
    return SoldeSpec(lambda u: 1.0, lambda u: 0.0, lambda u: -u, name="airy")


def natural_solution(y_of_u: RealFunc, ord) -> RealFunc:
    """x -> y(x^alpha / alpha)."""
    a = as_order(ord).alpha
    return lambda x: y_of_u(x ** a / a)
