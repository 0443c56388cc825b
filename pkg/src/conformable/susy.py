"""Conformable SUSY partners for the particle in a box.

Two orderings are supported:

* ``symmetric``: H1 = -D^a D^a + V1 with phi_n = sin((n+1) pi x^a), the
  D^a D^a box.  Everything is the classical box in u = x^a/a.
* ``asymmetric``: H1 = Abar B with B = x^(1-a) d/dx + W and
  Abar = -d/dx + x^(a-1) W, so H1 = -A_2a + V1 and phi_n = J_{n+1}^(a).

In the asymmetric case W' = E_1 + x^(a-1) W^2 (Riccati form of the ground
state equation), so V1 = -E_1.  The partner that is exactly isospectral is
B Abar = -x^(1-a) d^2/dx^2 + V2 with V2 = E_1 + 2 x^(a-1) W^2 - (1-a) W / x.
The form -A_2a + x^(a-1) W^2 + W' obtained from A Bbar is kept as
``V2_printed`` for comparison; it is not isospectral for a < 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

import numpy as np

from .conformable_core import Order, as_order
from .eigenbasis import _raw, eigenvalue, get_basis, j_deriv
from .errors import DivisionNearZero
from .numerics import Tolerance, differentiate, integrate

ORDERINGS = ("symmetric", "asymmetric")
SAFE = (0.05, 0.95)
_QTOL = Tolerance(abs_tol=1e-12, rel_tol=1e-10, max_depth=50)
_DOM = (0.0, 1.0)


def _d(f: Callable, x: float, order: int = 1) -> float:
    # W and V blow up at the ends; keep the Ridders start step well inside
    h = min(0.05 * max(x, 0.2), 0.3 * min(x, 1.0 - x))
    return differentiate(f, x, order, h=h, domain=_DOM)


def _ordering(name: str) -> str:
    key = {"symmetric_alpha": "symmetric", "asymmetric_A2alpha": "asymmetric"}.get(name, name)
    if key not in ORDERINGS:
        raise ValueError(f"ordering must be one of {ORDERINGS}, got {name!r}")
    return key


def _guard(phi0: float, x: float, safe) -> None:
    if abs(phi0) < 1e-14 and safe[0] <= x <= safe[1]:
        raise DivisionNearZero(f"ground state vanishes at x = {x}")


def superpotential_from_ground(ordering: str, ord, phi0: Callable, dphi0: Optional[Callable] = None,
                               beta: Optional[float] = None, safe=SAFE) -> Callable:
    """W = -(D^a phi0 + D^b phi0)/(2 phi0) (symmetric), or W = -x^(1-a) phi0'/phi0.

    ``dphi0`` is an analytic phi0'; finite differences otherwise.  For the
    symmetric ordering beta defaults to alpha.
    """
    kind = _ordering(ordering)
    a = as_order(ord).alpha
    b = a if beta is None else float(beta)
    d = dphi0 if dphi0 is not None else (lambda x: _d(phi0, x, 1))

    def W(x):
        x = float(x)
        p = float(phi0(x))
        _guard(p, x, safe)
        dp = float(d(x))
        if kind == "symmetric":
            return -(x ** (1 - a) + x ** (1 - b)) * dp / (2.0 * p)
        return -x ** (1 - a) * dp / p

    return W


def box_superpotential(ord) -> Callable:
    a = as_order(ord).alpha
    return lambda x: -a * math.pi / math.tan(math.pi * x ** a)


def box_V2_closed(ord) -> Callable:
    a = as_order(ord).alpha
    return lambda x: a * a * math.pi ** 2 * (2.0 / math.sin(math.pi * x ** a) ** 2 - 1.0)


@dataclass(frozen=True)
class SusySystem:
    ordering: str
    ord: Order
    W: Callable
    V1: Callable
    V2: Callable
    ladder1: Tuple[float, ...]
    ladder2: Tuple[float, ...]
    phi: Callable = field(repr=False, default=None)
    dphi: Callable = field(repr=False, default=None)
    V2_printed: Optional[Callable] = field(repr=False, default=None)

    @property
    def alpha(self) -> float:
        return self.ord.alpha

    # operators acting on callables, evaluated at one point
    def kinetic(self, f: Callable, x: float) -> float:
        """-D^a D^a f (symmetric) or -x^(1-a) f'' (asymmetric partner side)."""
        a = self.alpha
        d2 = _d(f, x, 2)
        if self.ordering == "symmetric":
            d1 = _d(f, x, 1)
            return -(x ** (2 - 2 * a) * d2 + (1 - a) * x ** (1 - 2 * a) * d1)
        return -x ** (1 - a) * d2

    def H1(self, f: Callable, x: float) -> float:
        a = self.alpha
        d2 = _d(f, x, 2)
        d1 = _d(f, x, 1)
        if self.ordering == "symmetric":
            kin = -(x ** (2 - 2 * a) * d2 + (1 - a) * x ** (1 - 2 * a) * d1)
        else:
            kin = -(x ** (1 - a) * d2 + (1 - a) * x ** (-a) * d1)
        return kin + self.V1(x) * f(x)

    def H2(self, f: Callable, x: float) -> float:
        return self.kinetic(f, x) + self.V2(x) * f(x)

    def H2_printed(self, f: Callable, x: float) -> float:
        """-A_2a f + V2_printed f (asymmetric only)."""
        a = self.alpha
        d2 = _d(f, x, 2)
        d1 = _d(f, x, 1)
        return -(x ** (1 - a) * d2 + (1 - a) * x ** (-a) * d1) + self.V2_printed(x) * f(x)

    def annihilate(self, f: Callable, df: Callable) -> Callable:
        """D^a + W (symmetric) or B = x^(1-a) d/dx + W, given f and f'."""
        a, W = self.alpha, self.W

        def g(x):
            x = float(x)
            if x <= 0.0 or x >= 1.0:
                return 0.0
            return x ** (1 - a) * df(x) + W(x) * f(x)
        return g

    def create(self, f: Callable, x: float) -> float:
        """-D^a + W (symmetric) or Abar = -d/dx + x^(a-1) W."""
        a = self.alpha
        d1 = _d(f, x, 1)
        if self.ordering == "symmetric":
            return -x ** (1 - a) * d1 + self.W(x) * f(x)
        return -d1 + x ** (a - 1) * self.W(x) * f(x)


def _box_phi(a: float):
    def phi(n):
        k = (n + 1) * math.pi
        return lambda x: math.sin(k * float(x) ** a)

    def dphi(n):
        k = (n + 1) * math.pi
        return lambda x: k * a * float(x) ** (a - 1) * math.cos(k * float(x) ** a)
    return phi, dphi


def build_system(ordering: str, alpha, n_max: int = 6) -> SusySystem:
    kind = _ordering(ordering)
    o = as_order(alpha)
    a = o.alpha
    if kind == "symmetric":
        phi, dphi = _box_phi(a)
        W = superpotential_from_ground(kind, o, phi(0), dphi(0), safe=(0.0, 1.0))
        c = a * a * math.pi ** 2

        def DW(x):
            return c / math.sin(math.pi * x ** a) ** 2

        V1 = lambda x: W(x) ** 2 - DW(x)
        V2 = lambda x: W(x) ** 2 + DW(x)
        ladder1 = tuple(c * n * (n + 2) for n in range(n_max + 2))
        return SusySystem(kind, o, W, V1, V2, ladder1[:-1], ladder1[1:], phi, dphi)

    basis = get_basis(o, n_max + 3)
    E1 = eigenvalue(basis, 1)

    def phi(n):
        return lambda x: float(_raw(basis, n + 1, x))

    def dphi(n):
        return lambda x: float(j_deriv(basis, n + 1, x))

    W = superpotential_from_ground(kind, o, phi(0), dphi(0), safe=(0.0, 1.0))
    V1 = lambda x: x ** (a - 1) * W(x) ** 2 - (E1 + x ** (a - 1) * W(x) ** 2)
    V2 = lambda x: E1 + 2 * x ** (a - 1) * W(x) ** 2 - (1 - a) * W(x) / x
    V2p = lambda x: E1 + 2 * x ** (a - 1) * W(x) ** 2
    ladder1 = tuple(eigenvalue(basis, n + 1) - E1 for n in range(n_max + 2))
    return SusySystem(kind, o, W, V1, V2, ladder1[:-1], ladder1[1:], phi, dphi, V2p)


def partner_potentials(sys: SusySystem) -> Tuple[Callable, Callable]:
    return sys.V1, sys.V2


@dataclass(frozen=True)
class PartnerState:
    n: int
    values: Callable
    norm: float

    def __call__(self, x):
        return self.values(x)


def _l2(f: Callable, lo=0.0, hi=1.0) -> float:
    return math.sqrt(integrate(lambda x: f(x) ** 2, (lo, hi), _QTOL).value)


def partner_state(sys: SusySystem, n: int) -> PartnerState:
    """theta_n proportional to (annihilator) phi_{n+1}, L2-normalized on [0, 1]."""
    if not 0 <= n < len(sys.ladder2):
        raise IndexError(f"partner index n = {n} outside 0..{len(sys.ladder2) - 1}")
    raw = sys.annihilate(sys.phi(n + 1), sys.dphi(n + 1))
    nrm = _l2(raw)
    return PartnerState(n, lambda x: raw(x) / nrm, nrm)


def _grid(points: int = 91, safe=SAFE):
    return np.linspace(safe[0], safe[1], points)


def cosine_similarity(f: Callable, g: Callable, lo=SAFE[0], hi=SAFE[1]) -> float:
    fg = integrate(lambda x: f(x) * g(x), (lo, hi), _QTOL).value
    return fg / (_l2(f, lo, hi) * _l2(g, lo, hi))


def verify_isospectral(sys: SusySystem, n_max: int = 4, printed: bool = False) -> Dict:
    """max |H2 theta_n - Lambda^(1)_{n+1} theta_n| over the safe grid, per n < n_max."""
    rows = []
    H = sys.H2_printed if printed else sys.H2
    for n in range(min(n_max, len(sys.ladder2))):
        th = partner_state(sys, n)
        lam = sys.ladder1[n + 1]
        res = max(abs(H(th.values, x) - lam * th.values(x)) for x in _grid())
        rows.append(dict(n=n, Lambda2=sys.ladder2[n], Lambda1_next=lam, residual=res,
                         rel_residual=res / max(lam, 1.0)))
    worst = max(r["rel_residual"] for r in rows)
    return dict(rows=rows, worst_rel_residual=worst)


def box_theta0_residual(ord) -> float:
    """max |H2 sin^2(pi x^a) - 3 a^2 pi^2 sin^2(pi x^a)| on the safe grid (unnormalized)."""
    s = build_system("symmetric", ord, 2)
    a = s.alpha
    f = lambda x: math.sin(math.pi * float(x) ** a) ** 2
    lam = 3 * a * a * math.pi ** 2
    return max(abs(s.H2(f, x) - lam * f(x)) for x in _grid())


def intertwine_check(sys: SusySystem, n: int) -> float:
    """1 - |cos sim| between (creation operator) theta_n and phi_{n+1}."""
    th = partner_state(sys, n)
    back = lambda x: sys.create(th.values, x)
    return 1.0 - abs(cosine_similarity(back, sys.phi(n + 1)))


def factorization_residual(sys: SusySystem) -> float:
    """max |H1 phi_0| on the safe grid."""
    return max(abs(sys.H1(sys.phi(0), x)) for x in _grid())


def asymmetric_constraint_solve(ord, W: Optional[Callable] = None) -> Dict[str, Callable]:
    """W_B = Wbar_B = W, Wbar_A = x^(a-1) W_B, W_A = x^(a-1) Wbar_B."""
    o = as_order(ord)
    a = o.alpha
    if W is None:
        W = build_system("asymmetric", o, 2).W
    rel = lambda f: (lambda x: x ** (a - 1) * f(x))
    return dict(W_B=W, Wbar_B=W, Wbar_A=rel(W), W_A=rel(W))


def asymmetric_V1_check(ord) -> float:
    """Max |(Wbar_A W_B - W_B') - A_2a phi0/phi0| on the safe grid (numeric W')."""
    s = build_system("asymmetric", ord, 2)
    r = asymmetric_constraint_solve(s.ord, s.W)
    a = s.alpha
    phi0 = s.phi(0)
    worst = 0.0
    for x in _grid():
        v1 = r["Wbar_A"](x) * r["W_B"](x) - _d(r["W_B"], x, 1)
        d1 = _d(phi0, x, 1)
        d2 = _d(phi0, x, 2)
        ref = (x ** (1 - a) * d2 + (1 - a) * x ** (-a) * d1) / phi0(x)
        worst = max(worst, abs(v1 - ref))
    return worst


def general_symmetric_check(alpha, beta, phi0: Optional[Callable] = None) -> float:
    """For distinct orders, W^2 - (D^a W + D^b W)/2 against Delta phi0 / (4 phi0).

    S = (D^a + D^b)/2 is a first-order operator; with W = -S phi0/phi0 both
    sides equal S^2 phi0 / phi0.
    """
    a, b = as_order(alpha).alpha, as_order(beta).alpha
    if phi0 is None:
        phi0 = lambda x: math.sin(math.pi * x ** a) * (1.0 + 0.3 * x)
    c = lambda x: 0.5 * (x ** (1 - a) + x ** (1 - b))
    W = superpotential_from_ground("symmetric", a, phi0, beta=b)
    Sphi = lambda x: c(x) * _d(phi0, x, 1)
    worst = 0.0
    for x in _grid(31):
        lhs = W(x) ** 2 - c(x) * _d(W, x, 1)
        rhs = c(x) * _d(Sphi, x, 1) / phi0(x)
        worst = max(worst, abs(lhs - rhs) / max(1.0, abs(rhs)))
    return worst


def nilpotency_check(sys: SusySystem, points: int = 64, seed: int = 0) -> Tuple[float, float]:
    """||Q Q v|| and ||Qbar Qbar v|| with Q = [[0,0],[X,0]] built on a grid.

    X is the finite-difference matrix of the annihilator, Xbar that of the
    creation operator.
    """
    a = sys.alpha
    x = _grid(points)
    h = x[1] - x[0]
    D = (np.diag(np.ones(points - 1), 1) - np.diag(np.ones(points - 1), -1)) / (2 * h)
    Wd = np.diag([sys.W(t) for t in x])
    if sys.ordering == "symmetric":
        X = np.diag(x ** (1 - a)) @ D + Wd
        Xb = -np.diag(x ** (1 - a)) @ D + Wd
    else:
        X = np.diag(x ** (1 - a)) @ D + Wd
        Xb = -D + np.diag(x ** (a - 1)) @ Wd
    Z = np.zeros_like(X)
    Q = np.block([[Z, Z], [X, Z]])
    Qb = np.block([[Z, Xb], [Z, Z]])
    v = np.random.default_rng(seed).standard_normal(2 * points)
    return float(np.linalg.norm(Q @ (Q @ v))), float(np.linalg.norm(Qb @ (Qb @ v)))
