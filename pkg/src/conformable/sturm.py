"""Conformable Sturm-Liouville operators S = x^(beta-1) D^beta f(x) D^alpha.

The x^(beta-1) multiplier makes the operator self-adjoint,

    S y = (d/dx)[x^(1-alpha) f(x) y'],

independent of beta.  For f = x^p the eigenproblem S y + Lambda y = 0 is a
Bessel equation: with kappa = 1 + alpha - p and nu = (alpha - p)/kappa,

    y = x^((alpha-p)/2) Z_{+-nu}(2 sqrt(Lambda) x^(kappa/2) / kappa).

Cases 1-5 are special values of p; Case 6 is the weighted operator x^(-r) S.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Optional, Tuple

import numpy as np
from scipy import special as sp

from .conformable_core import Order, as_order
from .errors import DomainError, NonFinite, NormalizationWarning, UnmatchedCase
from .numerics import Tolerance, differentiate, integrate
from .specfun import bessel_zeros

RealFunc = Callable[[float], float]
_POS = (0.0, math.inf)
_QTOL = Tolerance(1e-13, 1e-12, 60)


@dataclass(frozen=True)
class SturmSpec:
    ord_alpha: Order
    ord_beta: Order
    f_exponent_p: float = 0.0
    variant: str = "plain"  # "plain" or "weighted" (x^-p S, Case 6)

    def __post_init__(self):
        object.__setattr__(self, "ord_alpha", as_order(self.ord_alpha))
        object.__setattr__(self, "ord_beta", as_order(self.ord_beta))
        if self.variant not in ("plain", "weighted"):
            raise ValueError("variant must be 'plain' or 'weighted'")
        if not math.isfinite(self.f_exponent_p):
            raise ValueError("f exponent must be finite")

    @property
    def alpha(self) -> float:
        return self.ord_alpha.alpha

    @property
    def p(self) -> float:
        return float(self.f_exponent_p)

    @property
    def kappa(self) -> float:
        return 1.0 + self.alpha - self.p

    @property
    def weight_exponent(self) -> float:
        return self.p if self.variant == "weighted" else 0.0


def make_spec(alpha, p: float = 0.0, beta=None, variant: str = "plain") -> SturmSpec:
    return SturmSpec(as_order(alpha), as_order(alpha if beta is None else beta), float(p), variant)


def _d(y, x, order, exact):
    if exact is not None:
        return float(exact(x))
    return differentiate(y, x, order, domain=_POS)


def apply_sturm(spec: SturmSpec, y: RealFunc, x: float, *, dy: Optional[RealFunc] = None,
                d2y: Optional[RealFunc] = None) -> float:
    """x^(beta-1) D^beta [x^p D^alpha y] through its expanded form.

    x^(1-a) f y'' + ((1-a) x^(-a) f + x^(1-a) f') y', divided by x^p for the
    weighted variant.
    """
    x = float(x)
    if x <= 0:
        raise NonFinite("Sturm operator is evaluated only for x > 0")
    a, p = spec.alpha, spec.p
    f = x ** p
    fp = p * x ** (p - 1.0) if p != 0 else 0.0
    d1, d2 = _d(y, x, 1, dy), _d(y, x, 2, d2y)
    val = x ** (1.0 - a) * f * d2 + ((1.0 - a) * x ** (-a) * f + x ** (1.0 - a) * fp) * d1
    if spec.variant == "weighted":
        val /= f
    if not math.isfinite(val):
        raise NonFinite(f"Sturm operator is not finite at x = {x}")
    return val


def raw_composition(spec: SturmSpec, y: RealFunc, x: float) -> float:
    """D^beta [f D^alpha y] by nested finite differences (no multiplier)."""
    a, b, p = spec.alpha, spec.ord_beta.alpha, spec.p

    def inner(t):
        return t ** p * t ** (1.0 - a) * differentiate(y, t, 1, domain=_POS)

    return x ** (1.0 - b) * differentiate(inner, x, 1, domain=_POS)


def sturm_residual(spec: SturmSpec, y: RealFunc, Lambda: float, grid: Iterable[float]) -> float:
    """max |S y + Lambda y| on the grid, relative to max(1, Lambda)."""
    worst = 0.0
    for x in grid:
        worst = max(worst, abs(apply_sturm(spec, y, x) + Lambda * y(x)))
    return worst / max(1.0, abs(Lambda))


@dataclass(frozen=True)
class SturmSolution:
    case: int
    branch_A: RealFunc
    branch_B: RealFunc
    Lambda: float
    constants: Tuple[float, float] = (1.0, 1.0)
    eigen_closed_form: Optional[Callable[[int], Tuple[float, RealFunc]]] = field(default=None, repr=False)
    note: str = ""

    def __call__(self, x):
        A, B = self.constants
        return A * self.branch_A(x) + B * self.branch_B(x)


def _close(a, b):
    return abs(a - b) < 1e-12


def match_case(spec: SturmSpec) -> int:
    """Number of the closed-form case a Sturm spec falls under."""
    a, p = spec.alpha, spec.p
    if spec.variant == "weighted":
        if p > 0:
            return 6
        raise UnmatchedCase("weighted operator needs r > 0 (Case 6)")
    if not _close(spec.ord_beta.alpha, a):
        # the multiplier removes beta, but the cases are stated for beta = alpha
        raise UnmatchedCase("Cases 1-5 are stated for beta = alpha")
    if _close(p, 0.0):
        return 1
    if _close(p, a):
        return 3
    if _close(p, a - 1.0):
        return 5
    if p > 0 and _close(p, round(p)):
        return 2
    if spec.kappa > 0:
        return 4
    raise UnmatchedCase(f"no closed form for p = {p} (kappa = {spec.kappa} <= 0)")


def _bessel_pair(order: float, c: float, expo: float, argpow: float):
    """x^expo Z(c x^argpow) for Z = J_order and the second solution."""
    def first(x):
        x = np.asarray(x, dtype=float)
        return x ** expo * sp.jv(order, c * x ** argpow)

    if _close(order, round(order)):
        def second(x):
            x = np.asarray(x, dtype=float)
            return x ** expo * sp.yv(order, c * x ** argpow)
    else:
        def second(x):
            x = np.asarray(x, dtype=float)
            return x ** expo * sp.jv(-order, c * x ** argpow)
    return first, second


def _scalar(g):
    def h(x):
        v = g(x)
        return float(v) if np.ndim(v) == 0 else v
    return h


def case_solution(spec: SturmSpec, Lambda: float, constants=(1.0, 1.0)) -> SturmSolution:
    """Closed-form solution pair of S y + Lambda y = 0 (or S y = 0 when Lambda = 0)."""
    case = match_case(spec)
    a, p = spec.alpha, spec.p
    Lambda = float(Lambda)
    if Lambda < 0:
        raise DomainError("closed forms are registered for Lambda >= 0")

    if case == 5:
        k = math.sqrt(Lambda)
        return SturmSolution(5, _scalar(lambda x: np.cos(k * np.asarray(x, dtype=float))),
                             _scalar(lambda x: np.sin(k * np.asarray(x, dtype=float))),
                             Lambda, tuple(constants))
    if Lambda == 0.0 and case in (1, 2, 3, 4):
        A_branch, B_branch = homogeneous_solutions(spec)
        return SturmSolution(case, A_branch, B_branch, 0.0, tuple(constants),
                             note="S y = 0: y = A x^(a-p)/(a-p) + B")
    if case == 6:
        kap = 1.0 + a
        order = (a - p) / kap
        c = 2.0 * math.sqrt(Lambda) / kap
        A_branch, B_branch = _bessel_pair(abs(order), c, (a - p) / 2.0, kap / 2.0)
        return SturmSolution(6, _scalar(A_branch), _scalar(B_branch), Lambda, tuple(constants))

    kap = spec.kappa
    if kap <= 0:
        raise UnmatchedCase(f"kappa = {kap} <= 0")
    order = (a - p) / kap
    c = 2.0 * math.sqrt(Lambda) / kap
    A_branch, B_branch = _bessel_pair(abs(order), c, (a - p) / 2.0, kap / 2.0)
    eig = (lambda n: case4_eigensystem(spec, n)) if p < a else None
    return SturmSolution(case, _scalar(A_branch), _scalar(B_branch), Lambda, tuple(constants), eig)


def homogeneous_solutions(spec: SturmSpec) -> Tuple[RealFunc, RealFunc]:
    """Solutions of S y = 0 for f = x^p: x^(a-p)/(a-p) (log x when p = a) and 1."""
    a, p = spec.alpha, spec.p
    if _close(a, p):
        first = _scalar(lambda x: np.log(np.asarray(x, dtype=float)))
    else:
        first = _scalar(lambda x: np.asarray(x, dtype=float) ** (a - p) / (a - p))
    return first, _scalar(lambda x: np.ones_like(np.asarray(x, dtype=float)))


def forced_solution(spec: SturmSpec, Lambda: float, constants=(1.0, 1.0)) -> RealFunc:
    """General solution of S y = Lambda (constant right side)."""
    a, p = spec.alpha, spec.p
    A, B = constants
    h1, _ = homogeneous_solutions(spec)
    if _close(a - p + 1.0, 0.0):
        raise UnmatchedCase("forced solution needs p != alpha + 1")
    return _scalar(lambda x: Lambda * np.asarray(x, dtype=float) ** (a - p + 1.0) / (a - p + 1.0)
                   + A * h1(x) + B)


def case4_eigensystem(spec: SturmSpec, n: int) -> Tuple[float, RealFunc]:
    """(Lambda_n, y_n) for y(0) = y(1) = 0, requiring p < alpha.

    y_n = B x^((a-p)/2) J_nu(k_n x^(kappa/2)), k_n the n-th zero of J_nu,
    Lambda_n = (kappa k_n / 2)^2 and B^-2 = (-1/kappa) J_{nu-1}(k_n) J_{nu+1}(k_n).
    """
    if n < 1:
        raise IndexError("n must be >= 1")
    if spec.variant != "plain":
        raise UnmatchedCase("eigensystem is for the plain operator")
    a, p, kap = spec.alpha, spec.p, spec.kappa
    if not p < a:
        raise UnmatchedCase(f"y(0) = 0 cannot hold for p >= alpha (p = {p}, alpha = {a})")
    nu = (a - p) / kap
    k = bessel_zeros(nu, n)[n - 1]
    radicand = (-1.0 / kap) * sp.jv(nu - 1.0, k) * sp.jv(nu + 1.0, k)
    if radicand <= 0:
        warnings.warn("negative normalization radicand; using its absolute value",
                      NormalizationWarning, stacklevel=2)
    B = 1.0 / math.sqrt(abs(radicand))
    Lam = (kap * k / 2.0) ** 2

    def y(x):
        x = np.asarray(x, dtype=float)
        out = B * np.clip(x, 0, None) ** ((a - p) / 2.0) * sp.jv(nu, k * np.clip(x, 0, None) ** (kap / 2.0))
        out = np.where((x <= 0) | (x >= 1), 0.0, out)
        return float(out) if out.ndim == 0 else out

    return Lam, y


def case4_norm_check(spec: SturmSpec, n: int) -> float:
    _, y = case4_eigensystem(spec, n)
    return integrate(lambda x: y(x) ** 2, (0.0, 1.0), _QTOL).value


def solution_lambda_dependence_check(alpha1, p1, alpha2, p2, n_max: int = 3,
                                     grid: Optional[np.ndarray] = None) -> Dict[str, float]:
    """Compare Case-4 eigenfunctions for two (alpha, p) with the same alpha - p."""
    s1, s2 = make_spec(alpha1, p1), make_spec(alpha2, p2)
    lam1, lam2 = s1.alpha - s1.p, s2.alpha - s2.p
    if not _close(lam1, lam2):
        raise ValueError("alpha - p must agree")
    x = np.linspace(0.0, 1.0, 401) if grid is None else np.asarray(grid, dtype=float)
    worst, worst_L = 0.0, 0.0
    for n in range(1, n_max + 1):
        L1, y1 = case4_eigensystem(s1, n)
        L2, y2 = case4_eigensystem(s2, n)
        worst = max(worst, float(np.max(np.abs(y1(x) - y2(x)))))
        worst_L = max(worst_L, abs(L1 - L2) / L1)
    return {
        "lambda": lam1,
        "order_1": lam1 / s1.kappa, "order_2": lam2 / s2.kappa,
        "exponent_1": lam1 / 2.0, "exponent_2": lam2 / 2.0,
        "kappa_1": s1.kappa, "kappa_2": s2.kappa,
        "max_abs_diff": worst, "max_rel_eigen_diff": worst_L,
    }


def conjecture_probe(alpha, p: float) -> Dict[str, object]:
    """Does the Case-4 boundary-value formula survive for p outside (0, alpha)?"""
    spec = make_spec(alpha, p)
    a, kap = spec.alpha, spec.kappa
    rep: Dict[str, object] = {"alpha": a, "p": p, "kappa": kap}
    if kap <= 0:
        rep.update(valid=False, reason="kappa <= 0: Bessel order and argument undefined")
        return rep
    nu = (a - p) / kap
    # y ~ x^((a-p)/2 + kappa nu/2) = x^(a-p) near 0
    rep["order"] = nu
    rep["small_x_exponent"] = a - p
    if a - p > 0:
        rep.update(valid=True, reason="y(0) = 0 holds")
    else:
        rep.update(valid=False, reason="y ~ x^(alpha-p) does not vanish at 0 (no y(0) = 0 solution)")
    return rep
