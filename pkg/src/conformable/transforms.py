"""Conformable Fourier and Laplace transforms through the natural-variable reduction.

For f(t) = g(t^a / a) the conformable transforms are classical transforms of g
evaluated at a rescaled frequency:

    L_{a/b}[f](s) = L[g](s^b / b),      F_{a/b}[f](w) = F[g](w^b / b),

with F[g](W) = int g(u) e^{iWu} du.  Numerics therefore only ever integrate
in u.  Complex results are assembled from separate real and imaginary
quadratures.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import special as sp

from .conformable_core import Order, as_order
from .errors import DegenerateRoot, Divergent, DomainError, NotExplicit, UnknownEntry
from .numerics import Tolerance, differentiate, integrate

RealFunc = Callable[[float], float]
_TOL = Tolerance(abs_tol=1e-13, rel_tol=1e-11, max_depth=60)
_TAIL = 1e-14
_U_MAX = 1e5


@dataclass(frozen=True)
class TransformOrder:
    """alpha on the time side, beta on the frequency side, beta = lambda alpha."""
    alpha: Order
    beta: float
    lambda_ratio: Optional[float] = None
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_order(self.alpha))
        b = float(self.beta)
        if not 0.0 < b <= 1.0:
            raise DomainError(f"beta must lie in (0, 1], got {b}")
        object.__setattr__(self, "beta", b)
        lam = self.lambda_ratio
        if lam is None:
            lam = b / self.alpha.alpha
        elif self.strict and abs(b - lam * self.alpha.alpha) > 1e-12:
            raise DomainError(f"strict mode: beta = {b} is not lambda*alpha = {lam * self.alpha.alpha}")
        if not lam > 0:
            raise DomainError("lambda_ratio must be positive")
        object.__setattr__(self, "lambda_ratio", float(lam))

    @property
    def a(self) -> float:
        return self.alpha.alpha

    def S(self, s: float) -> float:
        """Laplace argument s^beta / beta."""
        return float(s) ** self.beta / self.beta

    def W(self, omega: float) -> float:
        """Fourier argument; negative omega maps to -|omega|^beta / beta."""
        w = float(omega)
        return math.copysign(abs(w) ** self.beta / self.beta, w)


def transform_order(alpha, beta=None, *, strict: bool = False) -> TransformOrder:
    a = as_order(alpha)
    return TransformOrder(a, a.alpha if beta is None else float(beta), strict=strict)


@dataclass(frozen=True)
class TimeFunction:
    """g(u) with u = t^a/a ("natural"), or a raw f(t) that must be converted first.

    ``two_sided`` means g is defined for u < 0 and supplies the negative
    branch f(-t^a/a); otherwise the negative branch is zero.
    """
    kind: str
    g: RealFunc
    decay_certificate: str = ""
    two_sided: bool = False
    dg: Optional[RealFunc] = field(default=None, repr=False)
    d2g: Optional[RealFunc] = field(default=None, repr=False)
    name: str = ""

    def __post_init__(self):
        kind = {"explicit_in_natural_variable": "natural"}.get(self.kind, self.kind)
        if kind not in ("natural", "raw"):
            raise ValueError("kind must be 'natural' (explicit_in_natural_variable) or 'raw'")
        object.__setattr__(self, "kind", kind)

    def derivative(self, order: int = 1) -> RealFunc:
        exact = self.dg if order == 1 else self.d2g
        if exact is not None:
            return exact
        return lambda u: differentiate(self.g, u, order)


def natural(g: RealFunc, *, two_sided=False, dg=None, d2g=None, name="", certificate="") -> TimeFunction:
    return TimeFunction("natural", g, certificate, two_sided, dg, d2g, name)


def make_explicit(f_of_t: RealFunc, alpha, name: str = "") -> TimeFunction:
    """Rewrite f(t) as g(u) = f((a u)^(1/a)) on u >= 0."""
    a = as_order(alpha).alpha
    return TimeFunction("natural", lambda u: f_of_t((a * u) ** (1.0 / a)), "", False, name=name)


def _require_natural(tf: TimeFunction):
    if tf.kind != "natural":
        raise NotExplicit("numeric transforms need a function explicit in t^alpha/alpha; "
                          "use make_explicit first")


def _cutoff(h: RealFunc, scale_hint: float = 1.0) -> float:
    """Upper limit U beyond which |h| stays below the tail bound (doubling search)."""
    grid = np.linspace(0.0, 1.0, 33)[1:] * scale_hint
    peak = max(abs(float(h(u))) for u in grid)
    peak = max(peak, 1e-300)
    U = scale_hint
    while U < _U_MAX:
        probe = U * np.array([1.0, 1.25, 1.5, 1.75, 2.0])
        vals = [abs(float(h(u))) * max(u, 1.0) for u in probe]
        if max(vals) < _TAIL * max(peak, 1.0):
            return U
        peak = max(peak, max(vals))
        U *= 2.0
    raise Divergent(f"integrand has not decayed by u = {_U_MAX:g}")


def _halfline(h: RealFunc, W: float = 0.0) -> complex:
    """int_0^inf h(u) e^{iWu} du, real and imaginary parts integrated separately."""
    U = _cutoff(h)
    panel = min(1.0, math.pi / abs(W)) if W else 1.0
    edges = np.arange(0.0, U + panel, panel)
    edges[-1] = max(edges[-1], U)
    re = im = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        re += integrate(lambda u: h(u) * np.cos(W * u), (lo, hi), _TOL).value
        if W:
            im += integrate(lambda u: h(u) * np.sin(W * u), (lo, hi), _TOL).value
    return complex(re, im)


def conformable_laplace(tf: TimeFunction, ord: TransformOrder, s: float) -> float:
    """Classical Laplace transform of g at S = s^beta/beta, by quadrature."""
    _require_natural(tf)
    if not s > 0:
        raise DomainError("Laplace transform needs s > 0")
    S = ord.S(s)
    return _halfline(lambda u: tf.g(u) * np.exp(-S * u)).real


def _fourier_u(g: RealFunc, two_sided: bool, W: float) -> complex:
    out = _halfline(g, W)
    if two_sided:
        out += _halfline(lambda u: g(-u), -W)
    return out


def conformable_fourier(tf: TimeFunction, ord: TransformOrder, omega: float) -> complex:
    """Classical Fourier transform int g(u) e^{iWu} du at W = omega^beta/beta."""
    _require_natural(tf)
    return _fourier_u(tf.g, tf.two_sided, ord.W(omega))


def inverse_fourier(ftilde: Callable[[float], complex], ord: TransformOrder, t: float,
                    two_sided: bool = True) -> float:
    """(1/2pi) int F(W) e^{-iWu} dW at u = t^a/a, with F given as a function of W."""
    u = float(t) ** ord.a / ord.a if t >= 0 else -abs(t) ** ord.a / ord.a

    def re_part(W):
        return (ftilde(W) * cmath.exp(-1j * W * u)).real

    def re_neg(W):
        return (ftilde(-W) * cmath.exp(1j * W * u)).real

    total = _halfline(re_part) + _halfline(re_neg)
    return total.real / (2.0 * math.pi)


# --------------------------------------------------------------------------
# conformable delta function

def delta_scale(x0: float, ord) -> float:
    """Weight w with delta(x^a - x0^a) = w delta(x - x0), w = 1/(a x0^(a-1))."""
    a = as_order(ord).alpha
    if not x0 > 0:
        raise DomainError("delta scaling needs x0 > 0")
    return 1.0 / (a * x0 ** (a - 1.0))


def delta_composite(f: RealFunc, roots: Sequence[float], ord, fprime: Optional[RealFunc] = None
                    ) -> List[Tuple[float, float]]:
    """delta(f(x^a)) as a list of (location, weight) point masses in x."""
    a = as_order(ord).alpha
    out = []
    for v0 in roots:
        v0 = float(v0)
        if not v0 > 0:
            raise DomainError("roots must be positive in v = x^alpha")
        d = float(fprime(v0)) if fprime is not None else differentiate(f, v0, 1)
        if abs(d) < 1e-12:
            raise DegenerateRoot(f"f'({v0}) = {d:.3g}: root is not simple")
        x0 = v0 ** (1.0 / a)
        out.append((x0, 1.0 / (a * x0 ** (a - 1.0) * abs(d))))
    return out


def delta_difference(x1: float, x2: float, ord) -> Tuple[float, float]:
    """delta(x^a - (x1^a - x2^a)) = w delta(x - x*), x* = (x1^a - x2^a)^(1/a)."""
    a = as_order(ord).alpha
    c = x1 ** a - x2 ** a
    if not c > 0:
        raise DomainError("need x1 > x2 > 0")
    xs = c ** (1.0 / a)
    return xs, 1.0 / (a * xs ** (a - 1.0))


def nascent_delta_integral(phi: RealFunc, f: RealFunc, ord, width: float,
                           support: Tuple[float, float]) -> float:
    """int phi(x) delta_eps(f(x^a)) dx with a Gaussian nascent delta of width eps."""
    a = as_order(ord).alpha

    def h(x):
        v = f(x ** a)
        return phi(x) * math.exp(-0.5 * (v / width) ** 2) / (width * math.sqrt(2 * math.pi))

    lo, hi = support
    pts = np.linspace(lo, hi, 401)
    return sum(integrate(h, (p, q), _TOL).value for p, q in zip(pts[:-1], pts[1:]))


# --------------------------------------------------------------------------
# derivative theorems

def _H_kappa(tf: TimeFunction, a: float):
    """D^1 f written in u: H(u) = (a|u|)^(1-1/a) g'(u), and its u-derivative."""
    c = 1.0 - 1.0 / a
    dg, d2g = tf.derivative(1), tf.derivative(2)

    def H(u):
        return (a * abs(u)) ** c * dg(u) if u != 0 else 0.0

    def dH(u):
        au = abs(u)
        return c * a ** c * au ** (c - 1.0) * math.copysign(1.0, u) * dg(u) + (a * au) ** c * d2g(u)

    return H, dH


def derivative_theorem_check(tf: TimeFunction, ord: TransformOrder, omega_grid: Iterable[float],
                             *, kappa: bool = False) -> float:
    """Worst relative error of F[D f] = -i W F[f].

    Plain case: D = D^alpha, whose u-form is g'.  With ``kappa`` the operator
    is D^kappa = D^alpha D^1 (kappa = 1 + alpha) and the identity checked is
    F[D^kappa f] = -i W F[D^1 f].
    """
    _require_natural(tf)
    if kappa:
        H, dH = _H_kappa(tf, ord.a)
    else:
        H, dH = tf.g, tf.derivative(1)
    worst = 0.0
    for w in omega_grid:
        W = ord.W(w)
        lhs = _fourier_u(dH, tf.two_sided, W)
        rhs = -1j * W * _fourier_u(H, tf.two_sided, W)
        worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-300))
    return worst


def kappa_square_claim_check(tf: TimeFunction, ord: TransformOrder, omega_grid: Iterable[float]) -> float:
    """Worst relative error of the claim F[D^kappa f] = (omega^beta/beta)^2 F[f]."""
    H, dH = _H_kappa(tf, ord.a)
    worst = 0.0
    for w in omega_grid:
        W = ord.W(w)
        lhs = _fourier_u(dH, tf.two_sided, W)
        rhs = W * W * _fourier_u(tf.g, tf.two_sided, W)
        worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-300))
    return worst


def transform_space_derivative_check(tf: TimeFunction, ord: TransformOrder,
                                     omega_grid: Iterable[float], *, printed: bool = False) -> float:
    """Worst relative error of F[u g] = -i D_omega^beta F[g] (omega > 0).

    D_omega^beta e^{iWu} = i u e^{iWu}, hence the -i; ``printed=True`` drops it.
    """
    _require_natural(tf)
    b = ord.beta
    ug = lambda u: u * tf.g(u)
    factor = 1.0 if printed else -1j
    worst = 0.0
    for w in omega_grid:
        w = float(w)
        if not w > 0:
            raise DomainError("omega grid must be positive")
        lhs = _fourier_u(ug, tf.two_sided, ord.W(w))
        # derivative in omega by finite differences on real and imaginary parts
        re = differentiate(lambda x: _fourier_u(tf.g, tf.two_sided, ord.W(x)).real, w, 1,
                           domain=(0.0, math.inf))
        im = differentiate(lambda x: _fourier_u(tf.g, tf.two_sided, ord.W(x)).imag, w, 1,
                           domain=(0.0, math.inf))
        rhs = factor * w ** (1.0 - b) * complex(re, im)
        worst = max(worst, abs(lhs - rhs) / max(abs(lhs), 1e-300))
    return worst


# --------------------------------------------------------------------------
# convolution

def conformable_convolution(F: RealFunc, G: RealFunc, ord, t: float, *, two_sided: bool = False) -> float:
    """(f * g)(t) = int F(v) G(t^a/a - v) dv.

    For one-sided F, G (zero at negative argument) the range is [0, t^a/a].
    """
    a = as_order(ord).alpha
    T = t ** a / a if t >= 0 else -abs(t) ** a / a
    if not two_sided:
        if T <= 0:
            return 0.0
        return integrate(lambda v: F(v) * G(T - v), (0.0, T), _TOL).value
    h = lambda v: F(v) * G(T - v)
    return (_halfline(h) + _halfline(lambda v: h(-v))).real


def convolution_in_u(F: RealFunc, G: RealFunc, T: float) -> float:
    if T <= 0:
        return 0.0
    return integrate(lambda v: F(v) * G(T - v), (0.0, T), _TOL).value


def product_formula_check(F: RealFunc, G: RealFunc, ord: TransformOrder,
                          omega_grid: Iterable[float]) -> float:
    """Worst relative error of F[f*g] = F[f] F[g] for one-sided F, G."""
    worst = 0.0
    conv = lambda T: convolution_in_u(F, G, T)
    for w in omega_grid:
        W = ord.W(w)
        lhs = _halfline(conv, W)
        rhs = _halfline(F, W) * _halfline(G, W)
        worst = max(worst, abs(lhs - rhs) / max(abs(rhs), 1e-300))
    return worst


# --------------------------------------------------------------------------
# Table I catalog

DEFAULT_PARAMS = {"k": 1.3, "q": 2.0, "sigma": 0.8, "p": 1.5, "n": 2}


@dataclass(frozen=True)
class TransformEntry:
    """One table row: time function plus printed and canonical closed forms.

    Closed forms take (s or omega, TransformOrder, params).  ``printed_*`` are
    transcribed as printed; ``laplace_closed``/``fourier_closed`` are the
    forms that follow from the definition (identical where the printed row is
    right).  ``flags`` names the printed forms that disagree.
    """
    name: str
    label: str
    time_form: Callable[[TransformOrder, Dict], TimeFunction]
    laplace_closed: Callable
    printed_laplace: Callable
    fourier_closed: Optional[Callable] = None
    printed_fourier: Optional[Callable] = None
    parameters: Tuple[str, ...] = ()
    flags: Tuple[str, ...] = ()


def _nat(g, two_sided=False, dg=None, d2g=None, name=""):
    return lambda o, P: natural(g(o, P), two_sided=two_sided,
                                dg=dg(o, P) if dg else None, d2g=d2g(o, P) if d2g else None, name=name)


def _sb(s, o):
    return s ** o.beta


def _wb(w, o):
    return math.copysign(abs(w) ** o.beta, w)


def _build_catalog() -> Dict[str, TransformEntry]:
    E = {}

    def add(e):
        E[e.name] = e

    lap_one = lambda s, o, P: o.beta / _sb(s, o)
    add(TransformEntry("one", "1", _nat(lambda o, P: (lambda u: 1.0)), lap_one, lap_one))

    def lap_tn(n):
        return lambda s, o, P: (o.a ** (n / o.a) * o.beta ** (n / o.a + 1) * sp.gamma(n / o.a + 1)
                                / _sb(s, o) ** (n / o.a + 1))
    add(TransformEntry("t", "t", _nat(lambda o, P: (lambda u: (o.a * u) ** (1 / o.a))),
                       lap_tn(1), lap_tn(1)))
    lap_tpow = lambda s, o, P: lap_tn(P["n"])(s, o, P)
    add(TransformEntry("t_pow_n", "t^n",
                       _nat(lambda o, P: (lambda u: o.a ** (P["n"] / o.a) * u ** (P["n"] / o.a))),
                       lap_tpow, lap_tpow, parameters=("n",)))
    lap_u = lambda s, o, P: (o.beta / _sb(s, o)) ** 2
    add(TransformEntry("natural", "t^a/a", _nat(lambda o, P: (lambda u: u)), lap_u, lap_u))
    lap_up = lambda s, o, P: (o.beta / _sb(s, o)) ** (P["p"] + 1) * sp.gamma(P["p"] + 1)
    add(TransformEntry("natural_pow_p", "(t^a/a)^p", _nat(lambda o, P: (lambda u: u ** P["p"])),
                       lap_up, lap_up, parameters=("p",)))

    lap_exp = lambda s, o, P: o.beta / (o.beta * P["k"] + _sb(s, o))
    four_exp = lambda w, o, P: o.beta / (o.beta * P["k"] - 1j * _wb(w, o))
    add(TransformEntry("exp_decay", "exp(-k t^a/a)",
                       _nat(lambda o, P: (lambda u: math.exp(-P["k"] * u)),
                            dg=lambda o, P: (lambda u: -P["k"] * math.exp(-P["k"] * u))),
                       lap_exp, lap_exp, four_exp, four_exp, parameters=("k",)))

    lap_pe = lambda s, o, P: (o.beta / (o.beta * P["k"] + _sb(s, o))) ** (P["p"] + 1) * sp.gamma(P["p"] + 1)
    four_pe = lambda w, o, P: (o.beta / (o.beta * P["k"] - 1j * _wb(w, o))) ** (P["p"] + 1) * sp.gamma(P["p"] + 1)
    add(TransformEntry("pow_exp_decay", "(t^a/a)^p exp(-k t^a/a)",
                       _nat(lambda o, P: (lambda u: u ** P["p"] * math.exp(-P["k"] * u))),
                       lap_pe, lap_pe, four_pe, four_pe, parameters=("p", "k")))

    lap_cos = lambda s, o, P: o.beta * _sb(s, o) / (_sb(s, o) ** 2 + o.beta ** 2 * P["q"] ** 2)
    lap_cos_printed = lambda s, o, P: o.beta * _sb(s, o) / (_sb(s, o) + o.beta ** 2 * P["q"] ** 2)
    add(TransformEntry("cos", "cos(q t^a/a)", _nat(lambda o, P: (lambda u: math.cos(P["q"] * u))),
                       lap_cos, lap_cos_printed, parameters=("q",), flags=("laplace",)))
    lap_sin = lambda s, o, P: o.beta ** 2 * P["q"] / (_sb(s, o) ** 2 + o.beta ** 2 * P["q"] ** 2)
    add(TransformEntry("sin", "sin(q t^a/a)", _nat(lambda o, P: (lambda u: math.sin(P["q"] * u))),
                       lap_sin, lap_sin, parameters=("q",)))

    def dc_lap(scale):
        def f(s, o, P):
            z = _sb(s, o) + o.beta * P["k"]
            return scale(o) * z / (z * z + o.beta ** 2 * P["q"] ** 2)
        return f

    def dc_four(scale):
        def f(w, o, P):
            z = o.beta * P["k"] - 1j * _wb(w, o)
            return scale(o) * z / (z * z + o.beta ** 2 * P["q"] ** 2)
        return f
    add(TransformEntry("damped_cos", "exp(-k t^a/a) cos(q t^a/a)",
                       _nat(lambda o, P: (lambda u: math.exp(-P["k"] * u) * math.cos(P["q"] * u))),
                       dc_lap(lambda o: o.beta), dc_lap(lambda o: 1.0),
                       dc_four(lambda o: o.beta), dc_four(lambda o: 1.0),
                       parameters=("k", "q"), flags=("laplace", "fourier")))

    def g_lap(s, o, P):
        sg, S = P["sigma"], _sb(s, o) / o.beta
        # e^{x^2} erfc(x) = erfcx(x), stable for large x
        return math.sqrt(math.pi) / (2 * sg) * sp.erfcx(S / (2 * sg))
    g_four = lambda w, o, P: (math.sqrt(math.pi) / P["sigma"]
                              * math.exp(-(_wb(w, o) / o.beta) ** 2 / (4 * P["sigma"] ** 2)))
    g_four_printed = lambda w, o, P: (1 / (math.sqrt(2) * P["sigma"])
                                      * math.exp(-(_wb(w, o) / o.beta) ** 2 / (4 * P["sigma"] ** 2)))
    add(TransformEntry("gaussian", "exp(-sigma^2 (t^a/a)^2)",
                       _nat(lambda o, P: (lambda u: math.exp(-P["sigma"] ** 2 * u * u)), two_sided=True,
                            dg=lambda o, P: (lambda u: -2 * P["sigma"] ** 2 * u * math.exp(-P["sigma"] ** 2 * u * u)),
                            d2g=lambda o, P: (lambda u: (4 * P["sigma"] ** 4 * u * u - 2 * P["sigma"] ** 2)
                                              * math.exp(-P["sigma"] ** 2 * u * u))),
                       g_lap, g_lap, g_four, g_four_printed, parameters=("sigma",), flags=("fourier",)))
    return E


CATALOG: Dict[str, TransformEntry] = _build_catalog()


def table_entry(name: str) -> TransformEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise UnknownEntry(f"no table entry {name!r}; known: {', '.join(CATALOG)}") from None


def _half_line_laplace(entry: TransformEntry, o: TransformOrder, P: Dict, s: float) -> float:
    tf = entry.time_form(o, P)
    return conformable_laplace(tf, o, s)


def verify_table(orders: Sequence[Tuple[float, float]] = ((1.0, 1.0), (0.5, 0.5), (0.75, 0.5)),
                 s_values: Sequence[float] = (0.5, 1.0, 2.0, 5.0),
                 omegas: Sequence[float] = (0.5, 1.0, 2.0),
                 params: Optional[Dict] = None, rtol: float = 1e-6) -> List[Dict]:
    """Closed forms (printed and canonical) against quadrature, one row per point.

    Fourier quadrature for half-line rows uses the one-sided convention (the
    negative branch is zero); the Gaussian is two-sided.
    """
    P = dict(DEFAULT_PARAMS, **(params or {}))
    rows = []
    for name, e in CATALOG.items():
        for a, b in orders:
            o = TransformOrder(Order(a), b)
            tf = e.time_form(o, P)
            for s in s_values:
                q = conformable_laplace(tf, o, s)
                for form, fn in (("canonical", e.laplace_closed), ("printed", e.printed_laplace)):
                    c = float(fn(s, o, P))
                    rel = abs(c - q) / max(abs(q), 1e-300)
                    rows.append(dict(entry=name, transform="laplace", form=form, alpha=a, beta=b,
                                     point=s, closed=c, quadrature=q, rel_error=rel,
                                     passed=rel < rtol, flagged="laplace" in e.flags))
            if e.fourier_closed is None:
                continue
            for w in omegas:
                q = conformable_fourier(tf, o, w)
                for form, fn in (("canonical", e.fourier_closed), ("printed", e.printed_fourier)):
                    c = complex(fn(w, o, P))
                    rel = abs(c - q) / max(abs(q), 1e-300)
                    rows.append(dict(entry=name, transform="fourier", form=form, alpha=a, beta=b,
                                     point=w, closed=c, quadrature=q, rel_error=rel,
                                     passed=rel < rtol, flagged="fourier" in e.flags))
    return rows
