"""The orthonormal eigenbasis J_n^(alpha) of A_2alpha on [0, 1].

    J_n(x) = x^(alpha/2) J_eta(n_eta x^((1+alpha)/2)) / D_n,   eta = alpha/(1+alpha)

with n_eta the n-th zero of J_eta and D_n^2 = (eta-1) J_{eta-1}(n_eta) J_{eta+1}(n_eta).
Eigenvalues are E_n = (1+alpha)^2 n_eta^2 / 4, i.e. A_2alpha J_n = -E_n J_n.
"""
from __future__ import annotations

import functools
import math
import threading
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Tuple

import numpy as np
from scipy import special as sp

from .conformable_core import Order, as_order
from .errors import NormalizationWarning
from .numerics import Tolerance, integrate
from .specfun import ZeroTable, bessel_zeros, hyp1f2

DEFAULT_MAX_N = 32
_QTOL = Tolerance(abs_tol=1e-13, rel_tol=1e-12, max_depth=60)


class JBasis:
    """Immutable view of J_n^(alpha), n = 1..max_n.

    Closed-form normalizations are checked against the numerical integral of
    J_n^2 on first use of each n (guarded by a lock).
    """

    def __init__(self, ord, max_n: int = DEFAULT_MAX_N):
        self.ord: Order = as_order(ord)
        if max_n < 1:
            raise ValueError("max_n must be >= 1")
        self.max_n = int(max_n)
        a = self.ord.alpha
        self.alpha = a
        self.eta = self.ord.eta
        self.zero_table: ZeroTable = bessel_zeros(self.eta, self.max_n + 1)
        zs = np.array(self.zero_table.zeros)
        prod = sp.jv(self.eta - 1.0, zs) * sp.jv(self.eta + 1.0, zs)
        radicand = (self.eta - 1.0) * prod
        if np.any(radicand <= 0):
            warnings.warn("negative normalization radicand; using its absolute value",
                          NormalizationWarning, stacklevel=2)
        self._prod = prod
        self._denoms = np.sqrt(np.abs(radicand))
        self.norms: Tuple[float, ...] = tuple(1.0 / self._denoms[: self.max_n])
        self._checked: set = set()
        self._lock = threading.Lock()

    def __repr__(self):
        return f"JBasis(alpha={self.alpha}, max_n={self.max_n})"

    def _check(self, n: int):
        if not 1 <= n <= self.max_n:
            raise IndexError(f"n = {n} outside 1..{self.max_n}")

    def zero(self, n: int) -> float:
        """n_eta (n may go up to max_n + 1)."""
        return self.zero_table[n - 1]

    def denominator(self, n: int) -> float:
        return float(self._denoms[n - 1])

    def norm(self, n: int) -> float:
        """N_n = 1/D_n, validated once against the quadrature of J_n^2."""
        self._check(n)
        with self._lock:
            if n not in self._checked:
                val = integrate(lambda x: j_eval(self, n, x) ** 2, (0.0, 1.0), _QTOL).value
                if abs(val - 1.0) > 1e-8:
                    warnings.warn(f"closed-form normalization of J_{n} integrates to {val!r}",
                                  NormalizationWarning, stacklevel=2)
                self._checked.add(n)
        return self.norms[n - 1]


@functools.lru_cache(maxsize=64)
def _cached_basis(alpha: float, max_n: int) -> JBasis:
    return JBasis(Order(alpha), max_n)


def get_basis(alpha, max_n: int = DEFAULT_MAX_N) -> JBasis:
    return _cached_basis(as_order(alpha).alpha, int(max_n))


def _raw(basis: JBasis, n: int, x):
    a, eta = basis.alpha, basis.eta
    x = np.asarray(x, dtype=float)
    with np.errstate(invalid="ignore"):
        z = np.clip(x, 0.0, 1.0) ** ((1.0 + a) / 2.0)
        out = z ** eta * sp.jv(eta, basis.zero(n) * z) / basis.denominator(n)
    out = np.where((x <= 0.0) | (x >= 1.0), 0.0, out)
    return out


def j_eval(basis: JBasis, n: int, x):
    """J_n^(alpha)(x) on [0, 1]; exactly zero at both ends."""
    basis._check(n)
    x_arr = np.asarray(x, dtype=float)
    if np.any((x_arr < 0) | (x_arr > 1)):
        raise ValueError("J_n is defined on [0, 1]")
    out = _raw(basis, n, x_arr)
    return float(out) if out.ndim == 0 else out


def j_deriv(basis: JBasis, n: int, x):
    """Analytic dJ_n/dx = n_eta (1+alpha)/2 x^(alpha-1/2) J_{eta-1}(n_eta z) / D_n."""
    basis._check(n)
    a, eta = basis.alpha, basis.eta
    x = np.asarray(x, dtype=float)
    k = basis.zero(n)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = x ** ((1.0 + a) / 2.0)
        out = k * (1.0 + a) / 2.0 * x ** (a - 0.5) * sp.jv(eta - 1.0, k * z) / basis.denominator(n)
    return float(out) if out.ndim == 0 else out


def j_func(basis: JBasis, n: int) -> Callable:
    return lambda x: j_eval(basis, n, x)


def eigenvalue(basis: JBasis, n: int) -> float:
    basis._check(n)
    return (1.0 + basis.alpha) ** 2 * basis.zero(n) ** 2 / 4.0


def j_zero_position(basis: JBasis, n: int, k: int) -> float:
    """Position of the k-th interior zero of J_n: (k_eta/n_eta)^(2/(1+alpha))."""
    basis._check(n)
    if not 1 <= k <= n - 1:
        raise IndexError(f"J_{n} has interior zeros k = 1..{n - 1}, got k = {k}")
    return (basis.zero(k) / basis.zero(n)) ** (2.0 / (1.0 + basis.alpha))


def _zero_positions(basis: JBasis, n: int):
    return [0.0] + [j_zero_position(basis, n, k) for k in range(1, n)] + [1.0]


def scaling_factors(basis: JBasis, n: int) -> Tuple[float, float]:
    """(s, N_s) with N_s J_n(s x) = J_{n+1}(x) on [0, 1/s].

    N_s = s^(-alpha/2) sqrt(prod_n / prod_{n+1}), prod_k = J_{eta-1}(k_eta) J_{eta+1}(k_eta),
    which follows directly from the identity.
    """
    basis._check(n)
    basis._check(n + 1)
    s = 1.0 / j_zero_position(basis, n + 1, n)
    ns = s ** (-basis.alpha / 2.0) * math.sqrt(basis._prod[n - 1] / basis._prod[n])
    return s, ns


def scaling_amplitude_printed(basis: JBasis, n: int) -> float:
    """The amplitude factor sqrt(s^(-1/2) prod_n/prod_{n+1}) in its printed form.

    At alpha = 1 this is ((n+1)/n)^(1/4) rather than 1, so it does not satisfy
    the scaling identity; kept for comparison only.
    """
    s, _ = scaling_factors(basis, n)
    return math.sqrt(s ** -0.5 * basis._prod[n - 1] / basis._prod[n])


@dataclass(frozen=True)
class MomentStats:
    moments: Tuple[float, ...]
    std_dev: float
    skewness: float
    kurtosis: float
    # mu3 / sigma^2: not a standardized moment, but the quantity whose small-alpha
    # limit is about 0.18 (see the decisions ledger)
    mu3_over_var: float = float("nan")


def _integrate01(basis, n, f):
    # Split at the interior zeros so each panel is a single lobe.
    pts = _zero_positions(basis, n)
    total = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        total += integrate(f, (lo, hi), _QTOL).value
    return total


def moment_stats(basis: JBasis, n: int, max_m: int = 4) -> MomentStats:
    """Raw moments M(m) = int x^m J_n^2 and standardized central moments."""
    basis._check(n)
    max_m = max(int(max_m), 4)
    M = tuple(_integrate01(basis, n, lambda x, m=m: x ** m * _raw(basis, n, x) ** 2)
              for m in range(1, max_m + 1))
    m1, m2, m3, m4 = M[:4]
    var = m2 - m1 ** 2
    mu3 = m3 - 3 * m1 * m2 + 2 * m1 ** 3
    mu4 = m4 - 4 * m1 * m3 + 6 * m1 ** 2 * m2 - 3 * m1 ** 4
    sd = math.sqrt(var)
    return MomentStats(M, sd, mu3 / sd ** 3, mu4 / var ** 2, mu3 / var)


def interzero_area(basis: JBasis, n: int, k: int) -> float:
    """int of J_n^2 between zero k and zero k+1 (k = 0 starts at x = 0)."""
    basis._check(n)
    if not 0 <= k <= n - 1:
        raise IndexError(f"J_{n} has segments k = 0..{n - 1}, got k = {k}")
    pts = _zero_positions(basis, n)
    return integrate(lambda x: _raw(basis, n, x) ** 2, (pts[k], pts[k + 1]), _QTOL).value


@dataclass(frozen=True)
class SeriesExpansion:
    ord: Order
    coefficients: Tuple[float, ...]
    target_description: str = ""
    basis: Optional[JBasis] = field(default=None, repr=False, compare=False)

    def partial_sum(self, x, N: Optional[int] = None):
        b = self.basis or get_basis(self.ord, max(len(self.coefficients), 1))
        N = len(self.coefficients) if N is None else N
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for n, a in enumerate(self.coefficients[:N], start=1):
            out = out + a * _raw(b, n, x)
        return out

    def l2_error(self, f: Callable, N: Optional[int] = None) -> float:
        r = integrate(lambda x: (np.asarray(f(x), dtype=float) - self.partial_sum(x, N)) ** 2,
                      (0.0, 1.0), Tolerance(1e-12, 1e-9, 60))
        return math.sqrt(max(r.value, 0.0))


def expand(basis: JBasis, f: Callable, N: int, description: str = "") -> SeriesExpansion:
    """a_n = int_0^1 f J_n, n = 1..N."""
    if N > basis.max_n:
        raise IndexError(f"N = {N} exceeds max_n = {basis.max_n}")
    coeffs = tuple(_integrate01(basis, n, lambda x, n=n: np.asarray(f(x), dtype=float) * _raw(basis, n, x))
                   for n in range(1, N + 1))
    return SeriesExpansion(basis.ord, coeffs, description, basis)


# Fourier-Bessel connection.  In z = x^((1+alpha)/2), J_n = N_n z^eta J_eta(n_eta z),
# so f = z^eta g(z) with g expanded in J_eta(n_eta z).

def fourier_bessel_cn(basis: JBasis, gamma_exp: float, n: int) -> float:
    """int_0^1 z^gamma J_eta(n_eta z) dz in closed form.

    = n_eta^eta 1F2((g+eta+1)/2; (g+eta+3)/2, eta+1; -n_eta^2/4) / (2^eta (g+eta+1) Gamma(eta+1))
    """
    if not gamma_exp > -1:
        raise ValueError("gamma_exp must be > -1")
    eta, k = basis.eta, basis.zero(n)
    a = 0.5 * (gamma_exp + eta + 1.0)
    f12 = hyp1f2(a, a + 1.0, eta + 1.0, -k * k / 4.0)
    return k ** eta * f12 / (2.0 ** eta * (gamma_exp + eta + 1.0) * sp.gamma(eta + 1.0))


def fourier_bessel_cn_printed(basis: JBasis, gamma_exp: float, n: int) -> float:
    """Same integral with Gamma((g+eta+2)/2) in the denominator, as printed.

    It does not reproduce the integral (at gamma = 1 it disagrees with the
    eta + 2 divisor of the g = 1 case); kept for the discrepancy report.
    """
    eta, k = basis.eta, basis.zero(n)
    a = 0.5 * (gamma_exp + eta + 1.0)
    f12 = hyp1f2(a, a + 1.0, eta + 1.0, -k * k / 4.0)
    return k ** eta * f12 / (2.0 ** eta * sp.gamma(0.5 * (gamma_exp + eta + 2.0)) * sp.gamma(eta + 1.0))


def fourier_bessel_coefficient(basis: JBasis, gamma_exp: float, n: int) -> float:
    """Expansion coefficient a_n of f(x) = x^(alpha/2) z^(gamma-1) in J_n.

    a_n = int f J_n dx = (2/(1+alpha)) N_n int_0^1 z^gamma J_eta(n_eta z) dz, from dx = 2/(1+alpha) z^((1-alpha)/(1+alpha)) dz.
    """
    basis._check(n)
    return 2.0 / (1.0 + basis.alpha) * basis.norms[n - 1] * fourier_bessel_cn(basis, gamma_exp, n)


def monomial_gamma(m: float, ord) -> float:
    """gamma such that x^(alpha/2) z^(gamma-1) = x^m, i.e. (2m+1)/(1+alpha)."""
    a = as_order(ord).alpha
    return (2.0 * m + 1.0) / (1.0 + a)


def monomial_gamma_printed(m: float, ord) -> float:
    """m + 1 - alpha/2; coincides with monomial_gamma only at alpha = 1."""
    return m + 1.0 - as_order(ord).alpha / 2.0


def fourier_bessel_expansion(basis: JBasis, gamma_exp: float, N: int) -> SeriesExpansion:
    coeffs = tuple(fourier_bessel_coefficient(basis, gamma_exp, n) for n in range(1, N + 1))
    return SeriesExpansion(basis.ord, coeffs, f"x^(alpha/2) z^({gamma_exp}-1)", basis)


def j_eval_hyp_printed(basis: JBasis, n: int, x):
    """J_n through the 0F1 form with the printed 2^2 divisor.

    Differs from j_eval by the constant factor 2^eta / 4.
    """
    eta, k = basis.eta, basis.zero(n)
    x = np.asarray(x, dtype=float)
    out = (k ** eta * x ** basis.alpha * sp.hyp0f1(eta + 1.0, -k * k / 4.0 * x ** (basis.alpha + 1.0))
           / (4.0 * sp.gamma(eta + 1.0) * basis.denominator(n)))
    return float(out) if out.ndim == 0 else out


def j_eval_hyp(basis: JBasis, n: int, x):
    """J_n through the standard J-0F1 identity (divisor 2^eta)."""
    return j_eval_hyp_printed(basis, n, x) * 4.0 / 2.0 ** basis.eta


def count_interior_zeros(basis: JBasis, n: int, points: int = 10_000) -> int:
    x = np.linspace(0.0, 1.0, points + 1)[1:-1]
    v = _raw(basis, n, x)
    return int(np.sum(np.sign(v[:-1]) * np.sign(v[1:]) < 0))
