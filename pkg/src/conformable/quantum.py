"""First-order perturbation theory on the conformable particle in a box.

Units with hbar = 1 and 2m = 1: the unperturbed Hamiltonian is -A_2alpha with
eigenpairs (E_n, J_n^(alpha)) and the perturbed one is -A_2alpha + lam V.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .conformable_core import as_order
from .eigenbasis import JBasis, _raw, eigenvalue, get_basis
from .errors import DomainError, TruncationWarning
from .numerics import Tolerance, integrate

DEFAULT_N_BASIS = 24
_QTOL = Tolerance(abs_tol=1e-13, rel_tol=1e-11, max_depth=60)
PERTURBATION_KINDS = ("linear", "step_left", "step_right", "power")


@dataclass(frozen=True)
class Perturbation:
    """V_I scaled by strength_lambda.

    linear: E_1^(0) x.  step_left: E_1^(0) on [0, edge], edge = 1/4 by default.
    step_right: E_1^(0) on (edge, 1], edge = 3/4.  power: x^exponent.
    """
    kind: str
    strength_lambda: float = 1.0
    edge: Optional[float] = None
    exponent: float = 1.0

    def __post_init__(self):
        if self.kind not in PERTURBATION_KINDS:
            raise ValueError(f"unknown perturbation kind {self.kind!r}")
        if self.kind in ("step_left", "step_right"):
            e = self.edge if self.edge is not None else (0.25 if self.kind == "step_left" else 0.75)
            if not 0.0 < e < 1.0:
                raise DomainError("step edge must lie in (0, 1)")
            object.__setattr__(self, "edge", float(e))

    def potential(self, basis: JBasis) -> Callable:
        """V_I(x) without the strength factor (vectorized)."""
        E1 = eigenvalue(basis, 1)
        if self.kind == "linear":
            return lambda x: E1 * np.asarray(x, dtype=float)
        if self.kind == "power":
            p = self.exponent
            return lambda x: np.asarray(x, dtype=float) ** p
        e = self.edge
        if self.kind == "step_left":
            return lambda x: np.where(np.asarray(x, dtype=float) <= e, E1, 0.0)
        return lambda x: np.where(np.asarray(x, dtype=float) > e, E1, 0.0)

    def breakpoints(self) -> Tuple[float, ...]:
        return (self.edge,) if self.edge is not None else ()


def matrix_element(basis: JBasis, V: Callable, m: int, n: int, breakpoints: Sequence[float] = ()) -> float:
    """<J_m | V | J_n> on [0, 1], split at the given breakpoints."""
    basis._check(m)
    basis._check(n)
    if m > n:
        m, n = n, m
    pts = [0.0, *sorted(b for b in breakpoints if 0.0 < b < 1.0), 1.0]

    def f(x):
        return _raw(basis, m, x) * np.asarray(V(x), dtype=float) * _raw(basis, n, x)

    return sum(integrate(f, (lo, hi), _QTOL).value for lo, hi in zip(pts[:-1], pts[1:]))


def _column(basis: JBasis, V: Callable, n: int, N: int, bps) -> np.ndarray:
    return np.array([matrix_element(basis, V, m, n, bps) for m in range(1, N + 1)])


@dataclass(frozen=True)
class PerturbedState:
    """psi = psi_n + lam sum_{m != n} c_m psi_m with c_m = V_mn/(E_n - E_m)."""
    n: int
    energy0: float
    energy1_correction: float
    coefficients: Tuple[float, ...]
    basis_size: int
    strength_lambda: float = 0.0
    converged: bool = True
    basis: Optional[JBasis] = field(default=None, repr=False, compare=False)

    def vector(self) -> np.ndarray:
        """Expansion coefficients of psi in J_1..J_N."""
        v = self.strength_lambda * np.array(self.coefficients)
        v[self.n - 1] = 1.0
        return v

    def wavefunction(self, x, normalize: bool = False):
        x = np.asarray(x, dtype=float)
        v = self.vector()
        out = np.zeros_like(x)
        for m, c in enumerate(v, start=1):
            if c != 0.0:
                out = out + c * _raw(self.basis, m, x)
        if normalize:
            out = out / math.sqrt(float(v @ v))
        return out

    def mean_position(self) -> float:
        """M(1) of the normalized |psi|^2."""
        v = self.vector()
        num = integrate(lambda x: x * self.wavefunction(x) ** 2, (0.0, 1.0), _QTOL).value
        return num / float(v @ v)


def first_order_state(basis: JBasis, pert: Perturbation, n: int = 1,
                      N_basis: int = DEFAULT_N_BASIS) -> PerturbedState:
    if N_basis < n + 3:
        raise ValueError("N_basis must be at least n + 3")
    if N_basis > basis.max_n:
        basis = get_basis(basis.ord, N_basis)
    V = pert.potential(basis)
    col = _column(basis, V, n, N_basis, pert.breakpoints())
    En = eigenvalue(basis, n)
    coeffs = np.zeros(N_basis)
    for m in range(1, N_basis + 1):
        if m != n:
            coeffs[m - 1] = col[m - 1] / (En - eigenvalue(basis, m))
    big = np.max(np.abs(coeffs)) if N_basis > 1 else 0.0
    converged = big == 0.0 or abs(coeffs[-1]) < 1e-6 * big
    if not converged:
        warnings.warn(f"first-order sum not converged at N_basis = {N_basis}: "
                      f"|c_N|/max = {abs(coeffs[-1]) / big:.2e}", TruncationWarning, stacklevel=2)
    return PerturbedState(n, En, pert.strength_lambda * col[n - 1], tuple(coeffs), N_basis,
                          pert.strength_lambda, bool(converged), basis)


def rayleigh_quotient(state: PerturbedState, pert: Perturbation) -> float:
    """<psi|H|psi>/<psi|psi> in the truncated basis, H = -A_2alpha + lam V."""
    b, N = state.basis, state.basis_size
    V = pert.potential(b)
    bps = pert.breakpoints()
    H = np.diag([eigenvalue(b, m) for m in range(1, N + 1)])
    for i in range(1, N + 1):
        for j in range(i, N + 1):
            H[i - 1, j - 1] += pert.strength_lambda * matrix_element(b, V, i, j, bps)
            H[j - 1, i - 1] = H[i - 1, j - 1]
    v = state.vector()
    return float(v @ H @ v / (v @ v))


def _ground_correction(alpha: float, kind: str) -> float:
    b = get_basis(alpha, 4)
    p = Perturbation(kind, 1.0)
    return matrix_element(b, p.potential(b), 1, 1, p.breakpoints())


def wall_asymmetry_scan(alpha_grid: Iterable[float]) -> List[Dict[str, float]]:
    """First-order ground-state shifts per unit lambda for the left and right walls.

    The first-order correction is linear in lambda, so each value is the
    slope of energy against lambda; ``difference`` is left minus right.
    """
    rows = []
    for a in alpha_grid:
        left = _ground_correction(float(a), "step_left")
        right = _ground_correction(float(a), "step_right")
        rows.append(dict(alpha=float(a), left_correction=left, right_correction=right,
                         difference=left - right))
    return rows


def asymmetry_argmax(rows: Sequence[Dict[str, float]]) -> float:
    return max(rows, key=lambda r: r["difference"])["alpha"]


PHANTOM_TRIALS = ("x", "x^alpha", "x^(alpha/2)")


@dataclass(frozen=True)
class PhantomReport:
    alpha: float
    trial: str
    strength_lambda: float
    l2_residual: float
    max_residual: float
    baseline_l2: float


def _trial_exponent(trial: str, a: float) -> float:
    try:
        return {"x": 1.0, "x^alpha": a, "x^(alpha/2)": a / 2.0, "x^α": a, "x^{α/2}": a / 2.0}[trial]
    except KeyError:
        raise ValueError(f"trial must be one of {PHANTOM_TRIALS}") from None


def phantom_potential_fit(alpha, trial: str, strength_lambda: Optional[float] = None,
                          N_basis: int = DEFAULT_N_BASIS, grid: int = 2001) -> PhantomReport:
    """Sine-box ground state corrected to first order under V_I = trial, against J_1^(alpha).

    With ``strength_lambda`` None the strength is the least-squares value
    lam* = <chi, J_1 - psi_0>/<chi, chi>, chi being the first-order correction
    per unit lambda; no strength is fixed in advance.
    """
    a = as_order(alpha).alpha
    sine = get_basis(1.0, max(N_basis, 4))
    target = get_basis(a, 4)
    pert = Perturbation("power", 1.0, exponent=_trial_exponent(trial, a))
    st = first_order_state(sine, pert, 1, N_basis)
    x = np.linspace(0.0, 1.0, grid)
    psi0 = _raw(sine, 1, x)
    chi = st.wavefunction(x) - psi0
    tgt = _raw(target, 1, x)
    w = np.full(grid, 1.0 / (grid - 1))
    w[0] = w[-1] = 0.5 / (grid - 1)
    if strength_lambda is None:
        strength_lambda = float(np.sum(w * chi * (tgt - psi0)) / np.sum(w * chi * chi))
    res = psi0 + strength_lambda * chi - tgt
    base = psi0 - tgt
    return PhantomReport(a, trial, float(strength_lambda), math.sqrt(float(np.sum(w * res * res))),
                         float(np.max(np.abs(res))), math.sqrt(float(np.sum(w * base * base))))


def best_phantom_trial(alpha) -> str:
    reps = [phantom_potential_fit(alpha, t) for t in PHANTOM_TRIALS]
    return min(reps, key=lambda r: r.l2_residual).trial
