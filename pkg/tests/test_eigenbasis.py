import math
import threading

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conformable.conformable_core import apply_A2alpha
from conformable.eigenbasis import (JBasis, count_interior_zeros, eigenvalue, expand,
                                    fourier_bessel_cn, fourier_bessel_cn_printed,
                                    fourier_bessel_coefficient, fourier_bessel_expansion, get_basis,
                                    interzero_area, j_deriv, j_eval, j_eval_hyp, j_eval_hyp_printed,
                                    j_func, j_zero_position, moment_stats, monomial_gamma,
                                    monomial_gamma_printed, scaling_amplitude_printed,
                                    scaling_factors)
from conformable.numerics import integrate
from conformable.specfun import bessel_j, bessel_zeros

# mpmath oracles (30 digits)
J1_HALF_AT_HALF = 1.22473975203226589717373770364
E1_HALF = 4.73906639784329919816227930978
SKEW_01 = 0.827390288616348596162804940686
MU3_VAR_01 = 0.153425622279221918042895239155

ALPHAS = [0.25, 0.5, 0.75, 1.0]


def test_sine_reduction():
    b = get_basis(1.0)
    x = np.linspace(0, 1, 101)
    for n in (1, 2, 5):
        assert np.allclose(j_eval(b, n, x), math.sqrt(2) * np.sin(n * math.pi * x), atol=1e-10)
    assert j_eval(b, 2, 0.25) == pytest.approx(math.sqrt(2), abs=1e-12)


@pytest.mark.parametrize("a", ALPHAS)
def test_boundary_zero(a):
    b = get_basis(a)
    assert j_eval(b, 3, 0.0) == 0.0 and j_eval(b, 3, 1.0) == 0.0


def test_j_eval_oracle_and_errors():
    b = get_basis(0.5)
    assert j_eval(b, 1, 0.5) == pytest.approx(J1_HALF_AT_HALF, rel=1e-12)
    assert integrate(lambda x: j_eval(b, 1, x) ** 2, (0, 1)).value == pytest.approx(1, abs=1e-8)
    with pytest.raises(IndexError):
        j_eval(b, b.max_n + 1, 0.5)
    with pytest.raises(ValueError):
        j_eval(b, 1, 1.5)


def test_norm_validation_runs_without_warning(recwarn):
    b = JBasis(0.3, 6)
    for n in range(1, 7):
        assert b.norm(n) > 0
    assert not recwarn.list


def test_norm_is_thread_safe():
    b = JBasis(0.45, 8)
    out = []
    ts = [threading.Thread(target=lambda: out.append([b.norm(n) for n in range(1, 9)])) for _ in range(4)]
    for t in ts:
        t.start()
    for t in ts:
        t.join()
    assert all(o == out[0] for o in out) and len(out) == 4


def test_eigenvalues():
    b = get_basis(1.0)
    for n in (1, 2, 3):
        assert eigenvalue(b, n) == pytest.approx(n * n * math.pi ** 2, rel=1e-13)
    b = get_basis(0.5)
    k1 = bessel_zeros(1 / 3, 1)[0]
    assert eigenvalue(b, 1) == pytest.approx(1.5 ** 2 * k1 ** 2 / 4, rel=1e-14)
    assert eigenvalue(b, 1) == pytest.approx(E1_HALF, rel=1e-12)
    with pytest.raises(IndexError):
        eigenvalue(b, 0)


@pytest.mark.parametrize("a", ALPHAS)
@pytest.mark.parametrize("n", [1, 2, 4])
def test_eigen_residual(a, n):
    b = get_basis(a)
    f = j_func(b, n)
    E = eigenvalue(b, n)
    worst = max(abs(apply_A2alpha(f, a, x) + E * f(x)) for x in np.linspace(0.05, 0.95, 19))
    assert worst / E < 1e-5


def test_analytic_derivative():
    b = get_basis(0.6)
    from conformable.numerics import differentiate
    for x in (0.2, 0.5, 0.8):
        assert j_deriv(b, 2, x) == pytest.approx(differentiate(j_func(b, 2), x), rel=1e-8)


def test_zero_positions():
    b1 = get_basis(1.0)
    for n in range(2, 6):
        for k in range(1, n):
            assert j_zero_position(b1, n, k) == pytest.approx(k / n, abs=1e-13)
    assert j_zero_position(b1, 3, 1) == pytest.approx(1 / 3, abs=1e-13)
    b = get_basis(0.5)
    pos = [j_zero_position(b, 10, k) for k in range(1, 10)]
    assert all(p < q for p, q in zip(pos, pos[1:]))
    assert all(p < k / 10 for k, p in enumerate(pos, start=1))
    with pytest.raises(IndexError):
        j_zero_position(b, 3, 3)


@pytest.mark.parametrize("a", ALPHAS)
def test_zero_formula_consistency(a):
    b = get_basis(a)
    for n in (3, 6):
        for k in range(1, n):
            z = j_zero_position(b, n, k)
            assert abs(j_eval(b, n, z)) < 1e-9
            assert j_eval(b, n, z - 1e-4) * j_eval(b, n, z + 1e-4) < 0


@pytest.mark.parametrize("a", ALPHAS)
@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_interior_zero_count(a, n):
    assert count_interior_zeros(get_basis(a), n, 10_000) == n - 1


@pytest.mark.parametrize("a,n", [(1.0, 1), (0.5, 1), (0.75, 2), (0.3, 4)])
def test_scaling_identity(a, n):
    b = get_basis(a)
    s, Ns = scaling_factors(b, n)
    x = np.linspace(0, 1 / s, 201)
    assert np.max(np.abs(Ns * j_eval(b, n, s * x) - j_eval(b, n + 1, x))) < 1e-8
    if a == 1.0:
        assert (s, Ns) == pytest.approx((2.0, 1.0), abs=1e-12)


def test_printed_scaling_amplitude_fails_at_one():
    b = get_basis(1.0)
    assert scaling_amplitude_printed(b, 1) == pytest.approx(2 ** 0.25, rel=1e-12)


def test_moments_sine():
    m = moment_stats(get_basis(1.0), 1)
    assert m.moments[0] == pytest.approx(0.5, abs=1e-12)
    assert m.moments[1] == pytest.approx(1 / 3 - 1 / (2 * math.pi ** 2), abs=1e-12)
    assert m.skewness == pytest.approx(0.0, abs=1e-10)
    assert m.std_dev > 0


def test_moments_small_alpha_oracle():
    m = moment_stats(get_basis(0.1), 1)
    assert m.skewness == pytest.approx(SKEW_01, rel=1e-9)
    assert m.mu3_over_var == pytest.approx(MU3_VAR_01, rel=1e-9)
    assert all(0 < v < 1 for v in m.moments)


@pytest.mark.xfail(strict=True, reason="standardized skewness at alpha = 0.1 is 0.827, not in (0.10, 0.25)")
def test_moments_small_alpha_stated_range():
    assert 0.10 < moment_stats(get_basis(0.1), 1).skewness < 0.25


def test_interzero_areas():
    b = get_basis(1.0)
    assert interzero_area(b, 2, 0) == pytest.approx(0.5, abs=1e-12)
    assert interzero_area(b, 2, 1) == pytest.approx(0.5, abs=1e-12)
    b = get_basis(0.5)
    assert sum(interzero_area(b, 3, k) for k in range(3)) == pytest.approx(1.0, abs=1e-8)
    assert interzero_area(b, 2, 0) < 0.5 < interzero_area(b, 2, 1)
    with pytest.raises(IndexError):
        interzero_area(b, 2, 2)


@pytest.mark.parametrize("a", ALPHAS)
def test_expand_orthonormal_target(a):
    b = get_basis(a)
    e = expand(b, j_func(b, 2), 5)
    assert e.coefficients == pytest.approx((0, 1, 0, 0, 0), abs=1e-8)


def test_expand_sine():
    e = expand(get_basis(1.0), lambda x: np.sin(math.pi * x), 4)
    assert e.coefficients == pytest.approx((1 / math.sqrt(2), 0, 0, 0), abs=1e-10)


def test_expand_triangle():
    tri = lambda x: 0.5 - np.abs(np.asarray(x) - 0.5)
    e_half = expand(get_basis(0.5), tri, 5, "triangle")
    e_one = expand(get_basis(1.0), tri, 5, "triangle")
    errs = [e_half.l2_error(tri, N) for N in range(1, 6)]
    assert all(p >= q - 1e-12 for p, q in zip(errs, errs[1:]))
    assert errs[-1] < errs[0]
    assert e_half.coefficients[0] < e_one.coefficients[0]
    assert abs(e_half.coefficients[1]) > abs(e_one.coefficients[1])


@pytest.mark.parametrize("a", ALPHAS)
def test_orthonormality(a):
    b = get_basis(a)
    for m in range(1, 7):
        for n in range(m, 7):
            v = integrate(lambda x: j_eval(b, m, x) * j_eval(b, n, x), (0, 1)).value
            assert abs(v - (m == n)) < 1e-8


@given(st.sampled_from(ALPHAS), st.integers(0, 3))
def test_parseval_monotone(a, which):
    f = [lambda x: np.asarray(x) * (1 - np.asarray(x)),
         lambda x: np.sin(math.pi * np.asarray(x)) ** 3,
         lambda x: np.asarray(x) ** 2 * (1 - np.asarray(x)),
         lambda x: np.exp(np.asarray(x)) * np.asarray(x) * (1 - np.asarray(x))][which]
    b = get_basis(a)
    total = integrate(lambda x: f(x) ** 2, (0, 1)).value
    partial = np.cumsum(np.square(expand(b, f, 8).coefficients))
    assert np.all(np.diff(partial) >= -1e-14)
    assert partial[-1] <= total + 1e-9


def test_fourier_bessel_cn_quadrature():
    for a in (0.5, 0.75):
        b = get_basis(a)
        for n in (1, 3):
            q = integrate(lambda z: z * bessel_j(b.eta, b.zero(n) * z), (0, 1)).value
            assert fourier_bessel_cn(b, 1.0, n) == pytest.approx(q, abs=1e-9)
    b = get_basis(0.5)
    assert fourier_bessel_cn_printed(b, 1.0, 1) != pytest.approx(fourier_bessel_cn(b, 1.0, 1), rel=1e-3)


def test_fourier_bessel_coefficients_match_projection():
    b = get_basis(0.5)
    sqrt_xa = lambda x: np.asarray(x) ** 0.25
    e = expand(b, sqrt_xa, 5)
    fb = fourier_bessel_expansion(b, 1.0, 5)
    assert fb.coefficients == pytest.approx(e.coefficients, abs=1e-9)


def test_monomial_case():
    b = get_basis(0.5)
    g = monomial_gamma(1, b.ord)
    assert monomial_gamma(1, 1.0) == monomial_gamma_printed(1, 1.0)
    e = expand(b, lambda x: np.asarray(x), 6)
    assert [fourier_bessel_coefficient(b, g, n) for n in range(1, 7)] == pytest.approx(e.coefficients, abs=1e-9)
    # the partial sums converge to x in mean square
    fb = fourier_bessel_expansion(get_basis(0.5, 40), g, 40)
    assert fb.l2_error(lambda x: x, 40) < fb.l2_error(lambda x: x, 5)


@pytest.mark.xfail(strict=True, reason="best L2 error of a 20-term expansion of x^(alpha/2) is about 0.115")
def test_sqrt_reconstruction_stated_accuracy():
    b = get_basis(0.5)
    fb = fourier_bessel_expansion(b, 1.0, 20)
    assert fb.l2_error(lambda x: np.asarray(x) ** 0.25, 20) < 1e-2


def test_hyp_form():
    b = get_basis(0.5)
    x = np.linspace(0.05, 0.95, 7)
    assert np.allclose(j_eval_hyp(b, 2, x), j_eval(b, 2, x), atol=1e-12)
    ratio = j_eval_hyp_printed(b, 2, 0.4) / j_eval(b, 2, 0.4)
    assert ratio == pytest.approx(2 ** b.eta / 4, rel=1e-12)
