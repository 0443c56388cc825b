import math

import pytest
from hypothesis import given, strategies as st
from scipy import special as sp

from conformable.conformable_core import Order
from conformable.errors import DegenerateRoot, DomainError, NotExplicit, UnknownEntry
from conformable.transforms import (CATALOG, DEFAULT_PARAMS, TimeFunction, TransformOrder,
                                    conformable_convolution, conformable_fourier,
                                    conformable_laplace, delta_composite, delta_difference,
                                    delta_scale, derivative_theorem_check, inverse_fourier,
                                    kappa_square_claim_check, make_explicit, natural,
                                    nascent_delta_integral, product_formula_check, table_entry,
                                    transform_order, transform_space_derivative_check,
                                    verify_table)

OMEGAS = (0.5, 1.0, 1.7, 2.5, 4.0)
exp_one = natural(lambda u: math.exp(-u), dg=lambda u: -math.exp(-u), d2g=lambda u: math.exp(-u))
exp_two = natural(lambda u: math.exp(-abs(u)), two_sided=True,
                  dg=lambda u: -math.copysign(1.0, u) * math.exp(-abs(u)))
gauss = lambda s: natural(lambda u: math.exp(-s * s * u * u), two_sided=True,
                          dg=lambda u: -2 * s * s * u * math.exp(-s * s * u * u),
                          d2g=lambda u: (4 * s ** 4 * u * u - 2 * s * s) * math.exp(-s * s * u * u))


def test_order_types():
    o = transform_order(0.5)
    assert o.beta == 0.5 and o.lambda_ratio == 1.0
    assert TransformOrder(Order(0.5), 0.25).lambda_ratio == 0.5
    with pytest.raises(DomainError):
        TransformOrder(Order(0.5), 1.5)
    with pytest.raises(DomainError):
        TransformOrder(Order(0.5), 0.3, lambda_ratio=1.0, strict=True)
    TransformOrder(Order(0.5), 0.3, lambda_ratio=1.0)  # lenient mode
    assert o.W(-4.0) == -o.W(4.0)
    with pytest.raises(ValueError):
        TimeFunction("symbolic", math.exp)


def test_laplace_examples():
    one = natural(lambda u: 1.0)
    assert conformable_laplace(one, transform_order(1.0), 2.0) == pytest.approx(0.5, rel=1e-10)
    for a, b in ((0.5, 0.5), (0.75, 0.5)):
        o = TransformOrder(Order(a), b)
        for s in (0.5, 2.0):
            assert conformable_laplace(one, o, s) == pytest.approx(b / s ** b, rel=1e-9)
            assert conformable_laplace(natural(lambda u: u), o, s) == pytest.approx((b / s ** b) ** 2, rel=1e-9)


def test_laplace_monomial_in_t():
    a, b, n, s = 0.5, 0.5, 1, 1.5
    o = TransformOrder(Order(a), b)
    tf = make_explicit(lambda t: t ** n, a)
    closed = a ** (n / a) * b ** (n / a + 1) * math.gamma(n / a + 1) / (s ** b) ** (n / a + 1)
    assert conformable_laplace(tf, o, s) == pytest.approx(closed, rel=1e-9)


def test_raw_kind_rejected():
    raw = TimeFunction("raw", math.exp)
    with pytest.raises(NotExplicit):
        conformable_laplace(raw, transform_order(0.5), 1.0)
    with pytest.raises(NotExplicit):
        conformable_fourier(raw, transform_order(0.5), 1.0)


def test_fourier_exp_decay():
    k = 1.3
    tf = natural(lambda u: math.exp(-k * u))
    for a, b in ((1.0, 1.0), (0.5, 0.5), (0.75, 0.5)):
        o = TransformOrder(Order(a), b)
        for w in (0.5, 2.0):
            want = b / (b * k - 1j * w ** b)
            assert conformable_fourier(tf, o, w) == pytest.approx(want, rel=1e-9)


def test_fourier_gaussian_defined_kernel():
    s = 0.8
    o = transform_order(0.5)
    for w in (0.5, 2.0):
        W = o.W(w)
        want = math.sqrt(math.pi) / s * math.exp(-W * W / (4 * s * s))
        got = conformable_fourier(gauss(s), o, w)
        assert got == pytest.approx(want, rel=1e-9)
        # the printed amplitude 1/(sqrt(2) sigma) is the unitary-convention value
        printed = CATALOG["gaussian"].printed_fourier(w, o, dict(DEFAULT_PARAMS, sigma=s))
        assert abs(got / printed) == pytest.approx(math.sqrt(2 * math.pi), rel=1e-9)


def test_fourier_classical_reduction():
    o = transform_order(1.0)
    for w in (0.3, 1.0):
        assert conformable_fourier(exp_two, o, w) == pytest.approx(2 / (1 + w * w), rel=1e-10)


def test_catalog_entries():
    assert set(CATALOG) == {"one", "t", "t_pow_n", "natural", "natural_pow_p", "exp_decay",
                            "pow_exp_decay", "cos", "sin", "damped_cos", "gaussian"}
    with pytest.raises(UnknownEntry):
        table_entry("tan")
    o, P, s = TransformOrder(Order(0.5), 0.5), DEFAULT_PARAMS, 2.0
    b, q, S = 0.5, P["q"], s ** 0.5
    assert table_entry("cos").printed_laplace(s, o, P) == pytest.approx(b * S / (S + b * b * q * q))
    assert table_entry("cos").laplace_closed(s, o, P) == pytest.approx(b * S / (S * S + b * b * q * q))
    assert table_entry("sin").laplace_closed(s, o, P) == pytest.approx(b * b * q / (S * S + b * b * q * q))
    sig = P["sigma"]
    g = math.sqrt(math.pi) / (2 * sig) * math.exp(S * S / (4 * sig * sig * b * b)) * sp.erfc(S / (2 * sig * b))
    assert table_entry("gaussian").printed_laplace(s, o, P) == pytest.approx(g)


def test_catalog_reduces_to_classical():
    o, P = transform_order(1.0), DEFAULT_PARAMS
    s, q, k = 1.7, P["q"], P["k"]
    assert table_entry("cos").laplace_closed(s, o, P) == pytest.approx(s / (s * s + q * q))
    assert table_entry("sin").laplace_closed(s, o, P) == pytest.approx(q / (s * s + q * q))
    assert table_entry("exp_decay").laplace_closed(s, o, P) == pytest.approx(1 / (s + k))


def test_verify_table_canonical_all_pass():
    rows = verify_table()
    canon = [r for r in rows if r["form"] == "canonical"]
    assert canon and all(r["passed"] for r in canon)
    bad_printed = {(r["entry"], r["transform"]) for r in rows if r["form"] == "printed" and not r["passed"]}
    assert bad_printed == {("cos", "laplace"), ("damped_cos", "laplace"), ("damped_cos", "fourier"),
                           ("gaussian", "fourier")}
    flagged = {(r["entry"], r["transform"]) for r in rows if r["flagged"]}
    assert bad_printed <= flagged


def test_delta_scale():
    assert delta_scale(3.0, 1.0) == 1.0
    assert delta_scale(4.0, 0.5) == pytest.approx(4.0)
    with pytest.raises(DomainError):
        delta_scale(0.0, 0.5)
    x0, a = 1.3, 0.6
    got = nascent_delta_integral(math.cos, lambda v: v - x0 ** a, a, 1e-4, (0.5, 2.0))
    assert got == pytest.approx(math.cos(x0) * delta_scale(x0, a), rel=1e-6)


def test_delta_composite():
    (loc, w), = delta_composite(lambda v: v - 2.0, [2.0], 1.0)
    assert (loc, w) == pytest.approx((2.0, 1.0))
    c, a = 1.2, 0.75
    f = lambda v: v * v - c * c
    terms = delta_composite(f, [c], a, fprime=lambda v: 2 * v)
    want = sum(math.cos(x) * w for x, w in terms)
    got = nascent_delta_integral(math.cos, f, a, 1e-4, (0.5, 2.0))
    assert got == pytest.approx(want, rel=1e-6)
    with pytest.raises(DegenerateRoot):
        delta_composite(lambda v: (v - 1) ** 2, [1.0], a, fprime=lambda v: 2 * (v - 1))


def test_delta_difference():
    x1, x2, a = 2.0, 1.0, 0.5
    xs, w = delta_difference(x1, x2, a)
    c = x1 ** a - x2 ** a
    assert xs == pytest.approx(c ** 2)
    assert w == pytest.approx(1 / (a * (x1 ** a - x2 ** a) ** ((a - 1) / a)))


def test_derivative_theorem():
    assert derivative_theorem_check(exp_two, transform_order(1.0), OMEGAS) < 1e-8
    assert derivative_theorem_check(exp_two, transform_order(0.5), OMEGAS) < 1e-6
    assert derivative_theorem_check(gauss(0.9), transform_order(0.6), OMEGAS, kappa=True) < 1e-5


@pytest.mark.xfail(strict=True, reason="one-sided e^{-u} picks up the boundary term -g(0)")
def test_derivative_theorem_one_sided_exp():
    assert derivative_theorem_check(exp_one, transform_order(0.5), OMEGAS) < 1e-6


def test_kappa_square_claim_is_off():
    assert kappa_square_claim_check(gauss(0.9), transform_order(0.6), OMEGAS) > 0.1


def test_transform_space_derivative():
    assert transform_space_derivative_check(exp_one, transform_order(1.0), OMEGAS) < 1e-7
    assert transform_space_derivative_check(exp_one, transform_order(0.7), OMEGAS) < 1e-5
    assert transform_space_derivative_check(gauss(0.8), transform_order(0.5), OMEGAS) < 1e-5
    assert transform_space_derivative_check(exp_one, transform_order(0.7), OMEGAS, printed=True) > 0.5


def test_convolution():
    F = lambda u: math.exp(-u) if u >= 0 else 0.0
    G2 = lambda u: math.exp(-2 * u) if u >= 0 else 0.0
    for t in (0.5, 1.0, 3.0):
        assert conformable_convolution(F, F, 1.0, t) == pytest.approx(t * math.exp(-t), rel=1e-10)
        T = t ** 0.75 / 0.75
        assert conformable_convolution(F, G2, 0.75, t) == pytest.approx(math.exp(-T) - math.exp(-2 * T), rel=1e-10)
    assert product_formula_check(F, F, transform_order(0.5), OMEGAS) < 1e-5


@given(st.floats(0.3, 1.0), st.floats(0.2, 3.0))
def test_inverse_roundtrip(a, t):
    o = transform_order(a)
    ft = lambda W: math.sqrt(math.pi) * math.exp(-W * W / 4)   # transform of e^{-u^2} in W
    u = t ** a / a
    assert inverse_fourier(ft, o, t) == pytest.approx(math.exp(-u * u), abs=1e-5)


@given(st.sampled_from(["exp_decay", "sin", "cos", "natural_pow_p", "pow_exp_decay"]),
       st.floats(0.3, 5.0))
def test_alpha_one_reduces_to_classical(name, s):
    e = table_entry(name)
    o = transform_order(1.0)
    tf = e.time_form(o, DEFAULT_PARAMS)
    assert conformable_laplace(tf, o, s) == pytest.approx(e.laplace_closed(s, o, DEFAULT_PARAMS), rel=1e-8)
