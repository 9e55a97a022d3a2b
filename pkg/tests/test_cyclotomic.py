"""Cyclotomic polynomials and the three divisor-indexed factorizations."""

import pytest

from qarith import (
    ZZ,
    DomainError,
    PolynomialRing,
    QContext,
    cyclotomic_poly,
    eval_cyclotomic,
    evaluate_factors,
    factor_q_binomial,
    factor_q_factorial,
    factor_q_integer,
    q_binomial,
    q_factorial,
    q_state,
)
from qarith.cyclotomic import divisors
from helpers import brute_totient


def _zt_context():
    ring = PolynomialRing(ZZ, "t")
    return QContext(ring, ring.generator)


def test_small_values():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(2) == (1, 1)
    assert cyclotomic_poly(3) == (1, 1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    assert cyclotomic_poly(12) == (1, 0, -1, 0, 1)


def test_degree_is_totient():
    for m in range(1, 61):
        assert len(cyclotomic_poly(m)) - 1 == brute_totient(m)


def test_product_over_divisors_is_power_minus_one():
    ring = PolynomialRing(ZZ, "t")
    for n in range(1, 61):
        prod = ring.one
        for d in divisors(n):
            prod = prod * ring.element(cyclotomic_poly(d))
        assert prod == ring.element((-1,) + (0,) * (n - 1) + (1,))


def test_factor_q_integer_indices():
    assert factor_q_integer(1) == ()
    assert factor_q_integer(6) == (2, 3, 6)
    assert factor_q_integer(7) == (7,)
    with pytest.raises(DomainError):
        factor_q_integer(0)


def test_factor_q_integer_evaluates_to_state():
    ctx = _zt_context()
    for n in range(1, 61):
        assert evaluate_factors(factor_q_integer(n), ctx.q) == q_state(ctx, n)


def test_factor_q_factorial_exponents():
    assert factor_q_factorial(0) == {}
    assert factor_q_factorial(1) == {}
    assert factor_q_factorial(4) == {2: 2, 3: 1, 4: 1}
    assert factor_q_factorial(6) == {2: 3, 3: 2, 4: 1, 5: 1, 6: 1}


def test_factor_q_factorial_evaluates():
    ctx = _zt_context()
    for n in range(31):
        assert evaluate_factors(factor_q_factorial(n), ctx.q) == q_factorial(ctx, n)


def test_factor_q_binomial_indices():
    assert factor_q_binomial(4, 0) == ()
    assert factor_q_binomial(4, 4) == ()
    assert factor_q_binomial(4, 2) == (3, 4)
    assert factor_q_binomial(5, 2) == (4, 5)
    with pytest.raises(DomainError):
        factor_q_binomial(3, 4)


def test_factor_q_binomial_evaluates_and_certifies_integrality():
    # the cyclotomic product is a product of integer polynomials, so matching
    # the Pascal value certifies Gaussian polynomials have integer coefficients
    ctx = _zt_context()
    for n in range(25):
        for k in range(n + 1):
            assert evaluate_factors(factor_q_binomial(n, k), ctx.q) == q_binomial(ctx, n, k)


def test_floor_dichotomy():
    for n in range(40):
        for k in range(n + 1):
            for m in range(2, n + 2):
                assert n // m - k // m - (n - k) // m in (0, 1)


def test_eval_cyclotomic_at_elements():
    ctx = _zt_context()
    chi4 = eval_cyclotomic(4, ctx.q)
    assert chi4 == ctx.ring.element((1, 0, 1))
    assert eval_cyclotomic(1, ctx.ring.one).is_zero()
