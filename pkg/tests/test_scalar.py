import math

import numpy as np
import pytest
from pytest import mark

from hyperdual.exception import ArityMismatchError, DomainError
from hyperdual.field import COMPLEX, REAL
from hyperdual.scalar import (
    Dual,
    HDPoint,
    HyperDual,
    Ordering,
    add,
    compare,
    cos,
    div,
    exp,
    log,
    mul,
    neg,
    power,
    sin,
    sqrt,
    sub,
)


def hd(*parts):
    return HyperDual(*parts)


@mark.parametrize(
    "func,args,expected",
    [
        (add, (hd(1, 2, 3, 4), hd(10, 20, 30, 40)), hd(11, 22, 33, 44)),
        (add, (hd(1.5, 0, 0, 0), hd(2.25, 0, 0, 0)), hd(3.75, 0, 0, 0)),
        (add, (hd(2, 1, 1, 0), hd(2, 1, 1, 0)), hd(4, 2, 2, 0)),
        (sub, (hd(5, 1, 2, 3), hd(5, 1, 2, 3)), hd(0, 0, 0, 0)),
        (sub, (hd(7, 1, 0, 0), hd(3, 0, 1, 0)), hd(4, 1, -1, 0)),
        (mul, (hd(2, 1, 1, 0), hd(2, 1, 1, 0)), hd(4, 4, 4, 2)),
        (mul, (hd(3, 1, 1, 1), hd(3, 1, 1, 1)), hd(9, 6, 6, 8)),
        (mul, (hd(1.5, 0, 0, 0), hd(-4, 0, 0, 0)), hd(-6, 0, 0, 0)),
        (div, (hd(6, 1.25, 1.25, -0.03125), hd(2, 0.25, 0.25, -0.03125)),
         hd(3, 0.25, 0.25, -0.03125)),
        (div, (hd(1, 0, 0, 0), hd(2, 0, 0, 0)), hd(0.5, 0, 0, 0)),
        (div, (hd(1.75, 0.5, -3, 8), hd(1, 0, 0, 0)), hd(1.75, 0.5, -3, 8)),
        (power, (hd(2, 0, 0, 0), hd(3, 0, 0, 0)), hd(8, 0, 0, 0)),
        (power, (hd(1, 0, 0, 0), hd(2.5, 1, 1, 0)), hd(1, 0, 0, 0)),
    ],
)
def test_binary_examples(func, args, expected):
    assert func(*args) == expected


@mark.parametrize(
    "func,arg,expected",
    [
        (sqrt, hd(4, 1, 1, 0), hd(2, 0.25, 0.25, -0.03125)),
        (sqrt, hd(9, 0, 0, 0), hd(3, 0, 0, 0)),
        (sqrt, hd(1, 2, 2, 0), hd(1, 1, 1, -1)),
        (sin, hd(0, 1, 1, 0), hd(0, 1, 1, 0)),
        (exp, hd(0, 1, 1, 1), hd(1, 1, 1, 2)),
        (log, hd(1, 1, 1, 0), hd(0, 1, 1, -1)),
        (cos, hd(0, 1, 1, 0), hd(1, 0, 0, -1)),
    ],
)
def test_unary_examples(func, arg, expected):
    assert func(arg) == expected


def test_neg():
    assert neg(hd(1, 2, 3, 4)) == hd(-1, -2, -3, -4)
    assert -Dual(1.0, 2.0) == Dual(-1.0, -2.0)


@mark.parametrize(
    "func,args,expected",
    [
        (sqrt, (Dual(4, 1),), Dual(2, 0.25)),
        (add, (Dual(1, 2), Dual(3, 4)), Dual(4, 6)),
        (mul, (Dual(3, 1), Dual(3, 1)), Dual(9, 6)),
        (exp, (Dual(0, 3),), Dual(1, 3)),
    ],
)
def test_dual_examples(func, args, expected):
    assert func(*args) == expected


def test_power_matches_product():
    x = HyperDual(math.e, 1.0, 1.0, 0.0)
    squared = power(x, 2)
    assert squared.d1 == 2 * math.e
    assert squared.d2 == 2 * math.e
    assert squared.d12 == 2.0
    product = mul(x, x)
    for part in ("primal", "d1", "d2", "d12"):
        assert abs(getattr(squared, part) - getattr(product, part)) <= 4 * math.ulp(
            getattr(product, part)
        )


def within_ulps(actual, expected, scale, ulps=4):
    return abs(actual - expected) <= ulps * math.ulp(abs(scale))


@mark.parametrize("field", [REAL, COMPLEX])
@mark.parametrize("n", range(-4, 5))
def test_integer_power_fast_path(field, n):
    rng = np.random.default_rng(n + 4)
    for _ in range(200):
        u = float(rng.uniform(0.1, 5.0))
        if field is COMPLEX:
            u = complex(u, rng.uniform(-5.0, 5.0))
        fast = field.power(u, float(n), fixed_exponent=True)
        general = field.power(u, float(n))
        # y, y_u and y_uu; the fast path leaves out the exponent derivatives
        for index in (0, 1, 3):
            assert within_ulps(fast[index], general[index], general[index]), (u, n, index)
        assert fast[2] == fast[4] == fast[5] == 0.0


def test_square_matches_product_at_random_points():
    rng = np.random.default_rng(2)
    for x, d1, d2, d12 in rng.uniform(-5.0, 5.0, size=(500, 4)).tolist():
        a = HyperDual(x, d1, d2, d12)
        squared = power(a, 2.0)
        product = mul(a, a)
        assert within_ulps(squared.primal, product.primal, product.primal)
        assert within_ulps(squared.d1, product.d1, product.d1)
        assert within_ulps(squared.d2, product.d2, product.d2)
        # sum of four products, compared at the size of its terms
        scale = 2 * (abs(d1 * d2) + abs(x * d12))
        assert within_ulps(squared.d12, product.d12, scale)


def test_foo_end_to_end():
    x = HyperDual.variable(4.0)
    result = (x + sqrt(x)) / sqrt(x)
    assert result.primal == pytest.approx(3.0, rel=1e-13)
    assert result.d1 == pytest.approx(0.25, rel=1e-13)
    assert result.d2 == pytest.approx(0.25, rel=1e-13)
    assert result.d12 == pytest.approx(-0.03125, rel=1e-13)


@mark.parametrize(
    "a,b,ordering",
    [
        (hd(1, 99, 99, 99), hd(2, 0, 0, 0), Ordering.LESS),
        (hd(2, 0, 0, 0), hd(2, 5, 5, 5), Ordering.EQUAL),
        (hd(3, 0, 0, 0), hd(1, 0, 0, 0), Ordering.GREATER),
        (Dual(1.0, 5.0), 0.5, Ordering.GREATER),
    ],
)
def test_compare(a, b, ordering):
    assert compare(a, b) is ordering


def test_comparison_operators():
    small, large = hd(1, 99, 0, 0), hd(2, 0, 0, 0)
    assert small < large
    assert small <= large
    assert large > small
    assert large >= 2
    assert hd(2, 0, 0, 0) <= hd(2, 5, 5, 5)
    # Equality compares all parts, orderings only the primal parts.
    assert hd(2, 0, 0, 0) != hd(2, 5, 5, 5)


def test_compare_complex():
    with pytest.raises(DomainError):
        compare(hd(1j, 0, 0, 0), hd(1, 0, 0, 0))
    with pytest.raises(DomainError):
        compare(hd(math.nan, 0, 0, 0), hd(1, 0, 0, 0))


def test_operators_with_plain_numbers():
    x = HyperDual.variable(3.0)
    assert 2 * x + 1 == HyperDual(7.0, 2.0, 2.0, 0.0)
    assert 1 - x == HyperDual(-2.0, -1.0, -1.0, 0.0)
    assert x**2 == HyperDual(9.0, 6.0, 6.0, 2.0)
    assert (6 / x).primal == 2.0
    assert +x is x
    assert (2**x).primal == 8.0


def test_plain_numbers():
    assert sqrt(4.0) == 2.0
    assert sqrt(-4 + 0j) == 2j
    assert isinstance(mul(2, 3), float)
    assert power(-2.0, 3) == -8.0
    with pytest.raises(DomainError):
        sqrt(-1.0)


def test_mixing_dual_and_hyperdual():
    with pytest.raises(TypeError):
        add(Dual(1.0, 1.0), hd(1, 1, 1, 1))
    with pytest.raises(TypeError):
        sin("x")
    assert HyperDual.variable(1.0).__add__("x") is NotImplemented


def test_parts_share_a_field():
    x = HyperDual(1.0, 2j, 0.0, 0.0)
    assert all(isinstance(part, complex) for part in (x.primal, x.d1, x.d2, x.d12))
    y = Dual(2, 3)
    assert isinstance(y.primal, float) and isinstance(y.d, float)


def test_constructors():
    assert HyperDual.constant(2.0) == hd(2, 0, 0, 0)
    assert HyperDual.variable(2.0) == hd(2, 1, 1, 0)
    assert HyperDual.variable(2.0, 1.0, 0.0) == hd(2, 1, 0, 0)
    assert Dual.variable(3.0) == Dual(3.0, 1.0)
    assert Dual.constant(3.0) == Dual(3.0, 0.0)
    assert hd(1, 2, 3, 4).swapped() == hd(1, 3, 2, 4)
    assert str(hd(1, 2, 3, 4)) == "<1.0, 2.0, 3.0, 4.0>"


def test_domain_errors():
    with pytest.raises(DomainError):
        sqrt(hd(0, 1, 1, 0))
    with pytest.raises(DomainError):
        log(hd(-1, 1, 1, 0))
    with pytest.raises(DomainError):
        div(hd(1, 0, 0, 0), hd(0, 1, 0, 0))
    with pytest.raises(DomainError):
        power(hd(-2, 1, 1, 0), hd(0.5, 0, 0, 0))
    with pytest.raises(DomainError):
        power(hd(2, 1, 1, 0) * 0, hd(-1, 0, 0, 0))


def test_negative_base_integer_power():
    result = power(hd(-2, 1, 1, 0), 3)
    assert result == hd(-8, 12, 12, -12)


def test_hdpoint():
    point = HDPoint.from_seeds([1.0, 2.0], [1, 0], [0, 1])
    assert len(point) == 2
    assert point.primal == (1.0, 2.0)
    assert point.d1 == (1.0, 0.0)
    assert point.d2 == (0.0, 1.0)
    assert point.d12 == (0.0, 0.0)
    assert point[1] == hd(2, 0, 1, 0)
    assert point[:1] == (hd(1, 1, 0, 0),)
    assert point == HDPoint([hd(1, 1, 0, 0), hd(2, 0, 1, 0)])
    with pytest.raises(ArityMismatchError):
        HDPoint.from_seeds([1.0, 2.0], [1.0])
    with pytest.raises(ValueError):
        HDPoint([])
    with pytest.raises(TypeError):
        HDPoint([1.0])
