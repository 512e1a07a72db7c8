import cmath
import math
import threading

import pytest
from pytest import mark

from hyperdual.exception import DomainError, DomainWarning
from hyperdual.field import COMPLEX, REAL, field_of, is_strict, set_strict, strict_domain
from hyperdual.scalar import HyperDual, asin, log, sqrt, tan


def test_field_of():
    assert field_of(1.0, 2) is REAL
    assert field_of(1.0, 2j) is COMPLEX
    assert field_of() is REAL


def test_strict_default_and_context():
    assert is_strict()
    with strict_domain(False):
        assert not is_strict()
        with strict_domain(True):
            assert is_strict()
        assert not is_strict()
    assert is_strict()


def test_set_strict_is_local_to_thread():
    seen = []

    def worker():
        set_strict(False)
        seen.append(is_strict())

    thread = threading.Thread(target=worker)
    thread.start()
    thread.join()
    assert seen == [False]
    assert is_strict()


@mark.parametrize(
    "name,x",
    [
        ("sqrt", 0.0),
        ("sqrt", -1.0),
        ("log", 0.0),
        ("log", -2.0),
        ("asin", 1.0),
        ("acos", -1.0),
        ("asin", 1.5),
    ],
)
def test_real_domain(name, x):
    with pytest.raises(DomainError):
        REAL.unary(name, x)


@mark.parametrize(
    "name,x",
    [
        ("sqrt", 0j),
        ("log", 0j),
        ("asin", 1 + 0j),
        ("acos", -1 + 0j),
        ("atan", 1j),
    ],
)
def test_complex_domain(name, x):
    with pytest.raises(DomainError):
        COMPLEX.unary(name, x)


def test_complex_principal_branches():
    assert COMPLEX.unary("sqrt", -1 + 0j, order=0)[0] == 1j
    assert COMPLEX.unary("log", -1 + 0j, order=0)[0] == cmath.log(-1 + 0j)
    assert COMPLEX.unary("asin", 2 + 0j, order=0)[0] == cmath.asin(2 + 0j)
    y, y_u, y_v, *_ = COMPLEX.power(-1 + 0j, 0.5 + 0j)
    assert y == pytest.approx(1j)
    assert y_v == pytest.approx(1j * cmath.pi * 1j)
    assert y_u == pytest.approx(0.5 * (-1 + 0j) ** -0.5)


def test_non_strict_propagates_ieee():
    with strict_domain(False):
        with pytest.warns(DomainWarning):
            result = sqrt(HyperDual(-1.0, 1.0, 1.0, 0.0))
        assert math.isnan(result.primal)
        assert math.isnan(result.d1)
        with pytest.warns(DomainWarning):
            result = log(HyperDual(0.0, 1.0, 1.0, 0.0))
        assert result.primal == -math.inf
        with pytest.warns(DomainWarning):
            assert REAL.quotient(1.0, 0.0, order=0)[0] == math.inf
        with pytest.warns(DomainWarning):
            assert math.isnan(asin(2.0))


def test_overflow_is_not_a_domain_error():
    assert REAL.unary("exp", 1000.0, order=0) == (math.inf,)
    assert REAL.power(10.0, 400.0, order=0) == (math.inf,)


def test_unknown_primitive():
    with pytest.raises(ValueError):
        REAL.unary("abs", 1.0)


@mark.parametrize(
    "name,x,first,second",
    [
        ("exp", 0.0, 1.0, 1.0),
        ("log", 2.0, 0.5, -0.25),
        ("sin", 0.0, 1.0, 0.0),
        ("cos", 0.0, 0.0, -1.0),
        ("tan", 0.0, 1.0, 0.0),
        ("sinh", 0.0, 1.0, 0.0),
        ("cosh", 0.0, 0.0, 1.0),
        ("tanh", 0.0, 1.0, 0.0),
        ("asin", 0.0, 1.0, 0.0),
        ("acos", 0.0, -1.0, 0.0),
        ("atan", 1.0, 0.5, -0.5),
        ("sqrt", 4.0, 0.25, -0.03125),
    ],
)
def test_derivative_coefficients(name, x, first, second):
    _, g_1, g_2 = REAL.unary(name, x)
    assert g_1 == pytest.approx(first, abs=1e-15)
    assert g_2 == pytest.approx(second, abs=1e-15)


def test_tan_derivatives_are_consistent():
    x = HyperDual.variable(0.3)
    y = tan(x)
    assert y.d1 == pytest.approx(1 / math.cos(0.3) ** 2, rel=1e-14)
    assert y.d12 == pytest.approx(2 * math.tan(0.3) / math.cos(0.3) ** 2, rel=1e-14)


@mark.parametrize(
    "field,name,x",
    [
        (REAL, "tan", math.pi / 2),
        (REAL, "tan", -math.pi / 2),
        (COMPLEX, "tan", complex(math.pi / 2, 0.0)),
        (COMPLEX, "tanh", complex(0.0, math.pi / 2)),
    ],
)
def test_next_to_pole(field, name, x):
    with strict_domain(True):
        coefficients = field.unary(name, x)
    assert all(cmath.isfinite(c) for c in coefficients)
    assert abs(coefficients[0]) > 1e15


def test_tan_next_to_pole_is_finite():
    with strict_domain(True):
        y = tan(HyperDual(math.pi / 2, 1.0, 1.0, 0.0))
    assert y.primal > 1e15
    assert math.isfinite(y.d12)


def test_power_coefficients():
    y, y_u, y_v, y_uu, y_uv, y_vv = REAL.power(2.0, 3.0)
    assert y == 8.0
    assert y_u == 12.0
    assert y_v == pytest.approx(8 * math.log(2))
    assert y_uu == 12.0
    assert y_uv == pytest.approx(4 * (1 + 3 * math.log(2)))
    assert y_vv == pytest.approx(8 * math.log(2) ** 2)
    assert REAL.power(-2.0, 2.0, fixed_exponent=True) == (4.0, -4.0, 0.0, 2.0, 0.0, 0.0)
    with pytest.raises(DomainError):
        REAL.power(-2.0, 2.0)


def test_compare():
    assert REAL.compare(1.0, 2.0) == -1
    assert REAL.compare(2.0, 2.0) == 0
    assert REAL.compare(3.0, 2.0) == 1
    with pytest.raises(DomainError):
        COMPLEX.compare(1j, 2j)
