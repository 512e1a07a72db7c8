"""Base fields for the automatic differentiation scalars.

Two fields are supported: the real numbers, represented by Python floats and computed
with :mod:`math`, and the complex numbers, represented by Python complex numbers and
computed with :mod:`cmath` (principal branches for sqrt, log and non-integer powers).

For every primitive the field computes the value together with the first and second
derivative coefficients. The Dual and HyperDual types in :mod:`hyperdual.scalar` only
combine these coefficients with the perturbation parts.

By default the fields are strict: a primitive evaluated at a point where it (or one of its
first two derivatives) is singular raises a :class:`hyperdual.exception.DomainError`.
In non-strict mode the computation is handed to numpy instead, which propagates NaN and
infinity following IEEE 754, and a :class:`hyperdual.exception.DomainWarning` is issued.
"""

from __future__ import annotations

import cmath
import math
import operator
import warnings
from contextlib import contextmanager
from contextvars import ContextVar
from types import SimpleNamespace
from typing import Any, Callable, Iterator, Union

import numpy as np

from hyperdual.exception import DomainError, DomainWarning

Scalar = Union[float, complex]

UNARY_PRIMITIVES = (
    "sqrt",
    "exp",
    "log",
    "sin",
    "cos",
    "tan",
    "sinh",
    "cosh",
    "tanh",
    "asin",
    "acos",
    "atan",
)

_STRICT: ContextVar[bool] = ContextVar("hyperdual_strict_domain", default=True)


def is_strict() -> bool:
    """Whether primitives raise a DomainError outside of their domain."""
    return _STRICT.get()


def set_strict(enabled: bool) -> None:
    """Switch strict domain checking on or off for the current context.

    Parameters
    ----------
    enabled:
        True to raise DomainErrors, False to propagate NaN/infinity.

    """
    _STRICT.set(bool(enabled))


@contextmanager
def strict_domain(enabled: bool = True) -> Iterator[None]:
    """Temporarily switch strict domain checking on or off.

    Examples
    --------
    >>> from hyperdual.scalar import HyperDual, sqrt
    >>> with strict_domain(False):
    ...     sqrt(HyperDual(-1.0, 1.0, 1.0, 0.0))  # NaN parts instead of a DomainError
    HyperDual(primal=nan, d1=nan, d2=nan, d12=nan)

    """
    token = _STRICT.set(bool(enabled))
    try:
        yield
    finally:
        _STRICT.reset(token)


def _unary_rules(lib: Any) -> dict[str, tuple[Callable, Callable, Callable]]:
    """Value, first and second derivative of every unary primitive.

    The derivative callables receive the argument and the already computed value.
    """

    def asin_first(x, _):
        return 1 / lib.sqrt(1 - x * x)

    def asin_second(x, y):
        g_1 = asin_first(x, y)
        return x * g_1 * g_1 * g_1

    def atan_first(x, _):
        return 1 / (1 + x * x)

    def atan_second(x, y):
        g_1 = atan_first(x, y)
        return -2 * x * g_1 * g_1

    return {
        "sqrt": (lib.sqrt, lambda x, y: 0.5 / y, lambda x, y: -0.25 / (x * y)),
        "exp": (lib.exp, lambda x, y: y, lambda x, y: y),
        "log": (lib.log, lambda x, y: 1 / x, lambda x, y: -1 / (x * x)),
        "sin": (lib.sin, lambda x, y: lib.cos(x), lambda x, y: -y),
        "cos": (lib.cos, lambda x, y: -lib.sin(x), lambda x, y: -y),
        "tan": (lib.tan, lambda x, y: 1 + y * y, lambda x, y: 2 * y * (1 + y * y)),
        "sinh": (lib.sinh, lambda x, y: lib.cosh(x), lambda x, y: y),
        "cosh": (lib.cosh, lambda x, y: lib.sinh(x), lambda x, y: y),
        "tanh": (lib.tanh, lambda x, y: 1 - y * y, lambda x, y: -2 * y * (1 - y * y)),
        "asin": (lib.asin, asin_first, asin_second),
        "acos": (lib.acos, lambda x, y: -asin_first(x, y), lambda x, y: -asin_second(x, y)),
        "atan": (lib.atan, atan_first, atan_second),
    }


_IEEE = SimpleNamespace(
    sqrt=np.sqrt,
    exp=np.exp,
    log=np.log,
    sin=np.sin,
    cos=np.cos,
    tan=np.tan,
    sinh=np.sinh,
    cosh=np.cosh,
    tanh=np.tanh,
    asin=np.arcsin,
    acos=np.arccos,
    atan=np.arctan,
)


def _apply(rule: tuple[Callable, Callable, Callable], x, order: int) -> tuple:
    value, first, second = rule
    y = value(x)
    if order == 0:
        return (y,)
    g_1 = first(x, y)
    if order == 1:
        return (y, g_1)
    return (y, g_1, second(x, y))


def _quotient(a, b, order: int) -> tuple:
    y = a / b
    if order == 0:
        return (y,)
    inv = 1 / b
    g_b = -y * inv
    if order == 1:
        return (y, inv, g_b)
    return (y, inv, g_b, -inv * inv, 2 * y * inv * inv)


def _power(u, v, order: int, integral: bool, pow_: Callable, log_: Callable) -> tuple:
    y = pow_(u, v)
    if order == 0:
        return (y,)
    if integral:
        # Fast path for a fixed integer exponent n: no logarithm of the base is needed.
        if v == 0:
            g_u, g_uu = 0.0, 0.0
        elif v == 1:
            g_u, g_uu = 1.0, 0.0
        else:
            g_u = v * pow_(u, v - 1)
            g_uu = v * (v - 1) * pow_(u, v - 2)
        coefficients = (y, g_u, 0.0, g_uu, 0.0, 0.0)
    else:
        log_u = log_(u)
        u_vm1 = pow_(u, v - 1)
        g_v = y * log_u
        coefficients = (
            y,
            v * u_vm1,
            g_v,
            v * (v - 1) * pow_(u, v - 2),
            u_vm1 * (1 + v * log_u),
            g_v * log_u,
        )
    return coefficients[:3] if order == 1 else coefficients


def _is_integral(value: Scalar) -> bool:
    return value.imag == 0 and float(value.real).is_integer()


def _anywhere(_: Scalar) -> bool:
    return True


class Field:
    """Arithmetic of one base field.

    This class should generally not be used directly, use the :data:`REAL` and
    :data:`COMPLEX` instances, or :func:`field_of` to select the field of some values.

    Parameters
    ----------
    name:
        Name of the field, "real" or "complex".
    lib:
        Module with the elementary functions of the field (math or cmath).
    scalar_type:
        Python type of the field elements.
    np_type:
        Numpy type used for IEEE propagation in non-strict mode.
    domains:
        Open domain of each unary primitive, as a predicate on the argument.
        Primitives that are not listed are defined everywhere.
    ordered:
        Whether elements can be compared.

    """

    def __init__(  # pylint: disable=too-many-arguments
        self,
        name: str,
        lib: Any,
        scalar_type: type,
        np_type: type,
        domains: dict[str, Callable[[Any], bool]],
        ordered: bool,
    ):
        """Set up the coefficient tables of the field."""
        self.name = name
        self.scalar_type = scalar_type
        self.ordered = ordered
        self._np_type = np_type
        self._rules = _unary_rules(lib)
        self._ieee_rules = _unary_rules(_IEEE)
        self._domains = domains
        self._pow: Callable = math.pow if lib is math else operator.pow
        self._log: Callable = lib.log

    def __repr__(self) -> str:
        """Represent the field by its name."""
        return f"Field<{self.name}>"

    def coerce(self, value: Any) -> Scalar:
        """Convert a number to an element of this field."""
        return self.scalar_type(value)

    def _leave_domain(self, name: str, x: Any):
        if is_strict():
            raise DomainError(
                f"'{name}' is not twice differentiable at {x!r} in the {self.name} field."
            )
        warnings.warn(
            f"'{name}' evaluated outside its domain at {x!r}, propagating IEEE special values.",
            DomainWarning,
            stacklevel=4,
        )

    def _to_python(self, coefficients: tuple) -> tuple:
        return tuple(self.coerce(c) for c in coefficients)

    def unary(self, name: str, x: Scalar, order: int = 2) -> tuple:
        """Compute a unary primitive and its derivatives.

        No double lies on a pole of tan or tanh, so next to a pole the coefficients are
        large but finite, and no DomainError is raised.

        Parameters
        ----------
        name:
            Name of the primitive, one of :data:`UNARY_PRIMITIVES`.
        x:
            Argument of the primitive.
        order:
            Highest derivative needed (0, 1 or 2).

        Returns
        -------
            Tuple (g(x), g'(x), g''(x)) truncated to order + 1 entries.

        Raises
        ------
        ValueError:
            If the primitive is unknown.
        DomainError:
            If x is outside the domain of the primitive in strict mode.

        """
        if name not in self._rules:
            raise ValueError(f"Unknown primitive '{name}'.")
        if not self._domains.get(name, _anywhere)(x):
            self._leave_domain(name, x)
            return self._ieee_unary(name, x, order)
        try:
            coefficients = _apply(self._rules[name], x, order)
        except OverflowError:
            return self._ieee_unary(name, x, order)
        except (ValueError, ZeroDivisionError):
            self._leave_domain(name, x)
            return self._ieee_unary(name, x, order)
        return coefficients

    def _ieee_unary(self, name: str, x: Scalar, order: int) -> tuple:
        with np.errstate(all="ignore"):
            coefficients = _apply(self._ieee_rules[name], self._np_type(x), order)
        return self._to_python(coefficients)

    def quotient(self, a: Scalar, b: Scalar, order: int = 2) -> tuple:
        """Compute a / b and its partial derivatives.

        Returns
        -------
            Tuple (y, dy/da, dy/db, d2y/dadb, d2y/db2) truncated to order 0 (y),
            order 1 (first three entries) or order 2 (all). The second derivative
            with respect to a vanishes.

        Raises
        ------
        DomainError:
            If b is zero in strict mode.

        """
        if b != 0:
            return _quotient(a, b, order)
        self._leave_domain("div", b)
        with np.errstate(all="ignore"):
            coefficients = _quotient(self._np_type(a), self._np_type(b), order)
        return self._to_python(coefficients)

    def power(self, u: Scalar, v: Scalar, order: int = 2, fixed_exponent: bool = False) -> tuple:
        """Compute u ** v and its partial derivatives.

        Parameters
        ----------
        u:
            The base.
        v:
            The exponent.
        order:
            Highest derivative needed (0, 1 or 2).
        fixed_exponent:
            Whether the exponent carries no perturbation. Integer exponents then take a
            fast path that does not need the logarithm of the base, which allows negative
            (real) and zero bases.

        Returns
        -------
            Tuple (y, y_u, y_v, y_uu, y_uv, y_vv) truncated to order 0 (y),
            order 1 (first three entries) or order 2 (all).

        Raises
        ------
        DomainError:
            In strict mode, if the base is not positive (real field) or zero (complex field)
            while the exponent is perturbed or not an integer, or if the base is zero and
            the integer exponent negative.

        """
        integral = fixed_exponent and _is_integral(v)
        if integral:
            valid = u != 0 or v.real >= 0
        elif self.ordered:
            valid = u > 0
        else:
            valid = u != 0
        if valid:
            try:
                return _power(u, v, order, integral, self._pow, self._log)
            except OverflowError:
                pass
        else:
            self._leave_domain("pow", u)
        with np.errstate(all="ignore"):
            coefficients = _power(
                self._np_type(u), self._np_type(v), order, integral, np.power, np.log
            )
        return self._to_python(coefficients)

    def compare(self, a: Scalar, b: Scalar) -> int:
        """Compare two field elements, returning -1, 0 or 1.

        Raises
        ------
        DomainError:
            If the field is unordered or one of the elements is NaN.

        """
        if not self.ordered:
            raise DomainError("Complex numbers cannot be ordered.")
        if a < b:
            return -1
        if a > b:
            return 1
        if a == b:
            return 0
        raise DomainError(f"Cannot order {a!r} and {b!r}.")


REAL = Field(
    "real",
    math,
    float,
    np.float64,
    domains={
        "sqrt": lambda x: x > 0,
        "log": lambda x: x > 0,
        "asin": lambda x: -1 < x < 1,
        "acos": lambda x: -1 < x < 1,
    },
    ordered=True,
)

COMPLEX = Field(
    "complex",
    cmath,
    complex,
    np.complex128,
    domains={
        "sqrt": lambda x: x != 0,
        "log": lambda x: x != 0,
        "asin": lambda x: x not in (1, -1),
        "acos": lambda x: x not in (1, -1),
        "atan": lambda x: x not in (1j, -1j),
    },
    ordered=False,
)


def field_of(*values: Any) -> Field:
    """Select the smallest field that contains all values.

    Examples
    --------
    >>> field_of(1.0, 2)
    Field<real>
    >>> field_of(1.0, 2j)
    Field<complex>

    """
    if any(isinstance(value, (complex, np.complexfloating)) for value in values):
        return COMPLEX
    return REAL
