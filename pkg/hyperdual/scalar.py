"""Dual and hyper-dual numbers with overloaded operators and elementary functions.

A dual number ⟨x, δx⟩ carries a value together with its first order perturbation.
A hyper-dual number ⟨x, δx₁, δx₂, δδx⟩ carries a value, two independent first order
perturbations and their second order cross perturbation. Every primitive g extends to
these numbers by the overloading rule

    y = g(x)
    δy₁ = g'(x)·δx₁
    δy₂ = g'(x)·δx₂
    δδy = g''(x)·δx₁·δx₂ + g'(x)·δδx

(with the obvious generalisation for primitives of two arguments), so any function that
is composed of these primitives returns its own first and second derivatives along the
seeded directions.

All primitives also accept plain floats and complex numbers, in which case they return
the plain value computed by exactly the same field operation as the primal part of the
Dual and HyperDual results.

Examples
--------
>>> x = HyperDual.variable(4.0)
>>> (x + sqrt(x)) / sqrt(x)
HyperDual(primal=3.0, d1=0.25, d2=0.25, d12=-0.03125)

"""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Optional, Union, overload

import numpy as np

from hyperdual.exception import ArityMismatchError
from hyperdual.field import Scalar, field_of

_NUMBER_TYPES = (int, float, complex, np.number)


class Ordering(enum.IntEnum):
    """Result of comparing the primal parts of two numbers."""

    LESS = -1
    EQUAL = 0
    GREATER = 1


class _Overloads:
    """Python operators for the automatic differentiation scalars."""

    __slots__ = ()

    def __add__(self, other):
        return add(self, other) if _is_operand(other) else NotImplemented

    def __radd__(self, other):
        return add(other, self) if _is_operand(other) else NotImplemented

    def __sub__(self, other):
        return sub(self, other) if _is_operand(other) else NotImplemented

    def __rsub__(self, other):
        return sub(other, self) if _is_operand(other) else NotImplemented

    def __mul__(self, other):
        return mul(self, other) if _is_operand(other) else NotImplemented

    def __rmul__(self, other):
        return mul(other, self) if _is_operand(other) else NotImplemented

    def __truediv__(self, other):
        return div(self, other) if _is_operand(other) else NotImplemented

    def __rtruediv__(self, other):
        return div(other, self) if _is_operand(other) else NotImplemented

    def __pow__(self, other):
        return power(self, other) if _is_operand(other) else NotImplemented

    def __rpow__(self, other):
        return power(other, self) if _is_operand(other) else NotImplemented

    def __neg__(self):
        return neg(self)

    def __pos__(self):
        return self

    # Orderings only look at the primal parts, equality (from the dataclass) at all parts.
    def __lt__(self, other):
        if not _is_operand(other):
            return NotImplemented
        return compare(self, other) is Ordering.LESS

    def __le__(self, other):
        if not _is_operand(other):
            return NotImplemented
        return compare(self, other) is not Ordering.GREATER

    def __gt__(self, other):
        if not _is_operand(other):
            return NotImplemented
        return compare(self, other) is Ordering.GREATER

    def __ge__(self, other):
        if not _is_operand(other):
            return NotImplemented
        return compare(self, other) is not Ordering.LESS


def _set_parts(obj: Any, names: tuple[str, ...]):
    field = field_of(*(getattr(obj, name) for name in names))
    for name in names:
        object.__setattr__(obj, name, field.coerce(getattr(obj, name)))


@dataclass(frozen=True)
class Dual(_Overloads):
    """Dual number ⟨x, δx⟩ for first derivatives.

    Both parts are elements of the same base field: if one of them is complex, both are
    stored as complex numbers, otherwise as floats.

    Parameters
    ----------
    primal:
        The value x.
    d:
        The first order perturbation δx.

    Examples
    --------
    >>> sqrt(Dual(4.0, 1.0))
    Dual(primal=2.0, d=0.25)

    """

    primal: Scalar
    d: Scalar = 0.0

    def __post_init__(self):
        """Bring both parts into their common field."""
        _set_parts(self, ("primal", "d"))

    @classmethod
    def constant(cls, value: Scalar) -> Dual:
        """Create a dual number without perturbation."""
        return cls(value, 0.0)

    @classmethod
    def variable(cls, value: Scalar) -> Dual:
        """Create the dual number ⟨x, 1⟩ of an independent variable."""
        return cls(value, 1.0)

    def __str__(self) -> str:
        """Show the dual number in angle bracket notation."""
        return f"<{self.primal!r}, {self.d!r}>"


@dataclass(frozen=True)
class HyperDual(_Overloads):
    """Hyper-dual number ⟨x, δx₁, δx₂, δδx⟩ for first and second derivatives.

    All four parts are elements of the same base field.

    Parameters
    ----------
    primal:
        The value x.
    d1:
        The first order perturbation δx₁.
    d2:
        The first order perturbation δx₂.
    d12:
        The second order perturbation δδx.

    Examples
    --------
    >>> HyperDual(2.0, 1.0, 1.0, 0.0) * HyperDual(2.0, 1.0, 1.0, 0.0)
    HyperDual(primal=4.0, d1=4.0, d2=4.0, d12=2.0)

    """

    primal: Scalar
    d1: Scalar = 0.0
    d2: Scalar = 0.0
    d12: Scalar = 0.0

    def __post_init__(self):
        """Bring all parts into their common field."""
        _set_parts(self, ("primal", "d1", "d2", "d12"))

    @classmethod
    def constant(cls, value: Scalar) -> HyperDual:
        """Create a hyper-dual number without perturbations."""
        return cls(value, 0.0, 0.0, 0.0)

    @classmethod
    def variable(cls, value: Scalar, d1: Scalar = 1.0, d2: Scalar = 1.0) -> HyperDual:
        """Create a seeded independent variable ⟨x, δx₁, δx₂, 0⟩.

        With the default seeds the output of a univariate function holds its first
        derivative in d1 and d2 and its second derivative in d12.
        """
        return cls(value, d1, d2, 0.0)

    def swapped(self) -> HyperDual:
        """Exchange the two first order perturbations."""
        return HyperDual(self.primal, self.d2, self.d1, self.d12)

    def __str__(self) -> str:
        """Show the hyper-dual number in angle bracket notation."""
        return f"<{self.primal!r}, {self.d1!r}, {self.d2!r}, {self.d12!r}>"


ADScalar = Union[Scalar, Dual, HyperDual]


class HDPoint(Sequence):
    """Vector of hyper-dual numbers ⟨𝐱, δ𝐱₁, δ𝐱₂, δδ𝐱⟩.

    Parameters
    ----------
    components:
        The hyper-dual coordinates, at least one.

    Raises
    ------
    ValueError:
        If there are no components.
    TypeError:
        If a component is not a HyperDual.

    """

    def __init__(self, components: Iterable[HyperDual]):
        """Store the coordinates."""
        self._components = tuple(components)
        if len(self._components) == 0:
            raise ValueError("A hyper-dual point needs at least one coordinate.")
        for component in self._components:
            if not isinstance(component, HyperDual):
                raise TypeError(f"Expected HyperDual coordinates, not {type(component)}.")

    @classmethod
    def from_seeds(
        cls,
        x: Sequence[Scalar],
        d1: Optional[Sequence[Scalar]] = None,
        d2: Optional[Sequence[Scalar]] = None,
        d12: Optional[Sequence[Scalar]] = None,
    ) -> HDPoint:
        """Build a point from the primal vector and the three perturbation vectors.

        Perturbation vectors that are not given are zero.

        Raises
        ------
        ArityMismatchError:
            If a perturbation vector has another length than x.

        """
        n_dim = len(x)
        zeros = [0.0] * n_dim
        seeds = [zeros if seed is None else list(seed) for seed in (d1, d2, d12)]
        for seed in seeds:
            if len(seed) != n_dim:
                raise ArityMismatchError(
                    f"Seed of length {len(seed)} does not match point of length {n_dim}."
                )
        return cls(HyperDual(*parts) for parts in zip(x, *seeds))

    @overload
    def __getitem__(self, index: int) -> HyperDual: ...

    @overload
    def __getitem__(self, index: slice) -> tuple[HyperDual, ...]: ...

    def __getitem__(self, index):
        """Get one (or a slice of) coordinate(s)."""
        return self._components[index]

    def __len__(self) -> int:
        """Get the dimension of the point."""
        return len(self._components)

    def __iter__(self) -> Iterator[HyperDual]:
        """Iterate over the coordinates."""
        return iter(self._components)

    def __eq__(self, other) -> bool:
        """Compare all parts of all coordinates."""
        if not isinstance(other, HDPoint):
            return NotImplemented
        return self._components == other._components

    def __hash__(self) -> int:
        """Hash the coordinates."""
        return hash(self._components)

    def __repr__(self) -> str:
        """Represent the point by its coordinates."""
        return f"HDPoint({list(self._components)!r})"

    @property
    def primal(self) -> tuple[Scalar, ...]:
        """The primal vector 𝐱."""
        return tuple(c.primal for c in self._components)

    @property
    def d1(self) -> tuple[Scalar, ...]:
        """The first perturbation vector δ𝐱₁."""
        return tuple(c.d1 for c in self._components)

    @property
    def d2(self) -> tuple[Scalar, ...]:
        """The second perturbation vector δ𝐱₂."""
        return tuple(c.d2 for c in self._components)

    @property
    def d12(self) -> tuple[Scalar, ...]:
        """The second order perturbation vector δδ𝐱."""
        return tuple(c.d12 for c in self._components)


def _is_operand(value: Any) -> bool:
    return isinstance(value, (Dual, HyperDual) + _NUMBER_TYPES)


def _lift(*operands: Any) -> tuple[Optional[type], list]:
    """Promote all operands to the AD type among them.

    Returns the AD type (None for plain numbers) and the promoted operands.
    """
    kind: Optional[type] = None
    for operand in operands:
        if isinstance(operand, (Dual, HyperDual)):
            if kind is not None and not isinstance(operand, kind):
                raise TypeError("Cannot combine Dual and HyperDual numbers.")
            kind = type(operand)
        elif not isinstance(operand, _NUMBER_TYPES):
            raise TypeError(f"Unsupported operand type '{type(operand).__name__}'.")
    if kind is None:
        field = field_of(*operands)
        return None, [field.coerce(operand) for operand in operands]
    return kind, [op if isinstance(op, kind) else kind.constant(op) for op in operands]


def _unary(name: str, a: ADScalar) -> ADScalar:
    kind, (a,) = _lift(a)
    if kind is None:
        return field_of(a).unary(name, a, order=0)[0]
    field = field_of(a.primal)
    if kind is Dual:
        y, g_1 = field.unary(name, a.primal, order=1)
        return Dual(y, g_1 * a.d)
    y, g_1, g_2 = field.unary(name, a.primal)
    return HyperDual(y, g_1 * a.d1, g_1 * a.d2, g_2 * (a.d1 * a.d2) + g_1 * a.d12)


def _binary(a, b, coefficients: tuple) -> ADScalar:
    """Apply the two-argument overloading rule, given g and its partial derivatives."""
    if isinstance(a, Dual):
        y, g_a, g_b = coefficients[:3]
        return Dual(y, g_a * a.d + g_b * b.d)
    y, g_a, g_b, g_aa, g_ab, g_bb = coefficients
    return HyperDual(
        y,
        g_a * a.d1 + g_b * b.d1,
        g_a * a.d2 + g_b * b.d2,
        g_aa * (a.d1 * a.d2)
        + g_ab * (a.d1 * b.d2 + b.d1 * a.d2)
        + g_bb * (b.d1 * b.d2)
        + g_a * a.d12
        + g_b * b.d12,
    )


def add(a: ADScalar, b: ADScalar) -> ADScalar:
    """Add two numbers, all parts componentwise."""
    kind, (a, b) = _lift(a, b)
    if kind is None:
        return a + b
    if kind is Dual:
        return Dual(a.primal + b.primal, a.d + b.d)
    return HyperDual(a.primal + b.primal, a.d1 + b.d1, a.d2 + b.d2, a.d12 + b.d12)


def sub(a: ADScalar, b: ADScalar) -> ADScalar:
    """Subtract two numbers, all parts componentwise."""
    kind, (a, b) = _lift(a, b)
    if kind is None:
        return a - b
    if kind is Dual:
        return Dual(a.primal - b.primal, a.d - b.d)
    return HyperDual(a.primal - b.primal, a.d1 - b.d1, a.d2 - b.d2, a.d12 - b.d12)


def neg(a: ADScalar) -> ADScalar:
    """Negate all parts of a number."""
    kind, (a,) = _lift(a)
    if kind is None:
        return -a
    if kind is Dual:
        return Dual(-a.primal, -a.d)
    return HyperDual(-a.primal, -a.d1, -a.d2, -a.d12)


def mul(a: ADScalar, b: ADScalar) -> ADScalar:
    """Multiply two numbers (product rule)."""
    kind, (a, b) = _lift(a, b)
    if kind is None:
        return a * b
    if kind is Dual:
        return Dual(a.primal * b.primal, a.primal * b.d + b.primal * a.d)
    return HyperDual(
        a.primal * b.primal,
        a.primal * b.d1 + b.primal * a.d1,
        a.primal * b.d2 + b.primal * a.d2,
        a.d1 * b.d2 + b.d1 * a.d2 + a.primal * b.d12 + b.primal * a.d12,
    )


def div(a: ADScalar, b: ADScalar) -> ADScalar:
    """Divide two numbers (quotient rule).

    Raises
    ------
    DomainError:
        If the primal part of b is zero in strict mode.

    """
    kind, (a, b) = _lift(a, b)
    if kind is None:
        return field_of(a, b).quotient(a, b, order=0)[0]
    field = field_of(a.primal, b.primal)
    if kind is Dual:
        return _binary(a, b, field.quotient(a.primal, b.primal, order=1))
    y, g_a, g_b, g_ab, g_bb = field.quotient(a.primal, b.primal)
    return _binary(a, b, (y, g_a, g_b, 0.0, g_ab, g_bb))


def power(a: ADScalar, b: ADScalar) -> ADScalar:
    """Raise a to the power b.

    An exponent without perturbation that has an integer value is handled by a fast path,
    which also allows negative real bases.

    Raises
    ------
    DomainError:
        In strict mode, if the base is not positive (real field) or zero (complex field)
        while the exponent is perturbed or not integer, or if a zero base is raised to a
        negative power.

    """
    kind, (a, b) = _lift(a, b)
    if kind is None:
        return field_of(a, b).power(a, b, order=0, fixed_exponent=True)[0]
    field = field_of(a.primal, b.primal)
    if kind is Dual:
        return _binary(a, b, field.power(a.primal, b.primal, order=1, fixed_exponent=b.d == 0))
    fixed = b.d1 == 0 and b.d2 == 0 and b.d12 == 0
    return _binary(a, b, field.power(a.primal, b.primal, fixed_exponent=fixed))


def compare(a: ADScalar, b: ADScalar) -> Ordering:
    """Order two numbers by their primal parts, ignoring all perturbations.

    Raises
    ------
    DomainError:
        If one of the numbers is complex or NaN.

    """
    kind, (a, b) = _lift(a, b)
    if kind is not None:
        a, b = a.primal, b.primal
    return Ordering(field_of(a, b).compare(a, b))


def sqrt(a: ADScalar) -> ADScalar:
    """Square root (principal branch in the complex field)."""
    return _unary("sqrt", a)


def exp(a: ADScalar) -> ADScalar:
    """Exponential function."""
    return _unary("exp", a)


def log(a: ADScalar) -> ADScalar:
    """Natural logarithm (principal branch in the complex field)."""
    return _unary("log", a)


def sin(a: ADScalar) -> ADScalar:
    """Sine."""
    return _unary("sin", a)


def cos(a: ADScalar) -> ADScalar:
    """Cosine."""
    return _unary("cos", a)


def tan(a: ADScalar) -> ADScalar:
    """Tangent."""
    return _unary("tan", a)


def sinh(a: ADScalar) -> ADScalar:
    """Hyperbolic sine."""
    return _unary("sinh", a)


def cosh(a: ADScalar) -> ADScalar:
    """Hyperbolic cosine."""
    return _unary("cosh", a)


def tanh(a: ADScalar) -> ADScalar:
    """Hyperbolic tangent."""
    return _unary("tanh", a)


def asin(a: ADScalar) -> ADScalar:
    """Inverse sine, defined on the open interval (-1, 1) in the real field."""
    return _unary("asin", a)


def acos(a: ADScalar) -> ADScalar:
    """Inverse cosine, defined on the open interval (-1, 1) in the real field."""
    return _unary("acos", a)


def atan(a: ADScalar) -> ADScalar:
    """Inverse tangent."""
    return _unary("atan", a)


UNARY_FUNCTIONS = {
    "sqrt": sqrt,
    "exp": exp,
    "log": log,
    "sin": sin,
    "cos": cos,
    "tan": tan,
    "sinh": sinh,
    "cosh": cosh,
    "tanh": tanh,
    "asin": asin,
    "acos": acos,
    "atan": atan,
}

BINARY_FUNCTIONS = {
    "+": add,
    "-": sub,
    "*": mul,
    "/": div,
    "^": power,
}
