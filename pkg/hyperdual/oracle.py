"""Finite difference and complex step derivatives for verification.

These are approximations with truncation and (for finite differences) rounding errors,
they only serve to check the exact derivatives of the drivers.

At a complex point the finite difference stencils are applied both along the real and
along the imaginary axis of each coordinate, and combined assuming that the function is
holomorphic, which holds for every primitive in this package away from branch cuts.
"""

from __future__ import annotations

import logging
import math
import sys
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from hyperdual.exception import NotApplicableError
from hyperdual.field import Scalar, field_of

logger = logging.getLogger(__name__)

PlainFunction = Callable[[Sequence[Scalar]], Scalar]

_EPS = sys.float_info.epsilon


@dataclass(frozen=True)
class FDConfig:
    """Step sizes for central finite differences.

    Parameters
    ----------
    h1:
        Step for first derivatives, by default the cube root of the machine epsilon.
    h2:
        Step for second derivatives, by default the fourth root of the machine epsilon.
    relative:
        Scale the steps with max(1, |x_j|) for coordinate j.

    Raises
    ------
    ValueError:
        If a step is not a positive finite number.

    """

    h1: float = _EPS ** (1 / 3)
    h2: float = _EPS ** (1 / 4)
    relative: bool = True

    def __post_init__(self):
        """Validate the steps."""
        for name in ("h1", "h2"):
            step = getattr(self, name)
            if not (math.isfinite(step) and step > 0):
                raise ValueError(f"Step {name} should be positive and finite, not {step}.")

    def steps(self, h: float, x: Sequence[Scalar]) -> list[float]:
        """Step for each coordinate of a point."""
        if not self.relative:
            return [h] * len(x)
        return [h * max(1.0, abs(x_j)) for x_j in x]


def _directions(x: Sequence[Scalar]) -> list[Scalar]:
    if field_of(*x).ordered:
        return [1.0]
    return [1.0, 1j]


def _shifted(x: Sequence[Scalar], *shifts: tuple[int, Scalar]) -> list[Scalar]:
    point = list(x)
    for index, delta in shifts:
        point[index] = point[index] + delta
    return point


def _as_array(values) -> np.ndarray:
    array = np.array(values)
    return array.astype(np.complex128 if np.iscomplexobj(array) else np.float64)


def _prepare(x: Sequence[Scalar]) -> list[Scalar]:
    field = field_of(*x)
    return [field.coerce(x_j) for x_j in x]


def fd_jacobian(
    func: PlainFunction, x: Sequence[Scalar], config: FDConfig = FDConfig()
) -> np.ndarray:
    """Approximate the Jacobian with central differences.

    Parameters
    ----------
    func:
        Function of a sequence of plain numbers.
    x:
        Point with a margin of at least the step to the boundary of the domain.
    config, optional:
        Step sizes, by default relative steps of the cube root of the machine epsilon.

    Returns
    -------
        Array with (f(x + h·e_j) - f(x - h·e_j)) / 2h for each coordinate j.

    """
    x = _prepare(x)
    steps = config.steps(config.h1, x)
    directions = _directions(x)
    logger.debug("Central differences at %s with steps %s.", x, steps)
    jac = []
    for j, h in enumerate(steps):
        total: Scalar = 0.0
        for u in directions:
            diff = (func(_shifted(x, (j, h * u))) - func(_shifted(x, (j, -h * u)))) / (2 * h)
            total += diff / u / len(directions)
        jac.append(total)
    return _as_array(jac)


def _second_difference(func: PlainFunction, x: list, j: int, k: int, h_j: float, h_k: float,
                       u: Scalar) -> Scalar:
    if j == k:
        center = func(x)
        return (func(_shifted(x, (j, h_j * u))) - 2 * center
                + func(_shifted(x, (j, -h_j * u)))) / (h_j * h_j)
    plus_plus = func(_shifted(x, (j, h_j * u), (k, h_k * u)))
    plus_minus = func(_shifted(x, (j, h_j * u), (k, -h_k * u)))
    minus_plus = func(_shifted(x, (j, -h_j * u), (k, h_k * u)))
    minus_minus = func(_shifted(x, (j, -h_j * u), (k, -h_k * u)))
    return (plus_plus - plus_minus - minus_plus + minus_minus) / (4 * h_j * h_k)


def fd_hessian(
    func: PlainFunction, x: Sequence[Scalar], config: FDConfig = FDConfig()
) -> np.ndarray:
    """Approximate the Hessian with central second differences.

    Off-diagonal entries use the four point stencil, diagonal entries the three point
    stencil. The result is the average of the (j, k) and (k, j) stencils and therefore
    exactly symmetric.

    Parameters
    ----------
    func:
        Function of a sequence of plain numbers.
    x:
        Point with a margin of at least twice the step to the boundary of the domain.
    config, optional:
        Step sizes, by default relative steps of the fourth root of the machine epsilon.

    Returns
    -------
        Square array with the second derivatives.

    """
    x = _prepare(x)
    steps = config.steps(config.h2, x)
    directions = _directions(x)
    logger.debug("Second differences at %s with steps %s.", x, steps)
    n_dim = len(x)
    stencils = [[0.0 for _ in range(n_dim)] for _ in range(n_dim)]
    for j in range(n_dim):
        for k in range(n_dim):
            total: Scalar = 0.0
            for u in directions:
                diff = _second_difference(func, x, j, k, steps[j], steps[k], u)
                total += diff / (u * u) / len(directions)
            stencils[j][k] = total
    hess = [[(stencils[j][k] + stencils[k][j]) / 2 for k in range(n_dim)] for j in range(n_dim)]
    return _as_array(hess)


def complex_step_jacobian(
    func: PlainFunction, x: Sequence[Scalar], h: float = 1e-20
) -> np.ndarray:
    """Compute the Jacobian with the complex step Im f(x + ih·e_j) / h.

    There is no subtractive cancellation, so the step can be tiny and the result is
    accurate to machine precision for real-analytic functions.

    Parameters
    ----------
    func:
        Function of a sequence of plain numbers that also accepts complex numbers.
    x:
        Real point.
    h, optional:
        Imaginary step, by default 1e-20.

    Returns
    -------
        Array with the real first derivatives.

    Raises
    ------
    NotApplicableError:
        If the point is complex or the function is not real-valued at the point.
    ValueError:
        If the step is not positive.

    """
    if not (math.isfinite(h) and h > 0):
        raise ValueError(f"Step should be positive and finite, not {h}.")
    if any(isinstance(x_j, (complex, np.complexfloating)) and x_j.imag != 0 for x_j in x):
        raise NotApplicableError("The complex step method needs a real point.")
    point = [float(x_j.real) for x_j in x]
    value = func(point)
    if isinstance(value, (complex, np.complexfloating)) and value.imag != 0:
        raise NotApplicableError(f"The function is not real-valued at {point}, but {value}.")
    jac = []
    for j in range(len(point)):
        shifted: list[Scalar] = list(point)
        shifted[j] = complex(point[j], h)
        jac.append(complex(func(shifted)).imag / h)
    return np.array(jac, dtype=np.float64)


def max_relative_deviation(actual, reference) -> float:
    """Largest deviation |a - b| / max(|a|, |b|, 1) between two arrays.

    Returns NaN if any of the entries is NaN, and 0 for empty arrays.

    Raises
    ------
    ValueError:
        If the shapes of the arrays differ.

    """
    actual = np.asarray(actual)
    reference = np.asarray(reference)
    if actual.shape != reference.shape:
        raise ValueError(f"Cannot compare arrays of shape {actual.shape} and {reference.shape}.")
    if actual.size == 0:
        return 0.0
    scale = np.maximum(np.maximum(np.abs(actual), np.abs(reference)), 1.0)
    return float(np.max(np.abs(actual - reference) / scale))
