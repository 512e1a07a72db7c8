"""Jacobian and Hessian drivers.

The drivers call a pure function repeatedly with hyper-dual numbers seeded with
Cartesian unit vectors and read the exact first and second derivatives from the
perturbation parts of the outputs.
"""

from __future__ import annotations

import cmath
import logging
import threading
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from hyperdual.exception import ArityMismatchError, ImpureFunctionError
from hyperdual.executor import SeedPlan
from hyperdual.field import Scalar, field_of
from hyperdual.scalar import ADScalar, HyperDual

logger = logging.getLogger(__name__)


class DiffFunction:
    """Pure scalar function of n AD scalars with a declared arity.

    Every operation inside the function has to go through the primitives of
    :mod:`hyperdual.scalar` (directly or through operator overloading), and the function
    should have no side effects: the drivers call it several times at the same point and
    possibly from several threads.

    Parameters
    ----------
    func:
        Callable that takes a sequence of n AD scalars and returns one AD scalar.
    arity:
        Number of arguments n.
    name, optional:
        Name used in log messages, by default the name of the callable.

    Raises
    ------
    ValueError:
        If the arity is smaller than 1.

    """

    def __init__(
        self, func: Callable[[Sequence], ADScalar], arity: int, name: Optional[str] = None
    ):
        """Wrap a callable."""
        if arity < 1:
            raise ValueError(f"Arity of a function should be at least 1, not {arity}.")
        self.func = func
        self.arity = arity
        self.name = name if name is not None else getattr(func, "__name__", repr(func))

    def __call__(self, point: Sequence) -> ADScalar:
        """Evaluate the function at a point of AD scalars."""
        if len(point) != self.arity:
            raise ArityMismatchError(
                f"Function '{self.name}' takes {self.arity} arguments, got {len(point)}."
            )
        return self.func(point)

    def __repr__(self) -> str:
        """Representation of the function."""
        return f"{type(self).__name__}({self.name}, arity={self.arity})"


class CountingFunction(DiffFunction):
    """Function that counts how often it has been called.

    The counter is protected by a lock, so that calls from the parallel mode of the
    drivers are all counted.
    """

    def __init__(
        self, func: Callable[[Sequence], ADScalar], arity: int, name: Optional[str] = None
    ):
        """Wrap a callable with a counter set to zero."""
        super().__init__(func, arity, name)
        self._lock = threading.Lock()
        self.invocations = 0

    def __call__(self, point: Sequence) -> ADScalar:
        """Count and evaluate."""
        with self._lock:
            self.invocations += 1
        return super().__call__(point)

    def reset(self):
        """Reset the counter to zero."""
        with self._lock:
            self.invocations = 0


@dataclass(frozen=True)
class DerivativeReport:
    """Value and derivatives of a function at a point.

    The arrays are read-only. The Hessian is None for first derivative drivers.
    """

    value: Scalar
    jacobian: np.ndarray
    hessian: Optional[np.ndarray]
    invocations: int

    @property
    def n_dim(self) -> int:
        """Number of variables."""
        return len(self.jacobian)


def _as_function(func: Union[DiffFunction, Callable], point: Sequence[Scalar]) -> DiffFunction:
    if isinstance(func, DiffFunction):
        if len(point) != func.arity:
            raise ArityMismatchError(
                f"Point has {len(point)} coordinates, but '{func.name}' takes {func.arity}."
            )
        return func
    if len(point) == 0:
        raise ArityMismatchError("Cannot differentiate at an empty point.")
    return DiffFunction(func, len(point))


def _as_point(x: Sequence[Scalar]) -> list[Scalar]:
    field = field_of(*x)
    return [field.coerce(x_j) for x_j in x]


def _read_only(values: list) -> np.ndarray:
    array = np.array(values)
    array = array.astype(np.complex128 if np.iscomplexobj(array) else np.float64)
    array.flags.writeable = False
    return array


def _same_value(a: Scalar, b: Scalar) -> bool:
    return a == b or (cmath.isnan(a) and cmath.isnan(b))


def _check_primal(func: DiffFunction, outputs: dict) -> Scalar:
    results = list(outputs.values())
    value = results[0].primal
    for key, result in outputs.items():
        if not _same_value(result.primal, value):
            raise ImpureFunctionError(
                f"Calls of '{func.name}' disagree on the value: {value} for the first call "
                f"and {result.primal} for call {key}. Is the function pure?"
            )
    return value


def _execute(func: DiffFunction, plan: SeedPlan, dry_run: bool, **kwargs) -> Optional[dict]:
    logger.debug("Planned %d calls of %s at %s.", len(plan), func, plan.point)
    if dry_run:
        return None
    return plan.execute(func, **kwargs)


def jacobian(
    func: Union[DiffFunction, Callable],
    x: Sequence[Scalar],
    dry_run: bool = False,
    **kwargs,
) -> Union[DerivativeReport, SeedPlan]:
    """Compute the value and the Jacobian of a function at a point.

    Makes exactly n calls with seeds ⟨𝐱, e_j, 0, 0⟩, the j-th Jacobian entry is the
    first perturbation part of the j-th output.

    Parameters
    ----------
    func:
        Function to differentiate, a :class:`DiffFunction` or a callable that takes
        a sequence of hyper-dual numbers.
    x:
        Point of n real or complex numbers.
    dry_run, optional:
        Return the planned calls instead of executing them.
    kwargs:
        Options for the execution: parallel, n_jobs and progress_bar.

    Returns
    -------
        A report without Hessian, or the seed plan for a dry run.

    Raises
    ------
    ArityMismatchError:
        If the number of coordinates differs from the arity of the function.
    DomainError:
        If the function leaves the domain of a primitive (strict mode).
    ImpureFunctionError:
        If the calls disagree on the value of the function.

    Examples
    --------
    >>> jacobian(lambda x: x[0] * x[1], [2.0, 3.0]).jacobian
    array([3., 2.])

    """
    diff_func = _as_function(func, x)
    plan = SeedPlan(_as_point(x))
    for j in range(diff_func.arity):
        plan.add_unit_call(j, j, None)
    outputs = _execute(diff_func, plan, dry_run, **kwargs)
    if outputs is None:
        return plan
    value = _check_primal(diff_func, outputs)
    return DerivativeReport(
        value=value,
        jacobian=_read_only([outputs[j].d1 for j in range(diff_func.arity)]),
        hessian=None,
        invocations=len(plan),
    )


def hessian(
    func: Union[DiffFunction, Callable],
    x: Sequence[Scalar],
    dry_run: bool = False,
    **kwargs,
) -> Union[DerivativeReport, SeedPlan]:
    """Compute the value, Jacobian and Hessian of a function at a point.

    Makes exactly n(n+1)/2 calls with seeds ⟨𝐱, e_j, e_k, 0⟩ for k ≤ j. Entry (j, k)
    of the Hessian is the second order perturbation part of call (j, k), the entry (k, j)
    is a copy of it. The Jacobian entry j is the first perturbation part of call (j, 0).

    Parameters
    ----------
    func:
        Function to differentiate, a :class:`DiffFunction` or a callable that takes
        a sequence of hyper-dual numbers.
    x:
        Point of n real or complex numbers.
    dry_run, optional:
        Return the planned calls instead of executing them.
    kwargs:
        Options for the execution: parallel, n_jobs and progress_bar.

    Returns
    -------
        The complete report, or the seed plan for a dry run.

    Raises
    ------
    ArityMismatchError:
        If the number of coordinates differs from the arity of the function.
    DomainError:
        If the function leaves the domain of a primitive (strict mode).
    ImpureFunctionError:
        If the calls disagree on the value of the function.

    """
    diff_func = _as_function(func, x)
    n_dim = diff_func.arity
    plan = SeedPlan(_as_point(x))
    for j in range(n_dim):
        for k in range(j + 1):
            plan.add_unit_call((j, k), j, k)
    outputs = _execute(diff_func, plan, dry_run, **kwargs)
    if outputs is None:
        return plan
    value = _check_primal(diff_func, outputs)
    matrix: list[list] = [[0.0] * n_dim for _ in range(n_dim)]
    for j in range(n_dim):
        for k in range(j + 1):
            matrix[j][k] = outputs[(j, k)].d12
            matrix[k][j] = matrix[j][k]
    return DerivativeReport(
        value=value,
        jacobian=_read_only([outputs[(j, 0)].d1 for j in range(n_dim)]),
        hessian=_read_only(matrix),
        invocations=len(plan),
    )


def jacobian_and_hessian(
    func: Union[DiffFunction, Callable],
    x: Sequence[Scalar],
    dry_run: bool = False,
    **kwargs,
) -> Union[DerivativeReport, SeedPlan]:
    """Compute value, Jacobian and Hessian in a single pass.

    The Hessian calls already provide the Jacobian, so this is the same as :func:`hessian`.
    """
    return hessian(func, x, dry_run=dry_run, **kwargs)


def hd_call(
    func: Union[DiffFunction, Callable],
    x: Sequence[Scalar],
    v1: Sequence[Scalar],
    v2: Sequence[Scalar],
    w: Optional[Sequence[Scalar]] = None,
) -> HyperDual:
    """Call a function once with arbitrary seeds ⟨𝐱, v1, v2, w⟩.

    The output satisfies d1 = J·v1, d2 = J·v2 and d12 = v1ᵀ·H·v2 + J·w, with J and H the
    Jacobian and Hessian of the function at 𝐱.

    Parameters
    ----------
    func:
        Function to call.
    x:
        Point of n numbers.
    v1:
        First direction.
    v2:
        Second direction.
    w, optional:
        Second order perturbation, by default zero.

    Returns
    -------
        The hyper-dual output of the function.

    """
    diff_func = _as_function(func, x)
    plan = SeedPlan(_as_point(x))
    plan.add_call("seeded", v1, v2, [0.0] * len(x) if w is None else w)
    outputs = _execute(diff_func, plan, False)
    return outputs["seeded"]  # type: ignore[index,return-value]


def hessian_vector_product(
    func: Union[DiffFunction, Callable],
    x: Sequence[Scalar],
    v: Sequence[Scalar],
    **kwargs,
) -> np.ndarray:
    """Compute the product of the Hessian with a vector without forming the Hessian.

    Makes n calls with seeds ⟨𝐱, e_j, v, 0⟩, entry j of the result is e_jᵀ·H·v.

    Parameters
    ----------
    func:
        Function to differentiate.
    x:
        Point of n numbers.
    v:
        Vector of n numbers to multiply with.
    kwargs:
        Options for the execution: parallel, n_jobs and progress_bar.

    Returns
    -------
        Read-only array with H·v.

    """
    diff_func = _as_function(func, x)
    n_dim = diff_func.arity
    plan = SeedPlan(_as_point(x))
    zero = [0.0] * n_dim
    for j in range(n_dim):
        unit = list(zero)
        unit[j] = 1.0
        plan.add_call(j, unit, v, zero)
    outputs = _execute(diff_func, plan, False, **kwargs)
    _check_primal(diff_func, outputs)  # type: ignore[arg-type]
    return _read_only([outputs[j].d12 for j in range(n_dim)])  # type: ignore[index]


def dual_jacobian(
    func: Union[DiffFunction, Callable],
    x: Sequence[Scalar],
    dry_run: bool = False,
    **kwargs,
) -> Union[DerivativeReport, SeedPlan]:
    """Compute the value and the Jacobian with dual numbers.

    Makes n calls with seeds ⟨𝐱, e_j⟩. The function receives a sequence of
    :class:`~hyperdual.scalar.Dual` numbers instead of hyper-dual numbers.
    """
    diff_func = _as_function(func, x)
    plan = SeedPlan(_as_point(x))
    for j in range(diff_func.arity):
        plan.add_dual_call(j, j)
    outputs = _execute(diff_func, plan, dry_run, **kwargs)
    if outputs is None:
        return plan
    value = _check_primal(diff_func, outputs)
    return DerivativeReport(
        value=value,
        jacobian=_read_only([outputs[j].d for j in range(diff_func.arity)]),
        hessian=None,
        invocations=len(plan),
    )
