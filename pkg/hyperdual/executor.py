"""Seeded hyper-dual calls to be performed by the derivative drivers."""

from __future__ import annotations

import contextvars
import logging
from typing import Callable, Hashable, Optional, Sequence

from joblib import Parallel, delayed
from tqdm import tqdm

from hyperdual.exception import ArityMismatchError
from hyperdual.field import Scalar
from hyperdual.scalar import ADScalar, Dual, HDPoint, HyperDual

logger = logging.getLogger(__name__)


def _unit(n_dim: int, index: Optional[int]) -> list[float]:
    seed = [0.0] * n_dim
    if index is not None:
        seed[index] = 1.0
    return seed


class SeedPlan:
    """Storage for all seeded calls of one function at one point.

    This class should generally not be used directly by the user, the drivers in
    :mod:`hyperdual.drivers` build a plan, execute it and assemble the derivatives from
    the outputs. The plan can be useful to inspect beforehand how many (and which) calls
    a driver is going to make, with :meth:`print_summary`.

    Parameters
    ----------
    point:
        The primal point 𝐱 at which all calls are made.

    Raises
    ------
    ValueError:
        If the point is empty.

    Examples
    --------
    >>> plan = SeedPlan([1.0, 2.0])
    >>> plan.add_unit_call((0, 0), 0, 0)
    >>> plan.add_call("direction", [1.0, 1.0], [0.5, 0.0], [0.0, 0.0])
    >>> plan.print_summary()
    >>> outputs = plan.execute(f)

    """

    def __init__(self, point: Sequence[Scalar]):
        """Initialize an empty plan at a point."""
        if len(point) == 0:
            raise ValueError("Cannot differentiate at an empty point.")
        self.point = list(point)
        self.calls: dict[Hashable, tuple[list, list, list]] = {}
        self.dual_calls: dict[Hashable, list] = {}

    def __len__(self) -> int:
        """Get the number of calls in the plan."""
        return len(self.calls) + len(self.dual_calls)

    def _check(self, seed: Sequence[Scalar]) -> list:
        if len(seed) != len(self.point):
            raise ArityMismatchError(
                f"Seed of length {len(seed)} does not match point of length {len(self.point)}."
            )
        return list(seed)

    def add_call(
        self,
        key: Hashable,
        d1: Sequence[Scalar],
        d2: Sequence[Scalar],
        d12: Sequence[Scalar],
    ):
        """Add a hyper-dual call with arbitrary seeds ⟨𝐱, d1, d2, d12⟩.

        Parameters
        ----------
        key
            Identifier under which the output is returned.
        d1
            First perturbation vector.
        d2
            Second perturbation vector.
        d12
            Second order perturbation vector.

        """
        self.calls[key] = (self._check(d1), self._check(d2), self._check(d12))

    def add_unit_call(self, key: Hashable, j: int, k: Optional[int]):
        """Add a hyper-dual call seeded with Cartesian unit vectors ⟨𝐱, e_j, e_k, 0⟩.

        Parameters
        ----------
        key
            Identifier under which the output is returned.
        j
            Index of the first unit vector (0-based).
        k
            Index of the second unit vector, None for a zero second seed.

        """
        n_dim = len(self.point)
        self.calls[key] = (_unit(n_dim, j), _unit(n_dim, k), _unit(n_dim, None))

    def add_dual_call(self, key: Hashable, j: int):
        """Add a dual call seeded with a Cartesian unit vector ⟨𝐱, e_j⟩.

        Parameters
        ----------
        key
            Identifier under which the output is returned.
        j
            Index of the unit vector (0-based).

        """
        self.dual_calls[key] = _unit(len(self.point), j)

    def _arguments(self, key: Hashable) -> Sequence[ADScalar]:
        if key in self.calls:
            return HDPoint.from_seeds(self.point, *self.calls[key])
        return tuple(Dual(x, d) for x, d in zip(self.point, self.dual_calls[key]))

    def print_summary(self):
        """Print a summary of all the calls in the plan."""
        print(f"Point: {self.point}")
        for key, (d1, d2, d12) in self.calls.items():
            print(f"Hyper-dual call {key}: d1={d1}, d2={d2}, d12={d12}")
        for key, seed in self.dual_calls.items():
            print(f"Dual call {key}: d={seed}")

    def execute(
        self,
        func: Callable,
        parallel: bool = False,
        n_jobs: Optional[int] = None,
        progress_bar: bool = False,
    ) -> dict[Hashable, ADScalar]:
        """Execute all calls in the plan.

        Outputs that are plain numbers (for instance from a constant function) are
        promoted to numbers without perturbation of the type of the call.

        Parameters
        ----------
        func
            Function that maps a sequence of AD scalars to an AD scalar.
        parallel, optional
            Whether to run the calls concurrently in a thread pool, by default False.
            The function has to be pure for this to be safe.
        n_jobs, optional
            Number of threads in parallel mode, by default one per CPU.
        progress_bar, optional
            Whether to show a progress bar of the calls.

        Returns
        -------
            The output of each call, by key, in the order in which the calls were added.

        """
        keys = list(self.calls) + list(self.dual_calls)
        pbar = tqdm(total=len(keys), unit="call", disable=not progress_bar)
        if parallel:
            logger.info("Executing %d calls in parallel (n_jobs=%s).", len(keys), n_jobs)
            # Worker threads do not inherit context variables such as the strict mode.
            context = contextvars.copy_context()
            results = Parallel(
                n_jobs=-1 if n_jobs is None else n_jobs, prefer="threads", return_as="generator"
            )(delayed(context.copy().run)(func, self._arguments(key)) for key in keys)
        else:
            logger.debug("Executing %d calls serially.", len(keys))
            results = (func(self._arguments(key)) for key in keys)
        outputs: dict[Hashable, ADScalar] = {}
        for key, result in zip(keys, results):
            outputs[key] = self._promote(key, result)
            pbar.update(1)
        pbar.close()
        return outputs

    def _promote(self, key: Hashable, result) -> ADScalar:
        kind = HyperDual if key in self.calls else Dual
        if isinstance(result, kind):
            return result
        if isinstance(result, (HyperDual, Dual)):
            raise TypeError(
                f"Call {key} returned a {type(result).__name__}, not a {kind.__name__}."
            )
        return kind.constant(result)
