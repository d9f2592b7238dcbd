"""Scalarization of a set-valued problem and its colevel sets.

For each domain point x the scalarization takes the minimum of the
Gerstewitz value over the cloud F(x); the minimum is attained because
clouds are finite.  Colevel sets are computed along two independent
routes, via the order relation and via the scalar field, and the two
must agree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cone as _cone
from .errors import InternalConsistencyError
from .problem import SetValuedProblem, evaluate_at
from .setrel import PointCloudSet, strictly_lower_less

__all__ = [
    "ScalarField",
    "scalar_field",
    "scalar_value",
    "scalar_value_at",
    "global_inf",
    "colevel",
    "colevel_points",
    "colevel_at_set",
]


@dataclass(frozen=True)
class ScalarField:
    """Scalarization values over the grid and their infimum."""

    values: np.ndarray
    inf_value: float

    def __len__(self) -> int:
        return self.values.shape[0]


def scalar_field(problem: SetValuedProblem) -> ScalarField:
    """The cached scalar field of a problem."""
    cached = problem._cache.get("scalar_field")
    if cached is not None:
        return cached
    values = np.empty(len(problem.grid))
    for i, x in enumerate(problem.grid.points):
        cloud = problem.map_model.cloud_at(x)
        values[i] = float(np.min(_cone.gerstewitz_many(problem.cone, cloud.points)))
    field = ScalarField(values=values, inf_value=float(values.min()))
    problem._cache["scalar_field"] = field
    return field


def scalar_value(problem: SetValuedProblem, x) -> float:
    """Scalarization at a grid point."""
    idx = problem.grid.locate(x)
    return float(scalar_field(problem).values[idx])


def scalar_value_at(problem: SetValuedProblem, x) -> float:
    """Scalarization at an arbitrary domain point; analytic kinds only."""
    cloud = evaluate_at(problem, x)
    return float(np.min(_cone.gerstewitz_many(problem.cone, cloud.points)))


def global_inf(problem: SetValuedProblem) -> float:
    """Minimum of the scalarization over the grid."""
    return scalar_field(problem).inf_value


def colevel(problem: SetValuedProblem, lam: float) -> np.ndarray:
    """Sorted grid indices of the colevel set at height lam * q.

    Route one follows the definition: x survives iff the singleton
    {lam * q} does not strictly dominate F(x).  Route two thresholds the
    scalar field at lam.  Route two is returned; any disagreement beyond
    the tie tolerance band raises, since it signals misconfigured
    tolerances rather than bad input.
    """
    field = scalar_field(problem)
    tie = problem.tolerances.tie_tol
    by_field = field.values <= lam + tie

    probe = PointCloudSet((lam * problem.cone.order_unit)[None, :])
    by_relation = np.empty(len(problem.grid), dtype=bool)
    for i, x in enumerate(problem.grid.points):
        cloud = problem.map_model.cloud_at(x)
        by_relation[i] = not strictly_lower_less(probe, cloud, problem.cone)

    disagree = np.flatnonzero(by_field != by_relation)
    for i in disagree:
        if abs(field.values[i] - lam) > 2.0 * tie:
            raise InternalConsistencyError(
                f"colevel routes disagree at grid index {i}: "
                f"value {field.values[i]} vs threshold {lam}"
            )
    return np.flatnonzero(by_field)


def colevel_points(problem: SetValuedProblem, lam: float) -> np.ndarray:
    """Grid points of the colevel set at height lam * q."""
    return problem.grid.points[colevel(problem, lam)]


def colevel_at_set(problem: SetValuedProblem, cloud: PointCloudSet) -> np.ndarray:
    """Sorted grid indices x where the given set does not strictly dominate F(x)."""
    keep = np.empty(len(problem.grid), dtype=bool)
    for i, x in enumerate(problem.grid.points):
        keep[i] = not strictly_lower_less(cloud, problem.map_model.cloud_at(x), problem.cone)
    return np.flatnonzero(keep)
