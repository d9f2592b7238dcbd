"""Solution pipeline: scalarized argmin and brute-force efficient sets.

The pairwise scan is the oracle any faster solver must match.  Its cost
is O(N^2 * |cloud|^2 * k); fine at desk scale.  The outer candidate loop
is vectorized with numpy and optionally fanned out over threads, capped
by the SETOPT_THREADS environment variable.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InternalConsistencyError
from .problem import SetValuedProblem
from .scalarizer import scalar_field

# Padding sentinels: a huge positive point never witnesses domination on
# the A side and is always dominated on the B side, so padded rows and
# columns cannot change any verdict.
_PAD = 1e30


def _worker_count() -> int:
    raw = os.environ.get("SETOPT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _padded_clouds(problem: SetValuedProblem) -> tuple[np.ndarray, np.ndarray]:
    clouds = [problem.map_model.cloud_at(x).points for x in problem.grid.points]
    sizes = np.array([len(c) for c in clouds])
    m = problem.cone.dim_image
    stack = np.full((len(clouds), sizes.max(), m), _PAD)
    for i, c in enumerate(clouds):
        stack[i, : len(c)] = c
    return stack, sizes


def domination_matrix(problem: SetValuedProblem) -> np.ndarray:
    """Boolean matrix D with D[i, j] true iff F(x_i) <l F(x_j)."""
    cached = problem._cache.get("domination_matrix")
    if cached is not None:
        return cached
    stack, sizes = _padded_clouds(problem)
    w = problem.cone.dual_generators
    tol = problem.cone.cone_tol
    n = len(stack)
    d = np.zeros((n, n), dtype=bool)

    def column(j: int) -> np.ndarray:
        b = stack[j, : sizes[j]]  # (pb, m)
        diff = b[None, :, None, :] - stack[:, None, :, :]  # (n, pb, pa, m)
        scores = diff @ w.T  # (n, pb, pa, k)
        ok = (scores > tol).all(axis=3)  # b - a in int P
        return ok.any(axis=2).all(axis=1)  # exists a, for all b

    workers = _worker_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for j, col in enumerate(pool.map(column, range(n))):
                d[:, j] = col
    else:
        for j in range(n):
            d[:, j] = column(j)
    problem._cache["domination_matrix"] = d
    return d


def argmin_scalarized(problem: SetValuedProblem) -> np.ndarray:
    """Sorted grid indices within tie tolerance of the scalar infimum."""
    field = scalar_field(problem)
    return np.flatnonzero(field.values <= field.inf_value + problem.tolerances.tie_tol)


def strict_weak_efficient_brute(problem: SetValuedProblem) -> np.ndarray:
    """Grid points no other point strictly dominates, by full pairwise scan."""
    d = domination_matrix(problem)
    others = d.copy()
    np.fill_diagonal(others, False)
    return np.flatnonzero(~others.any(axis=0))


def weak_efficient_brute(problem: SetValuedProblem) -> np.ndarray:
    """Grid points where strict domination is always mutual."""
    d = domination_matrix(problem)
    # x_j qualifies iff every i with D[i, j] also has D[j, i]
    ok = (~d) | d.T
    return np.flatnonzero(ok.all(axis=0))


@dataclass(frozen=True)
class SolveReport:
    inf_value: float
    argmin_indices: np.ndarray
    strict_indices: np.ndarray
    weak_indices: np.ndarray
    scalar_values: np.ndarray
    inclusion_argmin_in_strict: bool
    inclusion_strict_in_weak: bool
    argmin_strictly_smaller: bool

    def to_dict(self, problem: SetValuedProblem) -> dict:
        pts = problem.grid.points

        def point_list(indices: np.ndarray) -> list:
            chosen = sorted(pts[i].tolist() for i in indices)
            if problem.grid.dim_domain == 1:
                return [p[0] for p in chosen]
            return chosen

        table = [
            {"x": pts[i].tolist() if problem.grid.dim_domain > 1 else pts[i, 0],
             "value": float(v)}
            for i, v in enumerate(self.scalar_values)
        ]
        return {
            "inf_value": self.inf_value,
            "argmin": point_list(self.argmin_indices),
            "strict_weak_efficient": point_list(self.strict_indices),
            "weak_efficient": point_list(self.weak_indices),
            "inclusion_argmin_in_strict": self.inclusion_argmin_in_strict,
            "inclusion_strict_in_weak": self.inclusion_strict_in_weak,
            "argmin_strictly_smaller": self.argmin_strictly_smaller,
            "scalar_table": table,
        }


def solve(problem: SetValuedProblem) -> SolveReport:
    """Full report; raises if the guaranteed inclusions fail."""
    field = scalar_field(problem)
    argmin = argmin_scalarized(problem)
    strict = strict_weak_efficient_brute(problem)
    weak = weak_efficient_brute(problem)

    strict_set = set(strict.tolist())
    weak_set = set(weak.tolist())
    argmin_in_strict = set(argmin.tolist()) <= strict_set
    strict_in_weak = strict_set <= weak_set
    if not argmin_in_strict:
        raise InternalConsistencyError(
            "scalarized argmin escaped the strict weakly efficient set; "
            "check tie tolerance configuration"
        )
    if not strict_in_weak:
        raise InternalConsistencyError("strict efficient set escaped the weak efficient set")
    return SolveReport(
        inf_value=field.inf_value,
        argmin_indices=argmin,
        strict_indices=strict,
        weak_indices=weak,
        scalar_values=field.values,
        inclusion_argmin_in_strict=argmin_in_strict,
        inclusion_strict_in_weak=strict_in_weak,
        argmin_strictly_smaller=len(argmin) < len(strict),
    )
