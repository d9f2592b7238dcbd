"""Seeded random generators for cross-validation and property suites."""

from __future__ import annotations

import numpy as np

from .cone import ConeSpec
from .problem import DomainGrid, MapModel, SetValuedProblem

CONE_KINDS = ("orthant2", "orthant3", "wedge")


def random_cone(rng: np.random.Generator, kind: str | None = None) -> ConeSpec:
    """One of the stock cones with a random interior order unit."""
    if kind is None:
        kind = CONE_KINDS[rng.integers(len(CONE_KINDS))]
    if kind == "orthant2":
        return ConeSpec(np.eye(2), rng.uniform(0.1, 2.0, 2))
    if kind == "orthant3":
        return ConeSpec(np.eye(3), rng.uniform(0.1, 2.0, 3))
    if kind == "wedge":
        # {(a, b): -a <= b <= a}; interior units have |b| < a
        a = rng.uniform(0.5, 2.0)
        b = rng.uniform(-0.8, 0.8) * a
        return ConeSpec(np.array([[1.0, 1.0], [1.0, -1.0]]), np.array([a, b]))
    raise ValueError(f"unknown cone kind {kind!r}")


def random_point(rng: np.random.Generator, m: int) -> np.ndarray:
    return rng.uniform(-10.0, 10.0, m)


def random_problem(rng: np.random.Generator) -> SetValuedProblem:
    """A small table-kind problem: grid of <= 50 points, clouds of <= 6."""
    cone = random_cone(rng, ("orthant2", "orthant3", "wedge")[rng.integers(3)])
    m = cone.dim_image
    n = int(rng.integers(1, 3))
    count = int(rng.integers(5, 51))
    pts = np.round(rng.uniform(-5.0, 5.0, (count, n)), 6)
    pts = np.unique(pts, axis=0)
    clouds = [rng.uniform(-5.0, 5.0, (int(rng.integers(1, 7)), m)).tolist()
              for _ in range(len(pts))]
    grid = DomainGrid(pts)
    map_model = MapModel(kind="table",
                         params={"points": pts.tolist(), "clouds": clouds})
    return SetValuedProblem(grid=grid, map_model=map_model, cone=cone)
