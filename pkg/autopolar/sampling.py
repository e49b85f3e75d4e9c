# in autopolar/sampling.py
"""Seeded samplers. Every random draw in the package goes through a numpy Generator."""
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from .polyhedron import AdmissibleHyperplane, ConicPolytope, HalfCone, from_vertices
from .scalars import RATIONAL


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)


def simplex_rays(rng: np.random.Generator, n: int, dim: int) -> np.ndarray:
    """n uniform points of the open unit simplex, one per row."""
    return rng.dirichlet(np.ones(dim), size=n)


def cone_rays(rng: np.random.Generator, n: int, generators: Sequence[Sequence]) -> np.ndarray:
    """Random nonnegative combinations of the generators (rows of the result)."""
    gens = np.array([[float(c) for c in g] for g in generators])
    weights = rng.dirichlet(np.ones(len(gens)), size=n)
    return weights @ gens


def halfcone_rays(rng: np.random.Generator, n: int, halfcone: HalfCone) -> np.ndarray:
    return cone_rays(rng, n, halfcone.rays())


def ridge_rays(rng: np.random.Generator, n: int, splitter: AdmissibleHyperplane, dim: int) -> np.ndarray:
    return cone_rays(rng, n, splitter.ridge_basis(dim, unit=True))


def random_rational_points(
    rng: np.random.Generator, dim: int, count: int, max_numerator: int = 4, max_denominator: int = 4
) -> List[Tuple[Fraction, ...]]:
    points = []
    while len(points) < count:
        nums = rng.integers(0, max_numerator + 1, size=dim)
        dens = rng.integers(1, max_denominator + 1, size=dim)
        if not nums.any():
            continue
        points.append(tuple(Fraction(int(a), int(b)) for a, b in zip(nums, dens)))
    return points


def random_conic_polytope(rng: np.random.Generator, dim: int, max_vertices: int = 8) -> ConicPolytope:
    count = int(rng.integers(1, max_vertices + 1))
    return from_vertices(random_rational_points(rng, dim, count), policy=RATIONAL)
