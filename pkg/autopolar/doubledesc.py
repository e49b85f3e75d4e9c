# in autopolar/doubledesc.py
"""Extreme rays of pointed cones C = {z : (row, z) >= 0 for every row}, via cddlib.

Rational policies run cdd with number_type='fraction', float policies with
number_type='float'. Rays are returned with their zero sets (indices of the
rows they are tight on).
"""
import logging
from fractions import Fraction
from math import gcd
from typing import FrozenSet, List, NamedTuple, Sequence

import cdd

from .errors import EmptyInterior
from .scalars import Scalar, ScalarPolicy, Vector
from .utils import dot, max_abs

logger = logging.getLogger(__name__)


class ExtremeRay(NamedTuple):
    vector: Vector
    zero_set: FrozenSet[int]


def normalize_ray(vector: Sequence[Scalar], policy: ScalarPolicy) -> Vector:
    """Primitive integer vector in rational mode, unit max-norm in float mode."""
    if policy.exact:
        denominators = 1
        for c in vector:
            denominators = denominators * c.denominator // gcd(denominators, c.denominator)
        ints = [int(c * denominators) for c in vector]
        divisor = 0
        for k in ints:
            divisor = gcd(divisor, abs(k))
        divisor = divisor or 1
        return tuple(Fraction(k // divisor) for k in ints)
    scale = max_abs(vector) or 1.0
    return tuple(0.0 if policy.is_zero(float(c) / scale) else float(c) / scale for c in vector)


def _number_type(policy: ScalarPolicy) -> str:
    return "fraction" if policy.exact else "float"


def extreme_rays(rows: Sequence[Sequence[Scalar]], policy: ScalarPolicy) -> List[ExtremeRay]:
    """Extreme rays of {z : (row, z) >= 0}; the cone must be pointed."""
    if not rows:
        raise EmptyInterior("No constraint rows were given.")
    n = len(rows[0])
    rows = [policy.vector(r) for r in rows]

    # cdd reads each row as [b | A] meaning b + A z >= 0
    mat = cdd.Matrix([[0] + list(r) for r in rows], number_type=_number_type(policy))
    mat.rep_type = cdd.RepType.INEQUALITY
    generators = cdd.Polyhedron(mat).get_generators()
    if generators.lin_set:
        raise EmptyInterior(
            f"Constraint rows span only {n - len(generators.lin_set)} of {n} dimensions."
        )

    rays: List[ExtremeRay] = []
    for k in range(generators.row_size):
        row = generators[k]
        if row[0] != 0:
            # the apex
            continue
        vector = normalize_ray(policy.vector(row[1:]), policy)
        zero = frozenset(
            m for m, r in enumerate(rows) if policy.is_zero(dot(r, vector), max_abs(r) * max_abs(vector))
        )
        rays.append(ExtremeRay(vector, zero))
    logger.debug("cdd returned %d extreme rays for %d rows", len(rays), len(rows))
    return rays


def irredundant_rows(rows: Sequence[Sequence[Scalar]], policy: ScalarPolicy, generators: bool = False) -> List[int]:
    """Indices of the rows that survive cdd's canonicalization, in input order.

    Rows use cdd's layout: [b | A] for b + A x >= 0, or with `generators`,
    [t | v] where t = 1 marks a point and t = 0 a ray.
    """
    mat = cdd.Matrix([list(policy.vector(r)) for r in rows], number_type=_number_type(policy))
    mat.rep_type = cdd.RepType.GENERATOR if generators else cdd.RepType.INEQUALITY
    implicit, redundant = mat.canonicalize()
    if implicit:
        raise EmptyInterior(f"Rows {sorted(implicit)} hold with equality; the set has empty interior.")
    return [k for k in range(len(rows)) if k not in redundant]
