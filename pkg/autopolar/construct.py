# in autopolar/construct.py
"""Constructions of autopolar conic polytopes and self-dual antinorms by lifting."""
import logging
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from .antinorm import (
    DEFAULT_BUDGET,
    RIDGE_TOL,
    Antinorm,
    ConcatenatedAntinorm,
    PiecewiseLinearAntinorm,
    ProductAntinorm,
    RestrictedDualAntinorm,
    concatenate,
)
from .errors import (
    AngleViolation,
    DominationViolated,
    InvalidWeights,
    LengthConditionViolated,
    NegativeCoordinate,
    NoSphereIntersection,
    NotAdmissible,
    NotUnit,
    OutsideAmbient,
    RecipeError,
    RidgeNotAutopolar,
    ZeroWeightPair,
)
from .polyhedron import (
    AdmissibleHyperplane,
    ConicPolytope,
    FullOrthant,
    HalfCone,
    Side,
    contains,
    from_inequalities,
    from_vertices,
    project_onto_hyperplane,
    ridge_section,
)
from .sampling import halfcone_rays, make_rng, ridge_rays
from .scalars import Scalar, ScalarMode, ScalarPolicy, Vector, infer_policy
from .utils import cross3, dot, format_scalar, norm_sq, parse_scalar, solve, sqrt_scalar

logger = logging.getLogger(__name__)


class LiftInput(BaseModel):
    """G1 lives in one side of the splitter; its ambient half-cone names that side."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    splitter: AdmissibleHyperplane
    g1: ConicPolytope


def _fmt(v: Sequence[Scalar]) -> List:
    return [format_scalar(c) for c in v]


def _check_domination(g1: ConicPolytope, splitter: AdmissibleHyperplane) -> None:
    """The projection of G1 onto V must stay inside G1."""
    for v in g1.vertices:
        p = project_onto_hyperplane(v, splitter)
        if not contains(g1, p):
            raise DominationViolated(
                f"Vertex {_fmt(v)} projects to {_fmt(p)}, outside G1.",
                witness=_fmt(v),
            )


def lift_polytope(lift: LiftInput) -> ConicPolytope:
    g1 = lift.g1
    splitter = lift.splitter
    policy = g1.policy
    dim = g1.dim
    if not isinstance(g1.ambient, HalfCone) or g1.ambient.splitter != splitter:
        raise NotAdmissible("G1 must live in a half-cone of the given splitter.")

    if not ridge_section(g1, splitter).is_autopolar():
        raise RidgeNotAutopolar("The section of G1 by the splitter is not autopolar within the ridge.")
    _check_domination(g1, splitter)

    target = g1.ambient.opposite()
    if target.degenerate:
        # coordinate plane: the lift is the orthogonal extension of the facade
        lifted = from_vertices(list(g1.vertices), FullOrthant(dim=dim), policy)
        logger.info("Orthogonal extension across x_%d = 0: %d vertices", splitter.i, len(lifted.vertices))
        return lifted

    g2 = from_inequalities(list(g1.vertices), target, policy)
    lifted = from_vertices(list(g1.vertices) + list(g2.vertices), FullOrthant(dim=dim), policy)
    logger.info(
        "Lifted across (%d, %d, mu=%s): |V(G1)|=%d |V(G2)|=%d |V(G)|=%d",
        splitter.i, splitter.j, format_scalar(splitter.mu), len(g1.vertices), len(g2.vertices), len(lifted.vertices),
    )
    return lifted


def _relative_gap(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    scale = np.maximum(np.maximum(np.abs(a), np.abs(b)), 1e-300)
    return np.abs(a - b) / scale


def lift_antinorm(
    splitter: AdmissibleHyperplane,
    f1: Antinorm,
    side: Side = Side.ONE,
    budget: int = DEFAULT_BUDGET,
    n_samples: int = 32,
    seed: int = 0,
    tol: Optional[float] = None,
) -> ConcatenatedAntinorm:
    """Concatenate f1 on `side` with its restricted dual on the other side.

    Piecewise-linear f1 gets an exact piecewise-linear partner; any other f1 gets
    a numerically evaluated dual. Ridge agreement and domination by the orthogonal
    extension are asserted on sampled rays.
    """
    dim = f1.dim
    splitter.check_dim(dim)
    h1 = HalfCone(dim=dim, splitter=splitter, side=side)
    h2 = h1.opposite()

    f2: Antinorm
    if isinstance(f1, PiecewiseLinearAntinorm):
        g1 = from_inequalities(f1.normals, h1, infer_policy(f1.normals))
        f2 = PiecewiseLinearAntinorm(list(g1.vertices), h2)
        tol = RIDGE_TOL if tol is None else tol
    else:
        f2 = RestrictedDualAntinorm(f1, over=h1, budget=budget)
        tol = 1e-6 if tol is None else tol

    rng = make_rng(seed)
    ridge = ridge_rays(rng, n_samples, splitter, dim)
    gap = _relative_gap(f1.values(ridge), f2.values(ridge))
    if gap.max() > tol:
        raise RidgeNotAutopolar(f"The dual piece differs from f1 on the ridge by {gap.max():.3e} (relative).")

    if not h1.degenerate:
        inner = halfcone_rays(rng, n_samples, h1)
        n = np.array([float(c) for c in splitter.normal(dim)])
        projected = inner - np.outer(inner @ n / (n @ n), n)
        excess = f1.values(inner) - f1.values(projected)
        worst = int(np.argmax(excess))
        if excess[worst] > tol * max(1.0, float(np.abs(f1.values(inner[worst:worst + 1]))[0])):
            raise DominationViolated(
                f"f1 exceeds its orthogonal extension by {excess[worst]:.3e}.",
                witness=[float(c) for c in inner[worst]],
            )

    # concatenate puts its first argument on side One
    first, second = (f1, f2) if side is Side.ONE else (f2, f1)
    return concatenate(first, second, splitter, tol=tol, n_samples=n_samples, seed=seed)


def _splitter_through(a: Vector) -> Tuple[AdmissibleHyperplane, Side]:
    """The ray of a splits R^2_+; the side containing the x_1-axis holds G1."""
    if a[0] == 0:
        return AdmissibleHyperplane(i=0, j=1, mu=0), Side.TWO
    return AdmissibleHyperplane(i=1, j=0, mu=a[1] / a[0]), Side.ONE


def algorithm1_2d(
    a: Sequence, inner: Sequence[Sequence] = (), policy: Optional[ScalarPolicy] = None
) -> ConicPolytope:
    """Autopolar polygon from the unit vector a and the chain of vertices below it."""
    policy = policy or infer_policy([list(a)] + [list(v) for v in inner])
    a = policy.vector(a)
    inner = [policy.vector(v) for v in inner]
    if len(a) != 2 or any(len(v) != 2 for v in inner):
        raise ValueError("algorithm1_2d works in the plane.")
    if not policy.eq(norm_sq(a), 1):
        raise NotUnit(f"|a|^2 = {format_scalar(norm_sq(a))}, expected 1.")
    if not a[1] > 0:
        raise NotAdmissible("a must have a positive second coordinate.")

    splitter, side = _splitter_through(a)
    k1 = HalfCone(dim=2, splitter=splitter, side=side)
    for v in inner:
        if not k1.contains(v, policy):
            raise OutsideAmbient(f"Inner vertex {_fmt(v)} lies above the ray of a.")
        if not policy.ge(dot(a, v), 1):
            raise AngleViolation(
                f"(a, {_fmt(v)}) = {format_scalar(dot(a, v))} < 1: the angle at a is obtuse.",
                vertex=_fmt(v),
            )

    if inner:
        g1 = from_vertices([a] + inner, k1, policy)
        if len(g1.vertices) < len(inner) + 1:
            logger.warning("%d inner vertex(es) absorbed into co_+", len(inner) + 1 - len(g1.vertices))
    else:
        g1 = from_inequalities([a], k1, policy)
    return lift_polytope(LiftInput(splitter=splitter, g1=g1))


# --- the P_n family ---

def _polar_line(p: Vector, q: Vector) -> Tuple[Vector, Vector]:
    """{y : (p, y) = 1, (q, y) = 1}: foot of the perpendicular from O and an unnormalized direction."""
    gram = [[dot(p, p), dot(p, q)], [dot(q, p), dot(q, q)]]
    policy = infer_policy([list(p), list(q)])
    coeffs = solve(gram, [policy.coerce(1), policy.coerce(1)], policy)
    foot = tuple(coeffs[0] * x + coeffs[1] * y for x, y in zip(p, q))
    return foot, cross3(p, q)


def _entry_parameter(foot: Vector, u: Vector) -> Scalar:
    """Smallest s with foot + s u in the orthant, along a direction pointing into it."""
    bounds = [-f / c for f, c in zip(foot, u) if c > 0]
    return max(bounds)


def _unit(u: Vector) -> Vector:
    length = sqrt_scalar(norm_sq(u))
    return tuple(c / length for c in u)


def pn_points(choices: Sequence, tol: float = 1e-12) -> List[Vector]:
    """A_1, ..., A_n with n = len(choices) + 1.

    A_1 = (0, 0, t_1), A_2 = (t_2, 0, 1/t_1) on the polar plane of A_1, then each
    A_k is t_k along the polar line of A_{k-2}, A_{k-1} past its entry into the
    orthant. The last point is where that line meets the unit sphere.
    """
    t = [parse_scalar(c) for c in choices]
    n = len(t) + 1
    if n < 3:
        raise RecipeError("The P_n family starts at n = 3.")
    if any(c <= 0 for c in t):
        raise RecipeError("Choices must be positive.")
    zero = t[0] * 0
    points: List[Vector] = [(zero, zero, t[0]), (t[1], zero, 1 / t[0])]
    for k in range(3, n + 1):
        foot, direction = _polar_line(points[-2], points[-1])
        if all(c <= 0 for c in direction):
            direction = tuple(-c for c in direction)
        u = _unit(direction)
        if k < n:
            point = tuple(f + (_entry_parameter(foot, u) + t[k - 1]) * c for f, c in zip(foot, u))
        else:
            gap = 1 - norm_sq(foot)
            if gap < -tol:
                raise NoSphereIntersection(f"The last polar line stays at distance {float(norm_sq(foot)) ** 0.5:.6f} > 1.")
            s = sqrt_scalar(max(gap, zero))
            roots = [tuple(f + s * c for f, c in zip(foot, u)), tuple(f - s * c for f, c in zip(foot, u))]
            point = next((r for r in roots if all(c >= -tol for c in r)), None)
            if point is None:
                raise NegativeCoordinate("Both intersections with the unit sphere leave the orthant.")
            point = tuple(max(c, zero) for c in point)
        if any(c < -tol for c in point):
            raise NegativeCoordinate(f"A_{k} = {_fmt(point)} has a negative coordinate.", index=k)
        points.append(point)

    for k, p in enumerate(points[:-1], start=1):
        length_sq = norm_sq(p)
        if length_sq <= 1:
            raise LengthConditionViolated(f"|OA_{k}| = {float(length_sq) ** 0.5:.6f} must exceed 1.", index=k, length=float(length_sq) ** 0.5)
    logger.info("P_%d points: %s", n, [[float(c) for c in p] for p in points])
    return points


def build_pn(choices: Sequence, tol: float = 1e-9) -> ConicPolytope:
    points = pn_points(choices)
    return from_vertices(points, FullOrthant(dim=3), ScalarPolicy(mode=ScalarMode.FLOAT, tol=tol))


# --- product antinorms ---

def product_split(p: Sequence, d: Optional[int] = None) -> Tuple[AdmissibleHyperplane, Tuple[Scalar, ...]]:
    """Splitter of the product antinorm across its last two coordinates, and the merged weights."""
    p = tuple(parse_scalar(w) for w in p)
    if d is not None and d != len(p):
        raise InvalidWeights(f"Expected {d} weights, got {len(p)}.")
    ProductAntinorm(p)
    d = len(p)
    if d < 2:
        raise InvalidWeights("Splitting needs at least two weights.")
    left, right = p[d - 2], p[d - 1]
    if left == 0 and right == 0:
        raise ZeroWeightPair("The last two weights are both zero.")
    if right == 0:
        splitter = AdmissibleHyperplane(i=d - 1, j=d - 2, mu=Fraction(0) if isinstance(left, Fraction) else 0.0)
    else:
        splitter = AdmissibleHyperplane(i=d - 2, j=d - 1, mu=sqrt_scalar(left / right))
    return splitter, p[: d - 2] + (left + right,)
