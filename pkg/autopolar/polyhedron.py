# in autopolar/polyhedron.py
"""Conic polyhedra in the nonnegative orthant and in its admissible half-cones.

A ConicPolytope carries a generator form (vertices + recession rays) and a
constraint form ((a, x) >= 1 rows + homogeneous rows of the ambient cone).
Either form is derived from the other by double description on the
homogenized cone in R^{d+1}.
"""
import logging
import threading
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Any, List, Optional, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .doubledesc import extreme_rays, irredundant_rows
from .errors import (
    DimensionTooLarge,
    EmptyInterior,
    InvalidNormal,
    NotAdmissible,
    OriginIncluded,
    OutsideAmbient,
    ZeroNormal,
)
from .scalars import RATIONAL, Scalar, ScalarMode, ScalarPolicy, Vector, infer_policy
from .schemas import AmbientHalfCone, HalfConeDoc, InequalityDoc, PolyhedronDoc
from .utils import dot, format_scalar, max_abs, norm_sq, parse_scalar, rank, solve, sqrt_scalar

logger = logging.getLogger(__name__)

MAX_DIM = 4


def _unit(dim: int, k: int) -> Vector:
    return tuple(Fraction(1) if q == k else Fraction(0) for q in range(dim))


def normalize_first(vector: Sequence[Scalar], policy: Optional[ScalarPolicy] = None) -> Vector:
    """Scale so that the first nonzero coordinate has absolute value 1.

    With a float policy, coordinates within tolerance of 0 relative to the
    largest one are snapped to 0 first.
    """
    if policy is not None and not policy.exact:
        scale = max_abs(vector)
        vector = tuple(0.0 if policy.is_zero(c, scale) else c for c in vector)
    lead = next((c for c in vector if c != 0), None)
    if lead is None:
        return tuple(vector)
    return tuple(c / abs(lead) for c in vector)


def _sort_key(vector: Sequence[Scalar]) -> Tuple[float, ...]:
    return tuple(float(c) for c in vector)


class Side(int, Enum):
    ONE = 1
    TWO = 2


class AdmissibleHyperplane(BaseModel):
    """V = {x : x_i = mu * x_j}, with normal n = e_i - mu e_j."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    i: int = Field(ge=0)
    j: int = Field(ge=0)
    mu: Any = Field(description="Nonnegative slope (Fraction or float).")

    @field_validator("mu", mode="before")
    @classmethod
    def _coerce_mu(cls, value):
        if isinstance(value, (str, int)):
            value = parse_scalar(value)
        if value < 0:
            raise ValueError("mu must be nonnegative")
        return value

    @model_validator(mode="after")
    def _distinct(self):
        if self.i == self.j:
            raise ValueError("i and j must differ")
        return self

    def check_dim(self, dim: int) -> None:
        if max(self.i, self.j) >= dim:
            raise NotAdmissible(f"Splitter indices ({self.i}, {self.j}) do not fit dimension {dim}.")

    def normal(self, dim: int) -> Vector:
        coords = [Fraction(0)] * dim
        coords[self.i] = Fraction(1)
        coords[self.j] = -self.mu
        return tuple(coords)

    def side_value(self, x: Sequence[Scalar]) -> Scalar:
        """(n, x) = x_i - mu x_j: negative on side One, positive on side Two."""
        return x[self.i] - self.mu * x[self.j]

    def direction(self, dim: int) -> Vector:
        """w = mu e_i + e_j, the ridge direction inside the (i, j) coordinate plane."""
        coords = [Fraction(0)] * dim
        coords[self.i] = self.mu
        coords[self.j] = Fraction(1)
        return tuple(coords)

    def unit_direction(self, dim: int) -> Vector:
        w = self.direction(dim)
        length = sqrt_scalar(norm_sq(w))
        return tuple(c / length for c in w)

    def others(self, dim: int) -> List[int]:
        return [k for k in range(dim) if k not in (self.i, self.j)]

    def ridge_basis(self, dim: int, unit: bool = False) -> List[Vector]:
        """Columns of the embedding R^{d-1}_+ -> V: e_k for k outside {i, j}, then w."""
        w = self.unit_direction(dim) if unit else self.direction(dim)
        return [_unit(dim, k) for k in self.others(dim)] + [w]

    def metric(self, dim: int) -> Vector:
        """Gram diagonal of the unnormalized ridge basis."""
        return tuple([Fraction(1)] * (dim - 2)) + (1 + self.mu * self.mu,)

    def ridge_coordinates(self, x: Sequence[Scalar]) -> Vector:
        """Orthonormal coordinates of the projection of x onto V."""
        dim = len(x)
        w = self.unit_direction(dim)
        return tuple(x[k] for k in self.others(dim)) + (dot(w, x),)

    def to_doc(self) -> dict:
        return {"i": self.i, "j": self.j, "mu": format_scalar(self.mu)}


class FullOrthant(BaseModel):
    model_config = ConfigDict(frozen=True)

    dim: int = Field(ge=1)

    def rows(self) -> List[Vector]:
        return [_unit(self.dim, k) for k in range(self.dim)]

    def rays(self) -> List[Vector]:
        return [_unit(self.dim, k) for k in range(self.dim)]

    def contains(self, x: Sequence[Scalar], policy: ScalarPolicy) -> bool:
        return all(policy.ge(c, 0) for c in x)

    def dual_contains(self, a: Sequence[Scalar], policy: ScalarPolicy) -> bool:
        return all(policy.ge(c, 0) for c in a)


class HalfCone(BaseModel):
    """One side of an admissible hyperplane inside the orthant."""

    model_config = ConfigDict(frozen=True)

    dim: int = Field(ge=2)
    splitter: AdmissibleHyperplane
    side: Side

    @model_validator(mode="after")
    def _fits(self):
        self.splitter.check_dim(self.dim)
        return self

    @property
    def degenerate(self) -> bool:
        """Side One of a coordinate plane (mu = 0) is the plane itself."""
        return self.side is Side.ONE and self.splitter.mu == 0

    def opposite(self) -> "HalfCone":
        return HalfCone(dim=self.dim, splitter=self.splitter, side=Side.TWO if self.side is Side.ONE else Side.ONE)

    def side_row(self) -> Vector:
        n = self.splitter.normal(self.dim)
        return tuple(-c for c in n) if self.side is Side.ONE else n

    def rows(self) -> List[Vector]:
        return [_unit(self.dim, k) for k in range(self.dim)] + [self.side_row()]

    def rays(self) -> List[Vector]:
        s = self.splitter
        rays = [_unit(self.dim, k) for k in s.others(self.dim)]
        rays.append(_unit(self.dim, s.j if self.side is Side.ONE else s.i))
        # on side One of a coordinate plane w coincides with e_j
        if s.mu != 0 or self.side is Side.TWO:
            rays.append(normalize_first(s.direction(self.dim)))
        return sorted(rays, key=_sort_key)

    def contains(self, x: Sequence[Scalar], policy: ScalarPolicy) -> bool:
        return all(policy.ge(c, 0) for c in x) and policy.ge(dot(self.side_row(), x), 0)

    def dual_contains(self, a: Sequence[Scalar], policy: ScalarPolicy) -> bool:
        return all(policy.ge(dot(a, r), 0) for r in self.rays())

    def to_doc(self) -> dict:
        doc = self.splitter.to_doc()
        doc["side"] = int(self.side)
        return doc


Ambient = Union[FullOrthant, HalfCone]


class GeneratorForm(BaseModel):
    """co(vertices) + cone(rays), canonicalized: sorted, rays with first nonzero coordinate 1."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    vertices: Tuple[Tuple[Any, ...], ...]
    rays: Tuple[Tuple[Any, ...], ...]


class ConstraintForm(BaseModel):
    """Affine rows (a, x) >= 1 and homogeneous rows (h, x) >= 0, canonicalized."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    affine: Tuple[Tuple[Any, ...], ...]
    homogeneous: Tuple[Tuple[Any, ...], ...]

    def inequalities(self) -> List[Tuple[Vector, int]]:
        return [(a, 1) for a in self.affine] + [(h, 0) for h in self.homogeneous]


class ConicPolytope:
    """An immutable conic polytope; the missing representation is computed once on demand."""

    def __init__(
        self,
        dim: int,
        ambient: Optional[Ambient] = None,
        policy: ScalarPolicy = RATIONAL,
        generators: Optional[GeneratorForm] = None,
        constraints: Optional[ConstraintForm] = None,
    ):
        if generators is None and constraints is None:
            raise ValueError("A conic polytope needs at least one representation.")
        self._dim = dim
        self._ambient = ambient if ambient is not None else FullOrthant(dim=dim)
        self._policy = policy
        self._generators = generators
        self._constraints = constraints
        self._lock = threading.Lock()

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def ambient(self) -> Ambient:
        return self._ambient

    @property
    def policy(self) -> ScalarPolicy:
        return self._policy

    @property
    def generators(self) -> GeneratorForm:
        return generators_of(self)

    @property
    def constraints(self) -> ConstraintForm:
        return constraints_of(self)

    @property
    def vertices(self) -> Tuple[Vector, ...]:
        return self.generators.vertices

    @property
    def rays(self) -> Tuple[Vector, ...]:
        return self.generators.rays

    @property
    def normals(self) -> Tuple[Vector, ...]:
        return self.constraints.affine

    def _fill(self) -> None:
        with self._lock:
            if self._generators is not None and self._constraints is not None:
                return
            if self._dim > MAX_DIM:
                raise DimensionTooLarge(f"Conversions are limited to dimension {MAX_DIM}, got {self._dim}.")
            if self._generators is None:
                self._generators, _ = _h_to_v(self._dim, self._ambient, self._constraints.affine, self._policy)
            else:
                _, self._constraints = _v_to_h(self._dim, self._ambient, self._generators.vertices, self._policy)

    def __repr__(self) -> str:
        if self._generators is not None and self._constraints is not None:
            known = "both"
        else:
            known = "generators" if self._generators is not None else "constraints"
        return f"ConicPolytope(dim={self._dim}, ambient={self._ambient!r}, mode={self._policy.mode.value}, known={known})"


def generators_of(P: ConicPolytope) -> GeneratorForm:
    if P._generators is None:
        P._fill()
    return P._generators


def constraints_of(P: ConicPolytope) -> ConstraintForm:
    if P._constraints is None:
        P._fill()
    return P._constraints


# --- conversions ---

def _dedupe(vectors: Sequence[Vector], policy: ScalarPolicy) -> List[Vector]:
    kept: List[Vector] = []
    for v in vectors:
        if not any(policy.vectors_equal(v, u) for u in kept):
            kept.append(v)
    return kept


def _canonical(vectors: Sequence[Vector], policy: ScalarPolicy) -> Tuple[Vector, ...]:
    return tuple(sorted(_dedupe(vectors, policy), key=_sort_key))


def _h_to_v(dim: int, ambient: Ambient, affine: Sequence[Vector], policy: ScalarPolicy):
    hom = ambient.rows()
    affine = _dedupe([policy.vector(a) for a in affine], policy)
    zero = policy.coerce(0)
    rows = [tuple(a) + (policy.coerce(-1),) for a in affine]
    rows += [tuple(policy.vector(h)) + (zero,) for h in hom]
    rows.append(tuple([zero] * dim) + (policy.coerce(1),))

    rays = extreme_rays(rows, policy)
    if rank([r.vector for r in rays], policy) < dim + 1:
        raise EmptyInterior("The constraints leave no interior in the ambient cone.")

    vertices, recession = [], []
    for ray in rays:
        x, t = ray.vector[:-1], ray.vector[-1]
        if policy.sign(t) > 0:
            vertices.append(tuple(c / t for c in x))
        elif max_abs(x) > 0:
            recession.append(normalize_first(x, policy))
    if not vertices:
        raise EmptyInterior("The constraints are infeasible in the ambient cone.")

    def is_facet(m: int) -> bool:
        return rank([r.vector for r in rays if m in r.zero_set], policy) == dim

    kept_affine = [a for m, a in enumerate(affine) if is_facet(m)]
    kept_hom = [normalize_first(policy.vector(h), policy) for m, h in enumerate(hom) if is_facet(len(affine) + m)]
    dropped = len(affine) - len(kept_affine)
    if dropped:
        logger.debug("Removed %d redundant affine constraint(s)", dropped)
    generators = GeneratorForm(vertices=_canonical(vertices, policy), rays=_canonical(recession, policy))
    constraints = ConstraintForm(affine=_canonical(kept_affine, policy), homogeneous=_canonical(kept_hom, policy))
    return generators, constraints


def _v_to_h(dim: int, ambient: Ambient, vertices: Sequence[Vector], policy: ScalarPolicy):
    points = _dedupe([policy.vector(v) for v in vertices], policy)
    one, zero = policy.coerce(1), policy.coerce(0)
    rows = [tuple(v) + (one,) for v in points]
    rows += [tuple(policy.vector(r)) + (zero,) for r in ambient.rays()]

    facets = extreme_rays(rows, policy)
    affine, hom = [], []
    for h in facets:
        a, c = h.vector[:-1], h.vector[-1]
        s = policy.sign(c)
        if s < 0:
            affine.append(tuple(x / (-c) for x in a))
        elif s == 0:
            hom.append(normalize_first(a, policy))

    def is_extreme(m: int) -> bool:
        return rank([h.vector for h in facets if m in h.zero_set], policy) == dim

    kept = [v for m, v in enumerate(points) if is_extreme(m)]
    if len(kept) < len(points):
        logger.debug("Absorbed %d redundant point(s) into co_+", len(points) - len(kept))
    generators = GeneratorForm(
        vertices=_canonical(kept, policy),
        rays=_canonical([normalize_first(policy.vector(r), policy) for r in ambient.rays()], policy),
    )
    constraints = ConstraintForm(affine=_canonical(affine, policy), homogeneous=_canonical(hom, policy))
    return generators, constraints


# --- constructors ---

def _check_dim(dim: int) -> None:
    if dim > MAX_DIM:
        raise DimensionTooLarge(f"Conversions are limited to dimension {MAX_DIM}, got {dim}.")


def from_vertices(
    points: Sequence[Sequence], ambient: Optional[Ambient] = None, policy: Optional[ScalarPolicy] = None
) -> ConicPolytope:
    """co_+(points) inside the ambient cone, with redundant points removed."""
    if not points:
        raise ValueError("At least one point is required.")
    policy = policy or infer_policy(points)
    pts = [policy.vector(p) for p in points]
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise ValueError("All points must have the same dimension.")
    _check_dim(dim)
    ambient = ambient or FullOrthant(dim=dim)
    for p in pts:
        if all(policy.is_zero(c) for c in p):
            raise OriginIncluded("The origin cannot belong to a conic polytope's generating set.")
        if not ambient.contains(p, policy):
            raise OutsideAmbient(f"Point {[format_scalar(c) for c in p]} lies outside the ambient cone.")
    if isinstance(ambient, HalfCone) and ambient.degenerate:
        raise EmptyInterior("The ambient half-cone has empty interior.")
    pts = _dedupe(pts, policy)
    one, zero = policy.coerce(1), policy.coerce(0)
    rows = [(one,) + tuple(p) for p in pts] + [(zero,) + tuple(policy.vector(r)) for r in ambient.rays()]
    kept = [pts[k] for k in irredundant_rows(rows, policy, generators=True) if k < len(pts)]
    if len(kept) < len(pts):
        logger.debug("Absorbed %d redundant point(s) into co_+", len(pts) - len(kept))
    generators = GeneratorForm(
        vertices=_canonical(kept, policy),
        rays=_canonical([normalize_first(policy.vector(r), policy) for r in ambient.rays()], policy),
    )
    return ConicPolytope(dim, ambient, policy, generators=generators)


def from_inequalities(
    normals: Sequence[Sequence], ambient: Optional[Ambient] = None, policy: Optional[ScalarPolicy] = None
) -> ConicPolytope:
    """{x in ambient : (a, x) >= 1 for every normal a}, with redundant rows removed."""
    if not normals:
        raise ValueError("At least one normal is required.")
    policy = policy or infer_policy(normals)
    rows = [policy.vector(a) for a in normals]
    dim = len(rows[0])
    if any(len(a) != dim for a in rows):
        raise ValueError("All normals must have the same dimension.")
    _check_dim(dim)
    ambient = ambient or FullOrthant(dim=dim)
    for a in rows:
        if all(policy.is_zero(c) for c in a):
            raise ZeroNormal("Affine constraint normals must be nonzero.")
        if not ambient.dual_contains(a, policy):
            raise InvalidNormal(f"Normal {[format_scalar(c) for c in a]} is not in the dual of the ambient cone.")
    if isinstance(ambient, HalfCone) and ambient.degenerate:
        raise EmptyInterior("The ambient half-cone has empty interior.")
    rows = _dedupe(rows, policy)
    hom = [policy.vector(h) for h in ambient.rows()]
    minus_one, zero = policy.coerce(-1), policy.coerce(0)
    cdd_rows = [(minus_one,) + tuple(a) for a in rows] + [(zero,) + tuple(h) for h in hom]
    kept = irredundant_rows(cdd_rows, policy)
    affine = [rows[k] for k in kept if k < len(rows)]
    homogeneous = [normalize_first(hom[k - len(rows)], policy) for k in kept if k >= len(rows)]
    if len(affine) < len(rows):
        logger.debug("Removed %d redundant affine constraint(s)", len(rows) - len(affine))
    constraints = ConstraintForm(affine=_canonical(affine, policy), homogeneous=_canonical(homogeneous, policy))
    return ConicPolytope(dim, ambient, policy, constraints=constraints)


# --- duality and queries ---

def polar(P: ConicPolytope) -> ConicPolytope:
    """Representation swap: the vertices of P become the constraint normals of the polar."""
    if not isinstance(P.ambient, FullOrthant):
        raise NotAdmissible("The polar is defined for bodies in the full orthant.")
    return from_inequalities(P.vertices, FullOrthant(dim=P.dim), P.policy)


def minkowski_functional(P: ConicPolytope, x: Sequence[Scalar]) -> Scalar:
    """min_i (a_i, x) = sup{lambda > 0 : x / lambda in P}."""
    x = P.policy.vector(x)
    return min(dot(a, x) for a in P.normals)


def contains(P: ConicPolytope, x: Sequence[Scalar]) -> bool:
    policy = P.policy
    x = policy.vector(x)
    form = P.constraints
    return all(policy.ge(dot(a, x), 1) for a in form.affine) and all(
        policy.ge(dot(h, x), 0) for h in form.homogeneous
    )


def is_subset(P: ConicPolytope, Q: ConicPolytope) -> bool:
    """P within Q for bodies over the same ambient cone."""
    return all(contains(Q, v) for v in P.vertices)


def intersection(P: ConicPolytope, Q: ConicPolytope) -> ConicPolytope:
    return from_inequalities(list(P.normals) + list(Q.normals), P.ambient, _joint_policy(P, Q))


def hull_union(P: ConicPolytope, Q: ConicPolytope) -> ConicPolytope:
    """co_+(P u Q)."""
    return from_vertices(list(P.vertices) + list(Q.vertices), P.ambient, _joint_policy(P, Q))


def _joint_policy(P: ConicPolytope, Q: ConicPolytope) -> ScalarPolicy:
    if P.policy.exact and Q.policy.exact:
        return P.policy
    return ScalarPolicy(mode=ScalarMode.FLOAT, tol=max(P.policy.tol, Q.policy.tol))


def _closest_on_simplex(points: Sequence[Vector], policy: ScalarPolicy) -> Optional[Vector]:
    """Projection of the origin onto aff(points) when it falls inside co(points)."""
    base = points[0]
    if len(points) == 1:
        return base
    edges = [tuple(p - b for p, b in zip(q, base)) for q in points[1:]]
    gram = [[dot(u, v) for v in edges] for u in edges]
    if rank(gram, policy) < len(edges):
        return None
    coeffs = solve(gram, [-dot(u, base) for u in edges], policy)
    if any(not policy.ge(c, 0) for c in coeffs) or not policy.ge(1 - sum(coeffs), 0):
        return None
    point = list(base)
    for c, e in zip(coeffs, edges):
        point = [p + c * q for p, q in zip(point, e)]
    return tuple(point)


def distance_to_origin(P: ConicPolytope) -> Tuple[Scalar, Vector]:
    """min |x| over P and its minimizer.

    Recession rays are nonnegative, so the minimizer lies in co(vertices); every
    face of that hull is scanned through its affinely independent vertex subsets.
    """
    policy = P.policy
    vertices = P.vertices
    best: Optional[Tuple[Scalar, Vector]] = None
    for size in range(1, min(P.dim, len(vertices)) + 1):
        for subset in combinations(vertices, size):
            point = _closest_on_simplex(subset, policy)
            if point is None:
                continue
            d2 = norm_sq(point)
            if best is None or d2 < best[0]:
                best = (d2, point)
    d2, point = best
    return sqrt_scalar(d2), point


def _match(us: Sequence[Vector], vs: Sequence[Vector], policy: ScalarPolicy) -> bool:
    if len(us) != len(vs):
        return False
    if policy.exact:
        return sorted(us, key=_sort_key) == sorted(vs, key=_sort_key)
    unused = list(vs)
    for u in us:
        hit = next((k for k, v in enumerate(unused) if policy.vectors_equal(u, v)), None)
        if hit is None:
            return False
        unused.pop(hit)
    return True


def canonical_equal(P: ConicPolytope, Q: ConicPolytope) -> bool:
    if P.dim != Q.dim or P.ambient != Q.ambient:
        return False
    policy = _joint_policy(P, Q)
    if not policy.exact:
        to_float = lambda vs: [tuple(float(c) for c in v) for v in vs]  # noqa: E731
        return _match(to_float(P.vertices), to_float(Q.vertices), policy) and _match(
            to_float(P.rays), to_float(Q.rays), policy
        )
    return _match(P.vertices, Q.vertices, policy) and _match(P.rays, Q.rays, policy)


def slice_by_halfcone(P: ConicPolytope, H: HalfCone) -> ConicPolytope:
    """P intersected with one side of an admissible hyperplane."""
    if not isinstance(P.ambient, FullOrthant):
        raise NotAdmissible("Only full-orthant bodies can be sliced.")
    if H.dim != P.dim:
        raise ValueError("Half-cone and polytope dimensions differ.")
    if H.degenerate:
        raise EmptyInterior("This side of a coordinate plane has empty interior.")
    return from_inequalities(P.normals, H, P.policy)


def project_onto_hyperplane(x: Sequence[Scalar], splitter: AdmissibleHyperplane) -> Vector:
    n = splitter.normal(len(x))
    c = dot(n, x) / norm_sq(n)
    return tuple(a - c * b for a, b in zip(x, n))


class RidgeSection:
    """P ∩ V in the unnormalized ridge basis, with the Gram metric of that basis."""

    def __init__(self, source: ConicPolytope, splitter: AdmissibleHyperplane):
        dim = source.dim
        splitter.check_dim(dim)
        if dim < 2:
            raise NotAdmissible("A ridge needs dimension at least 2.")
        self.splitter = splitter
        self.basis = splitter.ridge_basis(dim)
        self.metric = splitter.metric(dim)
        policy = source.policy
        normals = []
        for a in source.normals:
            b = tuple(dot(a, e) for e in self.basis)
            if all(policy.is_zero(c) for c in b):
                raise EmptyInterior("A constraint of the body cannot be met on the ridge.")
            normals.append(b)
        self.body = from_inequalities(normals, FullOrthant(dim=dim - 1), policy)

    def embed(self, z: Sequence[Scalar]) -> Vector:
        dim = len(self.basis[0])
        return tuple(sum((c * e[k] for c, e in zip(z, self.basis)), 0 * z[0]) for k in range(dim))

    def vertices(self) -> List[Vector]:
        return [self.embed(z) for z in self.body.vertices]

    def polar(self) -> ConicPolytope:
        """Polar of the facade inside the ridge, measured with the Euclidean metric of V."""
        normals = [tuple(m * c for m, c in zip(self.metric, v)) for v in self.body.vertices]
        return from_inequalities(normals, FullOrthant(dim=self.body.dim), self.body.policy)

    def is_autopolar(self) -> bool:
        return canonical_equal(self.body, self.polar())


def ridge_section(P: ConicPolytope, splitter: AdmissibleHyperplane) -> RidgeSection:
    return RidgeSection(P, splitter)


# --- JSON ---

def ambient_to_doc(ambient: Ambient):
    if isinstance(ambient, FullOrthant):
        return "orthant"
    return {"halfcone": ambient.to_doc()}


def halfcone_from_doc(doc: HalfConeDoc, dim: int) -> HalfCone:
    splitter = AdmissibleHyperplane(i=doc.i, j=doc.j, mu=parse_scalar(doc.mu))
    return HalfCone(dim=dim, splitter=splitter, side=Side(doc.side))


def polytope_to_doc(P: ConicPolytope) -> dict:
    fmt = lambda v: [format_scalar(c) for c in v]  # noqa: E731
    form = P.constraints
    inequalities = [InequalityDoc(normal=fmt(a), rhs=rhs) for a, rhs in form.inequalities()]
    doc = PolyhedronDoc(
        dim=P.dim,
        scalar=P.policy.mode.value,
        ambient=ambient_to_doc(P.ambient),
        vertices=[fmt(v) for v in P.vertices],
        rays=[fmt(r) for r in P.rays],
        inequalities=inequalities,
    )
    return doc.model_dump(mode="json")


def polytope_from_doc(data, tol: float = 1e-9) -> ConicPolytope:
    """Build from vertices when present, otherwise from the affine inequalities."""
    doc = data if isinstance(data, PolyhedronDoc) else PolyhedronDoc.model_validate(data)
    policy = ScalarPolicy(mode=ScalarMode(doc.scalar), tol=tol)
    ambient: Ambient
    if isinstance(doc.ambient, AmbientHalfCone):
        ambient = halfcone_from_doc(doc.ambient.halfcone, doc.dim)
    else:
        ambient = FullOrthant(dim=doc.dim)
    convert = lambda v: policy.vector(parse_scalar(c) for c in v)  # noqa: E731
    if doc.vertices:
        return from_vertices([convert(v) for v in doc.vertices], ambient, policy)
    normals = [convert(q.normal) for q in doc.inequalities if q.rhs == 1]
    if not normals:
        raise ValueError("A polyhedron document needs vertices or affine inequalities.")
    return from_inequalities(normals, ambient, policy)
