# in autopolar/antinorm.py
import logging
import math
from abc import ABC, abstractmethod
from itertools import combinations
from typing import Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from .errors import BudgetExhausted, InvalidWeights, OutsideDomain, RidgeMismatch, ZeroCoordinate, ZeroNormal
from .polyhedron import (
    AdmissibleHyperplane,
    Ambient,
    ConicPolytope,
    FullOrthant,
    HalfCone,
    Side,
    from_inequalities,
    halfcone_from_doc,
)
from .sampling import make_rng, ridge_rays
from .scalars import Scalar, ScalarPolicy, infer_policy
from .schemas import (
    ConcatDoc,
    ExtensionDoc,
    HalfConeDoc,
    PiecewiseLinearDoc,
    ProductDoc,
    RestrictedDualDoc,
    SplitterDoc,
    antinorm_adapter,
)
from .utils import dot, format_scalar, parse_scalar

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10_000
RIDGE_TOL = 1e-9


class Antinorm(ABC):
    """A concave, positively homogeneous, nonnegative function on a cone."""

    kind: str

    def __init__(self, dim: int, domain: Optional[Ambient] = None):
        self.dim = dim
        self.domain: Ambient = domain if domain is not None else FullOrthant(dim=dim)

    @abstractmethod
    def value(self, x: Sequence[Scalar]) -> Scalar:
        """Evaluates at a point already known to lie in the domain."""
        pass

    @abstractmethod
    def to_doc(self) -> dict:
        """JSON descriptor."""
        pass

    def values(self, points: np.ndarray) -> np.ndarray:
        """Row-wise float evaluation; kinds with a closed form override this."""
        return np.array([float(self.value(tuple(row))) for row in np.atleast_2d(points)])

    def __call__(self, x: Sequence[Scalar]) -> Scalar:
        return evaluate(self, x)


def evaluate(f: Antinorm, x: Sequence[Scalar]) -> Scalar:
    if len(x) != f.dim:
        raise OutsideDomain(f"Expected a point of dimension {f.dim}, got {len(x)}.")
    policy = infer_policy(list(x))
    if not f.domain.contains(policy.vector(x), policy):
        raise OutsideDomain(f"Point {[format_scalar(c) for c in x]} lies outside the antinorm's domain.")
    return f.value(x)


class PiecewiseLinearAntinorm(Antinorm):
    kind = "pl"

    def __init__(self, normals: Sequence[Sequence[Scalar]], domain: Optional[Ambient] = None):
        if not normals:
            raise ZeroNormal("A piecewise-linear antinorm needs at least one normal.")
        self.normals = [tuple(a) for a in normals]
        for a in self.normals:
            if all(c == 0 for c in a):
                raise ZeroNormal("Antinorm normals must be nonzero.")
        super().__init__(len(self.normals[0]), domain)
        self._matrix = np.array([[float(c) for c in a] for a in self.normals])
        self.policy = infer_policy(self.normals)

    def value(self, x: Sequence[Scalar]) -> Scalar:
        x = self.policy.vector(x)
        return min(dot(a, x) for a in self.normals)

    def values(self, points: np.ndarray) -> np.ndarray:
        return (np.atleast_2d(points) @ self._matrix.T).min(axis=1)

    def ball(self, policy: Optional[ScalarPolicy] = None) -> ConicPolytope:
        """The unit ball {f >= 1} as a conic polytope."""
        return from_inequalities(self.normals, self.domain, policy)

    def to_doc(self) -> dict:
        return PiecewiseLinearDoc(normals=[[format_scalar(c) for c in a] for a in self.normals]).model_dump(mode="json")


class ProductAntinorm(Antinorm):
    """prod_i (x_i / sqrt(p_i))^{p_i}; zero weights drop their coordinate."""

    kind = "product"

    def __init__(self, p: Sequence[Scalar], tol: float = 1e-9):
        self.p = tuple(p)
        if any(w < 0 for w in self.p) or not any(w > 0 for w in self.p):
            raise InvalidWeights("Weights must be nonnegative and not all zero.")
        total = sum(self.p)
        if abs(float(total) - 1.0) > tol:
            raise InvalidWeights(f"Weights must sum to 1, got {float(total)}.")
        super().__init__(len(self.p))
        self._weights = np.array([float(w) for w in self.p])
        self._active = self._weights > 0
        w = self._weights[self._active]
        self._offset = 0.5 * float(np.dot(w, np.log(w)))

    def value(self, x: Sequence[Scalar]) -> float:
        return float(self.values(np.array([[float(c) for c in x]]))[0])

    def values(self, points: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(points, dtype=float))[:, self._active]
        w = self._weights[self._active]
        with np.errstate(divide="ignore"):
            logs = np.log(X) @ w - self._offset
        return np.exp(logs)

    @property
    def closest_point(self) -> np.ndarray:
        """(sqrt(p_1), ..., sqrt(p_d)): the point of the unit ball nearest the origin."""
        return np.sqrt(self._weights)

    def to_doc(self) -> dict:
        return ProductDoc(p=[format_scalar(w) for w in self.p]).model_dump(mode="json")


class OrthogonalExtensionAntinorm(Antinorm):
    """x -> phi(x') where x' is the orthogonal projection of x onto the ridge, in ridge coordinates."""

    kind = "extension"

    def __init__(self, splitter: AdmissibleHyperplane, phi: Antinorm):
        super().__init__(phi.dim + 1)
        splitter.check_dim(self.dim)
        self.splitter = splitter
        self.phi = phi
        self._others = splitter.others(self.dim)
        self._w = np.array([float(c) for c in splitter.unit_direction(self.dim)])

    def value(self, x: Sequence[Scalar]) -> Scalar:
        return self.phi.value(self.splitter.ridge_coordinates(x))

    def values(self, points: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(points, dtype=float))
        coords = np.column_stack([X[:, self._others], X @ self._w])
        return self.phi.values(coords)

    def to_doc(self) -> dict:
        doc = ExtensionDoc(splitter=SplitterDoc(**self.splitter.to_doc()), phi=self.phi.to_doc())
        return doc.model_dump(mode="json")


class ConcatenatedAntinorm(Antinorm):
    """f1 on side One of the splitter, f2 on side Two; they agree on the ridge."""

    kind = "concat"

    def __init__(
        self,
        splitter: AdmissibleHyperplane,
        f1: Antinorm,
        f2: Antinorm,
        tol: float = RIDGE_TOL,
        n_samples: int = 64,
        seed: int = 0,
    ):
        if f1.dim != f2.dim:
            raise ValueError("Both pieces must live in the same dimension.")
        super().__init__(f1.dim)
        splitter.check_dim(self.dim)
        self.splitter = splitter
        self.f1 = f1
        self.f2 = f2
        self._normal = np.array([float(c) for c in splitter.normal(self.dim)])
        self._check_ridge(tol, n_samples, seed)

    def _check_ridge(self, tol: float, n_samples: int, seed: int) -> None:
        rays = ridge_rays(make_rng(seed), n_samples, self.splitter, self.dim)
        v1, v2 = self.f1.values(rays), self.f2.values(rays)
        scale = np.maximum(np.abs(v1), np.abs(v2))
        rel = np.abs(v1 - v2) / np.where(scale > 0, scale, 1.0)
        worst = int(np.argmax(rel))
        if rel[worst] > tol:
            raise RidgeMismatch(
                f"Pieces disagree on the ridge by {rel[worst]:.3e} (relative).",
                worst=float(rel[worst]),
                at=[float(c) for c in rays[worst]],
            )

    def value(self, x: Sequence[Scalar]) -> Scalar:
        if self.splitter.side_value(x) <= 0:
            return self.f1.value(x)
        return self.f2.value(x)

    def values(self, points: np.ndarray) -> np.ndarray:
        X = np.atleast_2d(np.asarray(points, dtype=float))
        side_one = X @ self._normal <= 0
        out = np.empty(len(X))
        if side_one.any():
            out[side_one] = self.f1.values(X[side_one])
        if (~side_one).any():
            out[~side_one] = self.f2.values(X[~side_one])
        return out

    def to_doc(self) -> dict:
        doc = ConcatDoc(splitter=SplitterDoc(**self.splitter.to_doc()), f1=self.f1.to_doc(), f2=self.f2.to_doc())
        return doc.model_dump(mode="json")


class RestrictedDualAntinorm(Antinorm):
    """y -> inf over the half-cone `over` of (y, x) / base(x), evaluated numerically."""

    kind = "dual"

    def __init__(self, base: Antinorm, over: HalfCone, budget: int = DEFAULT_BUDGET):
        super().__init__(base.dim, over.opposite())
        self.base = base
        self.over = over
        self.budget = budget

    def value(self, x: Sequence[Scalar]) -> float:
        return dual_eval_numeric(self.base, x, self.budget, generators=self.over.rays())

    def to_doc(self) -> dict:
        doc = RestrictedDualDoc(of=self.base.to_doc(), over=HalfConeDoc(**self.over.to_doc()), budget=self.budget)
        return doc.model_dump(mode="json")


def orthogonal_extension(phi: Antinorm, splitter: AdmissibleHyperplane) -> OrthogonalExtensionAntinorm:
    return OrthogonalExtensionAntinorm(splitter, phi)


def concatenate(
    f1: Antinorm, f2: Antinorm, splitter: AdmissibleHyperplane, tol: float = RIDGE_TOL, n_samples: int = 64, seed: int = 0
) -> ConcatenatedAntinorm:
    return ConcatenatedAntinorm(splitter, f1, f2, tol=tol, n_samples=n_samples, seed=seed)


# --- duals ---

def dual_eval_polyhedral(P: ConicPolytope, y: Sequence[Scalar]) -> Scalar:
    """inf over P of (y, x), attained at a vertex because (y, r) >= 0 for every recession ray r."""
    y = P.policy.vector(y)
    return min(dot(v, y) for v in P.vertices)


def _simplex_lattice(k: int, m: int) -> np.ndarray:
    """All points of {c >= 0, sum c = 1} with denominator m (stars and bars)."""
    rows = []
    for bars in combinations(range(m + k - 1), k - 1):
        edges = (-1,) + bars + (m + k - 1,)
        rows.append([edges[q + 1] - edges[q] - 1 for q in range(k)])
    return np.array(rows, dtype=float) / m


def _grid_resolution(k: int, budget: int) -> int:
    """Largest power of two m with C(m + k - 1, k - 1) lattice points within budget."""
    m = 1
    while math.comb(2 * m + k - 1, k - 1) <= budget:
        m *= 2
    return m


def dual_eval_numeric(
    f: Antinorm, y: Sequence[Scalar], budget: int = DEFAULT_BUDGET, generators: Optional[Sequence[Sequence]] = None
) -> float:
    """inf over the cone spanned by `generators` (default: the orthant) of (y, x) / f(x).

    The ratio is scale invariant, so x = G c with c on the unit simplex. Half of the
    budget seeds a lattice on the simplex; the rest refines the best seed with
    Nelder-Mead in log coordinates of c.

    The result never exceeds the lattice minimum. Lattice resolutions are powers of
    two, so a larger budget searches a superset of points and that bound is
    nonincreasing in the budget; the refined value itself carries no such guarantee.
    """
    yv = np.array([float(c) for c in y])
    G = np.eye(f.dim) if generators is None else np.array([[float(c) for c in g] for g in generators])
    k = len(G)

    def ratios(C: np.ndarray) -> np.ndarray:
        X = C @ G
        fx = f.values(X)
        num = X @ yv
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(fx > 0, num / np.where(fx > 0, fx, 1.0), np.inf)

    if k == 1:
        return float(ratios(np.ones((1, 1)))[0])

    m = _grid_resolution(k, max(budget // 2, 1))
    lattice = _simplex_lattice(k, m)
    grid = ratios(lattice)
    spent = len(lattice)
    seed_idx = int(np.argmin(grid))
    best = float(grid[seed_idx])
    remaining = budget - spent
    if remaining <= 0:
        raise BudgetExhausted("No evaluations left for refinement.", best=best)

    # boundary seeds are pushed off the faces so the log chart is defined
    c0 = np.maximum(lattice[seed_idx], 0.25 / m)
    z0 = np.log(c0[:-1] / c0[-1])

    def objective(z: np.ndarray) -> float:
        c = np.append(np.exp(np.clip(z, -700, 700)), 1.0)
        return float(ratios(c[None, :] / c.sum())[0])

    result = minimize(
        objective,
        z0,
        method="Nelder-Mead",
        options={"maxfev": remaining, "xatol": 1e-10, "fatol": 1e-13 * max(1.0, abs(best)) if np.isfinite(best) else 1e-13},
    )
    value = min(best, float(result.fun))
    if not result.success:
        raise BudgetExhausted(f"Refinement stopped after {result.nfev} evaluations: {result.message}", best=value)
    return value


def dual_eval(f: Antinorm, y: Sequence[Scalar], budget: int = DEFAULT_BUDGET) -> Scalar:
    """Exact polyhedral dual for full-orthant piecewise-linear antinorms, numeric otherwise."""
    if isinstance(f, PiecewiseLinearAntinorm) and isinstance(f.domain, FullOrthant):
        return dual_eval_polyhedral(f.ball(), y)
    return dual_eval_numeric(f, y, budget)


def product_gradient(p: Sequence[Scalar], x: Sequence[Scalar]) -> np.ndarray:
    """(p_1/x_1, ..., p_d/x_d) * f(x) for the product antinorm with weights p."""
    if any(c <= 0 for c in x):
        raise ZeroCoordinate("The gradient needs all coordinates positive.")
    if any(w <= 0 for w in p):
        raise InvalidWeights("The gradient needs all weights positive.")
    f = ProductAntinorm(p)
    xv = np.array([float(c) for c in x])
    return f.values(xv[None, :])[0] * np.array([float(w) for w in p]) / xv


# --- JSON ---

def antinorm_from_doc(data, domain: Optional[Ambient] = None) -> Antinorm:
    doc = antinorm_adapter.validate_python(data) if isinstance(data, dict) else data
    if isinstance(doc, PiecewiseLinearDoc):
        normals = [tuple(parse_scalar(c) for c in a) for a in doc.normals]
        return PiecewiseLinearAntinorm(normals, domain)
    if isinstance(doc, ProductDoc):
        return ProductAntinorm([parse_scalar(w) for w in doc.p])
    if isinstance(doc, ExtensionDoc):
        splitter = AdmissibleHyperplane(i=doc.splitter.i, j=doc.splitter.j, mu=parse_scalar(doc.splitter.mu))
        return OrthogonalExtensionAntinorm(splitter, antinorm_from_doc(doc.phi))
    if isinstance(doc, ConcatDoc):
        splitter = AdmissibleHyperplane(i=doc.splitter.i, j=doc.splitter.j, mu=parse_scalar(doc.splitter.mu))
        f1 = antinorm_from_doc(doc.f1)
        dim = f1.dim
        f1.domain = HalfCone(dim=dim, splitter=splitter, side=Side.ONE)
        f2 = antinorm_from_doc(doc.f2, HalfCone(dim=dim, splitter=splitter, side=Side.TWO))
        return ConcatenatedAntinorm(splitter, f1, f2)
    if isinstance(doc, RestrictedDualDoc):
        base = antinorm_from_doc(doc.of)
        over = halfcone_from_doc(doc.over, base.dim)
        base.domain = over
        return RestrictedDualAntinorm(base, over, doc.budget)
    raise ValueError(f"Unknown antinorm descriptor {data!r}")
