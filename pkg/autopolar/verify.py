# in autopolar/verify.py
import asyncio
import logging
from itertools import combinations
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import minimize

from .antinorm import (
    DEFAULT_BUDGET,
    Antinorm,
    PiecewiseLinearAntinorm,
    ProductAntinorm,
    dual_eval,
)
from .construct import LiftInput, lift_polytope
from .errors import BudgetExhausted, InputError, NotAutopolar, UnsupportedDimension
from .polyhedron import (
    AdmissibleHyperplane,
    ConicPolytope,
    FullOrthant,
    HalfCone,
    Side,
    canonical_equal,
    distance_to_origin,
    normalize_first,
    polar,
    ridge_section,
    slice_by_halfcone,
)
from .sampling import cone_rays, make_rng, random_conic_polytope
from .scalars import ScalarMode, ScalarPolicy, Vector
from .schemas import (
    AutopolarityCertificate,
    CandidateReport,
    ComparisonReport,
    DistanceReport,
    FoundLifting,
    LiftingReport,
    OrthogonalSplittingReport,
    PropertyCheck,
    PropertyReport,
    RejectionReason,
    SelfDualityReport,
    SplittingPlaneReport,
    Witness,
)
from .utils import cross3, dot, format_scalar, max_abs, norm_sq, rank

logger = logging.getLogger(__name__)

SELFDUAL_THRESHOLD = 1e-6
YOUNG_SLACK = 1e-12


def _fmt(v: Sequence) -> List:
    return [format_scalar(c) for c in v]


# --- autopolarity ---

def _worst_violation(points: Sequence[Vector], normals: Sequence[Vector]) -> Tuple[float, Optional[Tuple[Vector, Vector, float]]]:
    worst, pair = 0.0, None
    for v in points:
        for a in normals:
            value = dot(a, v)
            residual = float(1 - value)
            if residual > worst:
                worst, pair = residual, (v, a, value)
    return worst, pair


def _within(points: Sequence[Vector], normals: Sequence[Vector], tol: float) -> bool:
    return all(float(dot(a, v)) >= 1 - tol * (1 + float(norm_sq(v)) ** 0.5) for v in points for a in normals)


def check_autopolar(P: ConicPolytope, policy: Optional[ScalarPolicy] = None) -> AutopolarityCertificate:
    """Compare P with its polar: vertices of each against the constraints of the other."""
    policy = policy or P.policy
    Q = polar(P)
    body_worst, body_pair = _worst_violation(P.vertices, Q.normals)
    polar_worst, polar_pair = _worst_violation(Q.vertices, P.normals)
    distance, point = distance_to_origin(P)

    if policy.exact and P.policy.exact:
        forms_agree = canonical_equal(P, Q)
        distance_ok = distance == 1
    else:
        forms_agree = _within(P.vertices, Q.normals, policy.tol) and _within(Q.vertices, P.normals, policy.tol)
        distance_ok = abs(float(distance) - 1) <= policy.tol

    verdict = forms_agree and distance_ok
    witness = None
    if not verdict:
        if polar_worst >= body_worst and polar_pair is not None:
            v, a, value = polar_pair
            witness = Witness(vertex=_fmt(v), normal=_fmt(a), value=format_scalar(value), side="polar")
        elif body_pair is not None:
            v, a, value = body_pair
            witness = Witness(vertex=_fmt(v), normal=_fmt(a), value=format_scalar(value), side="body")
    return AutopolarityCertificate(
        verdict=verdict,
        max_residual=max(body_worst, polar_worst),
        distance=DistanceReport(value=format_scalar(distance), point=_fmt(point)),
        witness=witness,
    )


def check_ridge_autopolar(P: ConicPolytope, splitter: AdmissibleHyperplane) -> bool:
    return ridge_section(P, splitter).is_autopolar()


# --- sampled self-duality ---

def _domain_rays(rng: np.random.Generator, n: int, f: Antinorm) -> np.ndarray:
    return cone_rays(rng, n, f.domain.rays())


def dual_values(f: Antinorm, Y: np.ndarray, budget: int) -> Tuple[np.ndarray, int]:
    if isinstance(f, PiecewiseLinearAntinorm) and isinstance(f.domain, FullOrthant):
        vertices = np.array([[float(c) for c in v] for v in f.ball().vertices])
        return (Y @ vertices.T).min(axis=1), 0
    values, exhausted = [], 0
    for y in Y:
        try:
            values.append(float(dual_eval(f, tuple(float(c) for c in y), budget)))
        except BudgetExhausted as e:
            exhausted += 1
            values.append(float(e.best))
    if exhausted:
        logger.warning("%d of %d dual evaluations ran out of budget", exhausted, len(Y))
    return np.array(values), exhausted


def check_selfdual_sampled(
    f: Antinorm,
    n_samples: int = 1000,
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    threshold: float = SELFDUAL_THRESHOLD,
) -> SelfDualityReport:
    Y = _domain_rays(make_rng(seed), n_samples, f)
    primal = f.values(Y)
    dual, exhausted = dual_values(f, Y, budget)
    rel = np.abs(dual - primal) / np.where(primal > 0, primal, 1.0)
    return SelfDualityReport(
        verdict=bool(rel.max() <= threshold),
        max_rel=float(rel.max()),
        mean_rel=float(rel.mean()),
        n_samples=n_samples,
        exhausted=exhausted,
        threshold=threshold,
    )


# --- splitting hyperplanes ---

def _plane_policy(P: ConicPolytope, normal: Sequence, tol: float) -> ScalarPolicy:
    if P.policy.exact and all(not isinstance(c, float) for c in normal):
        return P.policy
    return ScalarPolicy(mode=ScalarMode.FLOAT, tol=max(tol, P.policy.tol))


def assess_splitting_plane(
    P: ConicPolytope, normal: Sequence, tol: float = 1e-9
) -> Tuple[Optional[RejectionReason], Optional[str]]:
    """Apply the facet conditions for splitting P by the plane through O with the given normal.

    A facet crossed by the plane (tight generators strictly on both sides) must be
    orthogonal to it. A facet meeting the plane in a ridge from one side must make
    a non-obtuse angle with the plane facade of that side.
    """
    policy = _plane_policy(P, normal, tol)
    dim = P.dim
    n_len = float(norm_sq(normal)) ** 0.5
    gens = [(v, 1) for v in P.vertices] + [(r, 0) for r in P.rays]
    for a in P.normals:
        a_len = float(norm_sq(a)) ** 0.5
        tight = []
        for g, h in gens:
            value = dot(a, g)
            if (h and policy.eq(value, 1)) or (not h and policy.is_zero(value, max_abs(a) * max_abs(g))):
                side = policy.sign(dot(normal, g), n_len * max_abs(g))
                tight.append((g, h, side))
        sides = {s for _, _, s in tight}
        an = dot(a, normal)
        if 1 in sides and -1 in sides:
            if not policy.is_zero(an, a_len * n_len):
                return RejectionReason.TRANSVERSAL_NOT_ORTHOGONAL, f"facet {_fmt(a)} is crossed at angle cos={float(an) / (a_len * n_len):.3e}"
            continue
        on_plane = [tuple(g) + (h,) for g, h, s in tight if s == 0]
        if rank(on_plane, policy) != dim - 1:
            continue
        sigma = next((s for _, _, s in tight if s != 0), 0)
        if sigma and policy.sign(sigma * an, a_len * n_len) > 0:
            return RejectionReason.OBTUSE_DIHEDRAL, f"facet {_fmt(a)} meets the facade at an obtuse angle"
    return None, None


def _candidate_splitter(point: Vector, i: int, j: int, policy: ScalarPolicy) -> Optional[AdmissibleHyperplane]:
    ai = point[i] if not policy.is_zero(point[i]) else 0 * point[i]
    aj = point[j] if not policy.is_zero(point[j]) else 0 * point[j]
    if aj != 0:
        return AdmissibleHyperplane(i=i, j=j, mu=max(ai / aj, 0 * ai))
    if ai != 0:
        return AdmissibleHyperplane(i=j, j=i, mu=0 * ai)
    return None


def _examine_candidate(
    P: ConicPolytope, i: int, j: int, closest: Vector, tol: float
) -> Tuple[CandidateReport, Optional[FoundLifting]]:
    splitter = _candidate_splitter(closest, i, j, P.policy)
    if splitter is None:
        return CandidateReport(ij=[i, j], reason=RejectionReason.CLOSEST_POINT_MISS, detail="closest point has x_i = x_j = 0"), None
    mu = format_scalar(splitter.mu)

    reason, detail = assess_splitting_plane(P, splitter.normal(P.dim), tol)
    if reason is None:
        h = HalfCone(dim=P.dim, splitter=splitter, side=Side.ONE)
        if h.degenerate:
            h = h.opposite()
        try:
            lifted = lift_polytope(LiftInput(splitter=splitter, g1=slice_by_halfcone(P, h)))
            if not canonical_equal(lifted, P):
                reason, detail = RejectionReason.RECONSTRUCTION_MISMATCH, "the lift of the slice differs from P"
        except InputError as e:
            reason, detail = RejectionReason.RECONSTRUCTION_MISMATCH, f"{type(e).__name__}: {e}"

    report = CandidateReport(ij=[splitter.i, splitter.j], mu=mu, reason=reason, detail=detail)
    if reason is not None:
        logger.info("Candidate (%d, %d) mu=%s rejected: %s (%s)", splitter.i, splitter.j, mu, reason.value, detail)
        return report, None
    return report, FoundLifting(ij=[splitter.i, splitter.j], mu=mu, reconstruction_equal=True)


async def detect_admissible_lifting_async(P: ConicPolytope, tol: float = 1e-9) -> LiftingReport:
    """Search the admissible hyperplanes through the closest point of an autopolar P."""
    if not 2 <= P.dim <= 4:
        raise UnsupportedDimension(f"Lifting detection supports dimensions 2 to 4, got {P.dim}.")
    if not check_autopolar(P).verdict:
        raise NotAutopolar("Lifting detection needs an autopolar polytope.")
    _, closest = distance_to_origin(P)

    pairs = list(combinations(range(P.dim), 2))
    results = await asyncio.gather(*[asyncio.to_thread(_examine_candidate, P, i, j, closest, tol) for i, j in pairs])

    candidates = [report for report, _ in results]
    survivors = [found for _, found in results if found is not None]
    return LiftingReport(candidates=candidates, found=survivors[0] if survivors else None, survivors=survivors)


def detect_admissible_lifting(P: ConicPolytope, tol: float = 1e-9) -> LiftingReport:
    return asyncio.run(detect_admissible_lifting_async(P, tol))


def _plane_key(normal: Vector) -> Tuple[float, ...]:
    n = np.array([float(c) for c in normal])
    n /= np.linalg.norm(n)
    lead = next(c for c in n if abs(c) > 1e-12)
    return tuple(np.round(n * np.sign(lead), 9))


def examine_splitting_planes(
    P: ConicPolytope,
    points: Optional[Sequence[Sequence]] = None,
    labels: Optional[Sequence[str]] = None,
    tol: float = 1e-9,
) -> List[SplittingPlaneReport]:
    """Every plane through O spanned by two points (vertices by default) or by the
    closest point and a coordinate axis, with the outcome of the facet conditions."""
    if P.dim != 3:
        raise UnsupportedDimension(f"Splitting-plane search works in dimension 3, got {P.dim}.")
    points = [tuple(p) for p in (points if points is not None else P.vertices)]
    labels = list(labels) if labels is not None else [f"v{k + 1}" for k in range(len(points))]
    _, closest = distance_to_origin(P)
    closest_label = next(
        (lab for p, lab in zip(points, labels) if P.policy.vectors_equal(P.policy.vector(p), closest)), "closest"
    )

    spans = [((p, q), (lp, lq)) for (p, lp), (q, lq) in combinations(zip(points, labels), 2)]
    axes = [tuple(1 if m == k else 0 for m in range(3)) for k in range(3)]
    spans += [((closest, e), (closest_label, f"e{k}")) for k, e in enumerate(axes)]

    seen, reports = set(), []
    for (p, q), names in spans:
        normal = cross3(p, q)
        if max_abs(normal) <= tol * max(1.0, max_abs(p) * max_abs(q)):
            continue
        key = _plane_key(normal)
        if key in seen:
            continue
        seen.add(key)
        normal = normalize_first(normal, P.policy)
        reason, detail = assess_splitting_plane(P, normal, tol)
        reports.append(SplittingPlaneReport(normal=_fmt(normal), spanned_by=list(names), reason=reason, detail=detail))
    return reports


def find_orthogonal_splitting(
    P: ConicPolytope,
    points: Optional[Sequence[Sequence]] = None,
    labels: Optional[Sequence[str]] = None,
    tol: float = 1e-9,
) -> OrthogonalSplittingReport:
    reports = examine_splitting_planes(P, points, labels, tol)
    accepted = [r for r in reports if r.reason is None]
    rejected = [r for r in reports if r.reason is not None]
    return OrthogonalSplittingReport(verdict=bool(accepted), accepted=accepted, rejected=rejected)


# --- comparisons and property suites ---

def compare_selfdual(f: Antinorm, g: Antinorm, n_samples: int = 1000, seed: int = 0, tol: float = 1e-6) -> ComparisonReport:
    """Two self-dual antinorms with f >= g must coincide; report whether the samples agree."""
    X = _domain_rays(make_rng(seed), n_samples, f)
    fv, gv = f.values(X), g.values(X)
    scale = np.maximum(np.maximum(np.abs(fv), np.abs(gv)), 1.0)
    dominates = bool(np.all(fv >= gv - tol * scale))
    max_gap = float(np.max(np.abs(fv - gv) / scale))
    return ComparisonReport(verdict=not dominates or max_gap <= tol, dominates=dominates, max_gap=max_gap)


def _check(name: str, worst: float, passed: bool, detail: Optional[str] = None) -> PropertyCheck:
    return PropertyCheck(name=name, passed=bool(passed), worst=float(worst), detail=detail)


def _equality_ray(f: Antinorm, X: np.ndarray) -> List[float]:
    """Direction where f(x) = |x|, i.e. the closest point of the unit ball."""
    if isinstance(f, ProductAntinorm):
        return [float(c) for c in f.closest_point]
    if isinstance(f, PiecewiseLinearAntinorm) and isinstance(f.domain, FullOrthant):
        _, point = distance_to_origin(f.ball())
        v = np.array([float(c) for c in point])
        return list(v / np.linalg.norm(v))

    G = np.array([[float(c) for c in r] for r in f.domain.rays()])
    weights = X @ np.linalg.pinv(G)
    ratio = f.values(X) / np.linalg.norm(X, axis=1)
    best = np.clip(weights[int(np.argmax(ratio))], 1e-6, None)

    def objective(z):
        x = np.exp(np.clip(z, -700, 700)) @ G
        return -float(f.values(x[None, :])[0]) / float(np.linalg.norm(x))

    result = minimize(objective, np.log(best), method="Nelder-Mead", options={"xatol": 1e-10, "fatol": 1e-14})
    x = np.exp(result.x) @ G
    return list(x / np.linalg.norm(x))


def _antinorm_checks(
    f: Antinorm, rng: np.random.Generator, n_samples: int, n_dual: int, budget: int
) -> List[PropertyCheck]:
    X = _domain_rays(rng, n_samples, f)
    fx = f.values(X)
    lam = rng.uniform(0.1, 10.0, size=n_samples)
    homog = np.abs(f.values(X * lam[:, None]) - lam * fx) / np.maximum(lam * fx, 1e-300)

    Z = np.roll(X, 1, axis=0)
    concave_gap = f.values((X + Z) / 2) - (fx + f.values(Z)) / 2
    concave_worst = float((concave_gap / np.maximum(np.abs(fx), 1.0)).min())

    Y = _domain_rays(rng, n_dual, f)
    fstar, exhausted = dual_values(f, Y, budget)
    pairing = X @ Y.T
    slack = pairing - np.outer(fx, fstar)

    return [
        _check("homogeneity", homog.max(), homog.max() <= 1e-9),
        _check("concavity", concave_worst, concave_worst >= -1e-9),
        _check(
            "young", slack.min(), slack.min() >= -YOUNG_SLACK,
            detail=f"{exhausted} dual evaluations out of budget" if exhausted else None,
        ),
    ]


def property_suite(
    target: Union[ConicPolytope, Antinorm],
    seed: int = 0,
    n_samples: int = 1000,
    n_dual: int = 100,
    budget: int = DEFAULT_BUDGET,
) -> PropertyReport:
    """Bipolarity, Young's inequality, homogeneity and concavity on samples; for
    self-dual inputs also domination by the Euclidean norm."""
    rng = make_rng(seed)
    checks: List[PropertyCheck] = []
    equality_ray = None

    if isinstance(target, ConicPolytope):
        P = target
        bipolar = canonical_equal(polar(polar(P)), P)
        checks.append(_check("bipolar", 0.0 if bipolar else 1.0, bipolar))
        f = PiecewiseLinearAntinorm(list(P.normals), P.ambient)
        self_dual = isinstance(P.ambient, FullOrthant) and check_autopolar(P).verdict
        checks += _antinorm_checks(f, rng, n_samples, n_dual, budget)
    else:
        f = target
        exact = isinstance(f, PiecewiseLinearAntinorm) and isinstance(f.domain, FullOrthant)
        if exact:
            ball = f.ball()
            bipolar = canonical_equal(polar(polar(ball)), ball)
            checks.append(_check("double_dual", 0.0 if bipolar else 1.0, bipolar))
        self_dual = check_selfdual_sampled(f, n_samples=min(n_dual, 100), budget=budget, seed=seed).verdict
        checks += _antinorm_checks(f, rng, n_samples, n_dual, budget)

    if self_dual:
        X = _domain_rays(rng, n_samples, f)
        excess = f.values(X) / np.linalg.norm(X, axis=1) - 1.0
        checks.append(_check("euclidean_domination", excess.max(), excess.max() <= 1e-12))
        equality_ray = _equality_ray(f, X)

    verdict = all(c.passed for c in checks)
    for c in checks:
        logger.info("property %s: %s (worst %.3e)", c.name, "pass" if c.passed else "FAIL", c.worst)
    return PropertyReport(verdict=verdict, checks=checks, equality_ray=equality_ray)


def bipolar_sweep(count: int = 100, dim_range: Tuple[int, int] = (2, 4), max_vertices: int = 8, seed: int = 0) -> int:
    """Number of seeded random rational polytopes with polar(polar(P)) = P exactly."""
    rng = make_rng(seed)
    passed = 0
    for _ in range(count):
        dim = int(rng.integers(dim_range[0], dim_range[1] + 1))
        P = random_conic_polytope(rng, dim, max_vertices)
        passed += canonical_equal(polar(polar(P)), P)
    return passed
