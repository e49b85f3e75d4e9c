# in autopolar/export.py
import csv
import logging
from typing import List, TextIO, Union

import numpy as np
from scipy.spatial import ConvexHull

from .antinorm import DEFAULT_BUDGET, Antinorm, PiecewiseLinearAntinorm
from .doubledesc import extreme_rays
from .errors import EmptyInterior, UnsupportedDimension
from .polyhedron import ConicPolytope
from .sampling import cone_rays, make_rng
from .utils import rank
from .verify import dual_values

logger = logging.getLogger(__name__)


def clipped_vertices(P: ConicPolytope, clip) -> List[tuple]:
    """Vertices of P ∩ {x_k <= clip for every k}, by double description on the homogenized cone."""
    policy = P.policy
    R = policy.coerce(clip)
    dim = P.dim
    zero, one = policy.coerce(0), policy.coerce(1)
    form = P.constraints
    rows = [tuple(a) + (-one,) for a in form.affine]
    rows += [tuple(policy.vector(h)) + (zero,) for h in form.homogeneous]
    rows += [tuple(-one if m == k else zero for m in range(dim)) + (R,) for k in range(dim)]
    rows.append(tuple([zero] * dim) + (one,))

    points = []
    for ray in extreme_rays(rows, policy):
        t = ray.vector[-1]
        if policy.sign(t) > 0:
            points.append(tuple(c / t for c in ray.vector[:-1]))
    lifted = [p + (one,) for p in points]
    if rank(lifted, policy) < dim + 1:
        raise EmptyInterior(f"The clip box at {float(R)} leaves no full-dimensional part of the body.")
    return points


def export_obj(P: ConicPolytope, clip, stream: TextIO) -> int:
    """Write the triangulated boundary of the clipped body as a Wavefront OBJ; returns the face count."""
    if P.dim != 3:
        raise UnsupportedDimension(f"OBJ export needs dimension 3, got {P.dim}.")
    points = np.array([[float(c) for c in p] for p in clipped_vertices(P, clip)])
    hull = ConvexHull(points)
    center = points.mean(axis=0)

    stream.write(f"# conic polytope clipped at {float(clip)}\n")
    for x, y, z in points:
        stream.write(f"v {x:.12g} {y:.12g} {z:.12g}\n")
    faces = 0
    for simplex in hull.simplices:
        a, b, c = points[simplex]
        # keep faces counter-clockwise seen from outside
        if np.dot(np.cross(b - a, c - a), a - center) < 0:
            simplex = simplex[[0, 2, 1]]
        stream.write("f {} {} {}\n".format(*(int(k) + 1 for k in simplex)))
        faces += 1
    logger.info("OBJ export: %d vertices, %d faces", len(points), faces)
    return faces


def export_csv(
    target: Union[ConicPolytope, Antinorm],
    stream: TextIO,
    n_samples: int = 200,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> int:
    """Sampled unit-simplex rays with the value of the antinorm and of its dual."""
    f = target if isinstance(target, Antinorm) else PiecewiseLinearAntinorm(list(target.normals), target.ambient)
    Y = cone_rays(make_rng(seed), n_samples, f.domain.rays())
    primal = f.values(Y)
    dual, _ = dual_values(f, Y, budget)

    writer = csv.writer(stream)
    writer.writerow([f"x{k}" for k in range(f.dim)] + ["f", "f_dual"])
    for y, fv, dv in zip(Y, primal, dual):
        writer.writerow([f"{c:.12g}" for c in y] + [f"{fv:.12g}", f"{dv:.12g}"])
    return n_samples
