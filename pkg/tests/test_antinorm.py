# in tests/test_antinorm.py

import math
import numpy as np
import pytest
from fractions import Fraction as F

from autopolar.antinorm import (
    ConcatenatedAntinorm,
    OrthogonalExtensionAntinorm,
    PiecewiseLinearAntinorm,
    ProductAntinorm,
    RestrictedDualAntinorm,
    antinorm_from_doc,
    concatenate,
    dual_eval,
    dual_eval_numeric,
    dual_eval_polyhedral,
    _simplex_lattice,
    evaluate,
    orthogonal_extension,
    product_gradient,
)
from autopolar.errors import BudgetExhausted, InvalidWeights, OutsideDomain, RidgeMismatch, ZeroCoordinate, ZeroNormal
from autopolar.polyhedron import AdmissibleHyperplane, HalfCone, Side, from_vertices, minkowski_functional, polar
from autopolar.sampling import make_rng, simplex_rays

SPLITTER = AdmissibleHyperplane(i=1, j=0, mu=F(4, 3))


@pytest.fixture
def ridge_identity():
    """The only self-dual antinorm of one variable."""
    return PiecewiseLinearAntinorm([(F(1),)])


# --- 1. Evaluation ---

def test_product_antinorm_values():
    f = ProductAntinorm([F(1, 2), F(1, 2)])

    assert f((2, 1)) == pytest.approx(2.0)
    assert f((1 / math.sqrt(2), 1 / math.sqrt(2))) == pytest.approx(1.0)
    assert f.closest_point == pytest.approx([1 / math.sqrt(2), 1 / math.sqrt(2)])


def test_product_antinorm_drops_zero_weights():
    f = ProductAntinorm([F(0), F(1, 2), F(1, 2)])

    assert f((123, 2, 1)) == pytest.approx(2.0)


@pytest.mark.parametrize("p", [[F(1, 2), F(1, 3)], [F(-1, 2), F(3, 2)], [0, 0]])
def test_product_antinorm_rejects_bad_weights(p):
    with pytest.raises(InvalidWeights):
        ProductAntinorm(p)


def test_piecewise_linear_values(pair_polytope):
    f = PiecewiseLinearAntinorm([(1, 2), (2, 1)])

    assert f((1, 1)) == 3
    assert isinstance(f((1, 1)), F)
    assert f.values(np.array([[1.0, 1.0], [1.0, 0.0]])) == pytest.approx([3.0, 1.0])
    assert f.ball().vertices == polar(pair_polytope).vertices


def test_piecewise_linear_needs_nonzero_normals():
    with pytest.raises(ZeroNormal):
        PiecewiseLinearAntinorm([])
    with pytest.raises(ZeroNormal):
        PiecewiseLinearAntinorm([(0, 0)])


def test_evaluate_checks_the_domain():
    f = PiecewiseLinearAntinorm([(1, 1)], HalfCone(dim=2, splitter=SPLITTER, side=Side.ONE))

    assert evaluate(f, (1, 1)) == 2
    with pytest.raises(OutsideDomain):
        evaluate(f, (0, 1))
    with pytest.raises(OutsideDomain):
        evaluate(f, (1, 1, 1))
    with pytest.raises(OutsideDomain):
        evaluate(ProductAntinorm([F(1, 2), F(1, 2)]), (-1, 1))


# --- 2. Duals ---

def test_dual_eval_polyhedral(pair_polytope):
    assert dual_eval_polyhedral(pair_polytope, (1, 1)) == 3
    assert isinstance(dual_eval_polyhedral(pair_polytope, (1, 1)), F)
    assert dual_eval_polyhedral(from_vertices([(1, 1)]), (1, 0)) == 1


def test_polyhedral_dual_is_the_functional_of_the_polar(pair_polytope):
    Q = polar(pair_polytope)
    for y in simplex_rays(make_rng(3), 20, 2):
        assert float(dual_eval_polyhedral(pair_polytope, y)) == pytest.approx(float(minkowski_functional(Q, y)))


def test_numeric_dual_of_product_is_closed_form():
    # Arrange
    f = ProductAntinorm([F(1, 2), F(1, 2)])
    y = (1 / math.sqrt(2), 1 / math.sqrt(2))

    # Act
    value = dual_eval_numeric(f, y)

    # Assert
    assert value == pytest.approx(1.0, abs=1e-6)


def test_numeric_dual_agrees_with_polyhedral_dual():
    # the ball of f is co_+{(1, 1)}
    f = PiecewiseLinearAntinorm([(1, 0), (0, 1)])

    numeric = dual_eval_numeric(f, (1, 0))

    assert numeric == pytest.approx(float(dual_eval_polyhedral(f.ball(), (1, 0))), abs=1e-9)
    assert numeric >= 1 - 1e-9


def test_numeric_dual_of_asymmetric_product_is_self_dual():
    f = ProductAntinorm([0.3, 0.7])

    assert dual_eval(f, (1, 1)) == pytest.approx(f((1, 1)), rel=1e-6)


def test_numeric_dual_is_an_upper_bound_that_improves_with_budget():
    f = PiecewiseLinearAntinorm([(1, 2), (2, 1)])
    y = (0.45, 0.55)
    exact = float(dual_eval_polyhedral(f.ball(), y))

    coarse = dual_eval_numeric(f, y, budget=2_000)
    fine = dual_eval_numeric(f, y, budget=20_000)

    assert coarse >= exact - 1e-9
    assert fine <= coarse + 1e-12
    assert fine == pytest.approx(exact, abs=1e-9)


def test_numeric_dual_stays_below_every_coarser_lattice():
    # Arrange
    f = ProductAntinorm([0.2, 0.3, 0.5])
    y = (0.2, 0.5, 0.3)
    coarse, fine = _simplex_lattice(3, 8), _simplex_lattice(3, 16)

    def lattice_min(C):
        with np.errstate(divide="ignore"):
            return float(((C @ np.array(y)) / f.values(C)).min())

    # Act
    value = dual_eval_numeric(f, y, budget=10_000)

    # Assert
    assert {tuple(c) for c in coarse} <= {tuple(c) for c in fine}
    assert lattice_min(fine) <= lattice_min(coarse)
    assert value <= lattice_min(fine) + 1e-12


def test_numeric_dual_without_budget_reports_its_best_value():
    f = ProductAntinorm([F(1, 2), F(1, 2)])

    with pytest.raises(BudgetExhausted) as excinfo:
        dual_eval_numeric(f, (1, 1), budget=2)

    assert excinfo.value.best >= 1.0 - 1e-12
    assert excinfo.value.exit_code == 3


# --- 3. Gradient ---

def test_product_gradient_closed_form():
    assert product_gradient([F(1, 2), F(1, 2)], (2, 1)) == pytest.approx([0.5, 1.0])


def test_product_gradient_matches_finite_differences():
    # Arrange
    p = [0.2, 0.3, 0.5]
    f = ProductAntinorm(p)
    rng = make_rng(7)
    h = 1e-6

    for x in rng.uniform(0.5, 3.0, size=(100, 3)):
        # Act
        grad = product_gradient(p, x)
        fd = np.array([
            (f(x + h * e) - f(x - h * e)) / (2 * h) for e in np.eye(3)
        ])

        # Assert
        assert np.max(np.abs(grad - fd) / np.abs(grad)) <= 1e-6
        assert float(grad @ x) == pytest.approx(f(x), rel=1e-10)
        assert product_gradient(p, 2 * x) == pytest.approx(grad)


def test_product_gradient_errors():
    with pytest.raises(ZeroCoordinate):
        product_gradient([F(1, 2), F(1, 2)], (0, 1))
    with pytest.raises(InvalidWeights):
        product_gradient([F(0), F(1)], (1, 1))


# --- 4. Extensions and concatenations ---

def test_orthogonal_extension_of_the_ridge_identity(ridge_identity, unit_a):
    # Act
    phi = orthogonal_extension(ridge_identity, SPLITTER)

    # Assert: Phi(x) = (a, x)
    assert isinstance(phi, OrthogonalExtensionAntinorm)
    assert phi((F(2), F(1))) == F(2) * unit_a[0] + unit_a[1]
    assert phi(unit_a) == 1
    # constant along the normal of V
    normal = SPLITTER.normal(2)
    x = (F(2), F(3))
    shifted = (x[0] + F(1, 10) * normal[0], x[1] + F(1, 10) * normal[1])
    assert phi(shifted) == phi(x)
    assert phi.values(np.array([[2.0, 1.0]])) == pytest.approx([2.0])


def test_concatenation_of_equal_pieces_is_the_piece():
    f = PiecewiseLinearAntinorm([(1, 2), (2, 1)])
    g = concatenate(f, f, AdmissibleHyperplane(i=0, j=1, mu=1))
    Y = simplex_rays(make_rng(1), 50, 2)

    assert isinstance(g, ConcatenatedAntinorm)
    assert g.values(Y) == pytest.approx(f.values(Y))
    assert g((1, 3)) == f((1, 3))


def test_concatenation_rejects_mismatched_ridges(ridge_identity):
    phi = orthogonal_extension(ridge_identity, SPLITTER)
    doubled = orthogonal_extension(PiecewiseLinearAntinorm([(F(2),)]), SPLITTER)

    with pytest.raises(RidgeMismatch) as excinfo:
        concatenate(phi, doubled, SPLITTER)

    assert excinfo.value.worst == pytest.approx(0.5)


def test_restricted_dual_lives_on_the_other_side():
    over = HalfCone(dim=2, splitter=SPLITTER, side=Side.ONE)
    f1 = PiecewiseLinearAntinorm([(F(3, 5), F(4, 5))], over)

    f2 = RestrictedDualAntinorm(f1, over)

    assert f2.domain == over.opposite()
    # on the ridge the dual of the cylinder piece is again (a, y)
    assert f2((F(3, 5), F(4, 5))) == pytest.approx(1.0, abs=1e-6)


# --- 5. Descriptors ---

def test_descriptor_round_trip_for_every_kind(ridge_identity):
    product = ProductAntinorm([F(1, 4), F(3, 4)])
    phi = orthogonal_extension(ridge_identity, SPLITTER)
    pieces = concatenate(phi, phi, SPLITTER)
    dual = RestrictedDualAntinorm(phi, HalfCone(dim=2, splitter=SPLITTER, side=Side.ONE), budget=500)
    x = (F(1), F(1))

    for f in (product, phi, pieces, dual, PiecewiseLinearAntinorm([(1, 2), (2, 1)])):
        g = antinorm_from_doc(f.to_doc())
        assert g.kind == f.kind
        if f is not dual:
            assert float(g(x)) == pytest.approx(float(f(x)))

    assert product.to_doc() == {"kind": "product", "p": ["1/4", "3/4"]}
    assert pieces.to_doc()["splitter"] == {"i": 1, "j": 0, "mu": "4/3"}
