# in tests/conftest.py

import pytest
from fractions import Fraction as F

from autopolar.construct import build_pn
from autopolar.polyhedron import from_vertices

# --- Shared polytopes ---
# The right-cylinder polygon over a = (3/5, 4/5) and the three-facet polygon with
# the extra vertex (1, 1/2) are both autopolar; co_+{(1,2),(2,1)} is not.

A = (F(3, 5), F(4, 5))


@pytest.fixture
def unit_a():
    return A


@pytest.fixture
def cylinder_polygon():
    return from_vertices([(F(5, 3), F(0)), A])


@pytest.fixture
def three_facet_polygon():
    return from_vertices([(F(0), F(2)), A, (F(1), F(1, 2))])


@pytest.fixture
def pair_polytope():
    return from_vertices([(1, 2), (2, 1)])


@pytest.fixture(scope="session")
def p3():
    return build_pn([2, 2])


@pytest.fixture(scope="session")
def p4():
    return build_pn([2, 2, 1])


@pytest.fixture(scope="session")
def p5():
    return build_pn([2, 2, 1, "sqrt(1257)/32"])
