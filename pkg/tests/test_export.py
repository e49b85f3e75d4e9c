# in tests/test_export.py

import csv
import io
import pytest
from fractions import Fraction as F

from autopolar.antinorm import ProductAntinorm
from autopolar.errors import EmptyInterior, UnsupportedDimension
from autopolar.export import clipped_vertices, export_csv, export_obj
from autopolar.polyhedron import from_vertices


def _obj_lines(text):
    vertices = [line for line in text.splitlines() if line.startswith("v ")]
    faces = [line for line in text.splitlines() if line.startswith("f ")]
    return vertices, faces


def test_clipped_orthant_corner_is_a_cube():
    # Arrange
    P = from_vertices([(1, 1, 1)])

    # Act
    points = clipped_vertices(P, 2)

    # Assert
    assert len(points) == 8
    assert set(points) == {(F(x), F(y), F(z)) for x in (1, 2) for y in (1, 2) for z in (1, 2)}


def test_obj_of_the_cube():
    stream = io.StringIO()

    faces = export_obj(from_vertices([(1, 1, 1)]), 2, stream)

    vertices, face_lines = _obj_lines(stream.getvalue())
    assert faces == len(face_lines) == 12
    assert len(vertices) == 8
    assert stream.getvalue().startswith("# conic polytope clipped at 2.0")


def test_obj_of_p3(p3):
    # Act
    stream = io.StringIO()
    faces = export_obj(p3, 3, stream)

    # Assert
    vertices, face_lines = _obj_lines(stream.getvalue())
    assert faces > 0
    assert len(vertices) >= 4
    for line in face_lines:
        indices = [int(k) for k in line.split()[1:]]
        assert len(indices) == 3
        assert all(1 <= k <= len(vertices) for k in indices)


def test_obj_needs_a_large_enough_clip(p3):
    # every point of an autopolar body has norm at least 1
    with pytest.raises(EmptyInterior):
        export_obj(p3, 0.5, io.StringIO())


def test_obj_needs_three_dimensions(cylinder_polygon):
    with pytest.raises(UnsupportedDimension):
        export_obj(cylinder_polygon, 3, io.StringIO())


def test_csv_of_a_product_antinorm():
    # Arrange
    stream = io.StringIO()

    # Act
    rows = export_csv(ProductAntinorm([F(1, 2), F(1, 2)]), stream, n_samples=25, seed=3)

    # Assert
    records = list(csv.reader(io.StringIO(stream.getvalue())))
    assert records[0] == ["x0", "x1", "f", "f_dual"]
    assert rows == len(records) - 1 == 25
    for record in records[1:]:
        f, f_dual = float(record[2]), float(record[3])
        assert abs(f - f_dual) / f <= 1e-6


def test_csv_of_a_polytope_uses_its_exact_dual(pair_polytope):
    stream = io.StringIO()

    export_csv(pair_polytope, stream, n_samples=10)

    records = list(csv.reader(io.StringIO(stream.getvalue())))[1:]
    for x0, x1, f, f_dual in ((float(c) for c in r) for r in records):
        assert f == pytest.approx(min(x0, x1, (x0 + x1) / 3), rel=1e-9)
        assert f_dual == pytest.approx(min(x0 + 2 * x1, 2 * x0 + x1), rel=1e-9)
