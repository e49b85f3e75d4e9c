# in tests/test_cli.py

import json
import pytest

from autopolar.cli import EXIT_INPUT, EXIT_OK, EXIT_VERDICT_FALSE, main
from autopolar.construct import algorithm1_2d, build_pn
from autopolar.polyhedron import canonical_equal, polytope_from_doc
from autopolar.schemas import PnRecipe, recipe_adapter

CYLINDER_DOC = {"dim": 2, "vertices": [["5/3", "0"], ["3/5", "4/5"]]}
PAIR_DOC = {"dim": 2, "vertices": [["1", "2"], ["2", "1"]]}


@pytest.fixture(autouse=True)
def clean_env(monkeypatch):
    for name in ["AUTOPOLAR_SCALAR", "AUTOPOLAR_TOL", "AUTOPOLAR_SEED", "AUTOPOLAR_BUDGET"]:
        monkeypatch.delenv(name, raising=False)


@pytest.fixture
def write_doc(tmp_path):
    def _write(name, payload):
        path = tmp_path / name
        path.write_text(json.dumps(payload), encoding="utf-8")
        return str(path)
    return _write


def _run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def _vertex_set(doc):
    return {tuple(v) for v in doc["vertices"]}


# --- 1. generate ---

def test_generate_algorithm1_without_inner_vertices(capsys):
    code, out, _ = _run(capsys, ["generate", "algorithm1", "--a", "3/5,4/5"])

    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["scalar"] == "rational"
    assert _vertex_set(doc) == {("5/3", "0"), ("3/5", "4/5")}


def test_generate_algorithm1_with_inner_vertex(capsys):
    code, out, _ = _run(capsys, ["generate", "algorithm1", "--a", "3/5,4/5", "--inner", "1,1/2"])

    assert code == EXIT_OK
    assert _vertex_set(json.loads(out)) == {("0", "2"), ("3/5", "4/5"), ("1", "1/2")}


def test_generate_p3(capsys):
    # Act
    code, out, _ = _run(capsys, ["generate", "pn", "--n", "3", "--choices", "2,2"])

    # Assert
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["dim"] == 3
    assert doc["scalar"] == "float"
    assert len(doc["vertices"]) == 3


def test_generate_product(capsys):
    code, out, _ = _run(capsys, ["generate", "product", "--p", "1/2,1/2"])

    assert code == EXIT_OK
    assert json.loads(out) == {"kind": "product", "p": ["1/2", "1/2"]}


def test_generate_from_a_recipe_file(capsys, write_doc):
    recipe = write_doc("recipe.json", {"construct": "pn", "n": 4, "choices": ["2", "2", "1"]})

    code, out, _ = _run(capsys, ["generate", "--recipe", recipe])

    assert code == EXIT_OK
    assert len(json.loads(out)["vertices"]) == 4


def test_recipes_are_keyed_by_construct():
    recipe = recipe_adapter.validate_python({"construct": "pn", "n": 3, "choices": ["2", "2"]})

    assert isinstance(recipe, PnRecipe)
    assert recipe.model_dump(by_alias=True)["construct"] == "pn"
    assert "construct" not in PnRecipe.model_fields


def test_generate_to_an_output_file(capsys, tmp_path):
    target = tmp_path / "p3.json"

    code, out, _ = _run(capsys, ["-o", str(target), "generate", "pn", "--n", "3", "--choices", "2,2"])

    assert code == EXIT_OK
    assert out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["dim"] == 3


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["generate", "algorithm1", "--a", "3/5,4/5", "--inner", "1,1/2"], lambda: algorithm1_2d(("3/5", "4/5"), [("1", "1/2")])),
        (["generate", "pn", "--n", "3", "--choices", "2,2"], lambda: build_pn([2, 2])),
    ],
)
def test_generated_json_reads_back_as_the_same_body(capsys, tmp_path, argv, expected):
    # Arrange
    target = tmp_path / "body.json"

    # Act
    code, _, _ = _run(capsys, ["-o", str(target)] + argv)
    body = polytope_from_doc(json.loads(target.read_text(encoding="utf-8")))

    # Assert
    assert code == EXIT_OK
    assert canonical_equal(body, expected())


# --- 2. polar, check, eval ---

def test_polar_of_the_pair_polytope(capsys, write_doc):
    code, out, _ = _run(capsys, ["polar", write_doc("pair.json", PAIR_DOC)])

    assert code == EXIT_OK
    assert _vertex_set(json.loads(out)) == {("1", "0"), ("1/3", "1/3"), ("0", "1")}


def test_check_autopolar_exit_codes(capsys, write_doc):
    # Act
    good, good_out, _ = _run(capsys, ["check", write_doc("cyl.json", CYLINDER_DOC)])
    bad, bad_out, _ = _run(capsys, ["check", write_doc("pair.json", PAIR_DOC)])

    # Assert
    assert good == EXIT_OK
    assert json.loads(good_out)["verdict"] is True
    assert bad == EXIT_VERDICT_FALSE
    report = json.loads(bad_out)
    assert report["verdict"] is False
    assert report["witness"]["side"] == "polar"


def test_check_lifting_of_a_generated_body(capsys, tmp_path):
    target = str(tmp_path / "p3.json")
    main(["-o", target, "generate", "pn", "--n", "3", "--choices", "2,2"])
    capsys.readouterr()

    code, out, _ = _run(capsys, ["check", target, "--mode", "lifting"])

    assert code == EXIT_OK
    report = json.loads(out)
    assert report["verdict"] is True
    assert report["found"]["ij"] == [0, 1]


def test_check_selfdual_of_a_product(capsys, write_doc):
    path = write_doc("prod.json", {"kind": "product", "p": ["1/2", "1/2"]})

    code, out, _ = _run(capsys, ["check", path, "--mode", "selfdual", "--samples", "50"])

    assert code == EXIT_OK
    assert json.loads(out)["n_samples"] == 50


def test_eval_with_dual(capsys, write_doc):
    code, out, _ = _run(capsys, ["eval", write_doc("pair.json", PAIR_DOC), "--at", "1,1", "--dual"])

    assert code == EXIT_OK
    assert json.loads(out) == {"value": "2/3", "inside": False, "dual": "3"}


def test_eval_of_an_antinorm(capsys, write_doc):
    path = write_doc("prod.json", {"kind": "product", "p": ["1/2", "1/2"]})

    code, out, _ = _run(capsys, ["eval", path, "--at", "2,1"])

    assert code == EXIT_OK
    assert json.loads(out)["value"] == pytest.approx(2.0)


# --- 3. export ---

def test_export_csv(capsys, write_doc):
    path = write_doc("prod.json", {"kind": "product", "p": ["1/2", "1/2"]})

    code, out, _ = _run(capsys, ["export", path, "--format", "csv", "--samples", "5"])

    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "x0,x1,f,f_dual"
    assert len(lines) == 6


def test_export_obj(capsys, write_doc):
    path = write_doc("corner.json", {"dim": 3, "vertices": [["1", "1", "1"]]})

    code, out, _ = _run(capsys, ["export", path, "--clip", "2"])

    assert code == EXIT_OK
    assert sum(line.startswith("f ") for line in out.splitlines()) == 12


# --- 4. Errors ---

def test_input_errors_exit_with_code_2(capsys):
    code, out, err = _run(capsys, ["generate", "algorithm1", "--a", "1,1"])

    assert code == EXIT_INPUT
    assert out == ""
    assert json.loads(err)["error"] == "NotUnit"


def test_pn_without_a_sphere_intersection(capsys):
    code, _, err = _run(capsys, ["generate", "pn", "--n", "3", "--choices", "1/2,2"])

    assert code == EXIT_INPUT
    assert json.loads(err)["error"] == "NoSphereIntersection"


def test_mismatched_pn_choices(capsys):
    code, _, err = _run(capsys, ["generate", "pn", "--n", "4", "--choices", "2,2"])

    assert code == EXIT_INPUT
    assert json.loads(err)["error"] == "RecipeError"


def test_missing_file(capsys, tmp_path):
    code, _, err = _run(capsys, ["polar", str(tmp_path / "missing.json")])

    assert code == EXIT_INPUT
    assert json.loads(err)["error"] == "FileNotFoundError"


def test_capability_errors_exit_with_code_3(capsys, write_doc):
    code, _, err = _run(capsys, ["export", write_doc("cyl.json", CYLINDER_DOC), "--clip", "3"])

    assert code == 3
    assert json.loads(err)["error"] == "UnsupportedDimension"
