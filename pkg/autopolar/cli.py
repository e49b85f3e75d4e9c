# in autopolar/cli.py
"""Command line front end: autopolar generate | polar | check | eval | export."""
import argparse
import io
import json
import logging
import sys
from typing import List, Optional, Tuple, Union

from pydantic import ValidationError

from .antinorm import (
    Antinorm,
    PiecewiseLinearAntinorm,
    ProductAntinorm,
    antinorm_from_doc,
    dual_eval,
    dual_eval_polyhedral,
    evaluate,
)
from .config import CliConfig
from .construct import LiftInput, algorithm1_2d, build_pn, lift_polytope
from .errors import AutopolarError, NotAdmissible, RecipeError
from .export import export_csv, export_obj
from .polyhedron import (
    AdmissibleHyperplane,
    ConicPolytope,
    FullOrthant,
    contains,
    minkowski_functional,
    polar,
    polytope_from_doc,
    polytope_to_doc,
)
from .schemas import Algorithm1Recipe, LiftRecipe, PnRecipe, ProductRecipe, recipe_adapter
from .utils import format_scalar, parse_scalar, parse_vector
from .verify import (
    check_autopolar,
    check_selfdual_sampled,
    detect_admissible_lifting,
    find_orthogonal_splitting,
    property_suite,
)

logger = logging.getLogger(__name__)

Target = Union[ConicPolytope, Antinorm]

EXIT_OK, EXIT_VERDICT_FALSE, EXIT_INPUT = 0, 1, 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="autopolar", description="Polar duality of conic polytopes and antinorms on the orthant.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG logging on stderr")
    parser.add_argument("--scalar", choices=["rational", "float"], help="arithmetic for inputs (default: from the input)")
    parser.add_argument("--tol", type=float, help="relative tolerance of float comparisons")
    parser.add_argument("--seed", type=int, help="seed of every random draw")
    parser.add_argument("--budget", type=int, help="objective evaluations per numeric dual")
    parser.add_argument("--output", "-o", default="-", help="output file, '-' for stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="build an autopolar polytope or a self-dual antinorm")
    gen.add_argument("kind", nargs="?", choices=["lift", "algorithm1", "pn", "product"])
    gen.add_argument("--recipe", help="JSON recipe file ('-' for stdin)")
    gen.add_argument("--a", help="unit vector a, e.g. 3/5,4/5")
    gen.add_argument("--inner", action="append", default=[], help="inner vertex, repeatable, e.g. 1,1/2")
    gen.add_argument("--n", type=int, help="number of points of P_n")
    gen.add_argument("--choices", help="n-1 free parameters, e.g. 2,2,1")
    gen.add_argument("--p", help="product weights, e.g. 1/2,1/2")

    pol = sub.add_parser("polar", help="polar of a polyhedron document")
    pol.add_argument("file")

    chk = sub.add_parser("check", help="run a verifier; exit 0 iff its verdict holds")
    chk.add_argument("file")
    chk.add_argument("--mode", choices=["autopolar", "selfdual", "properties", "lifting", "orthosplit"], default="autopolar")
    chk.add_argument("--samples", type=int, default=1000, help="sampled rays for selfdual and properties")

    ev = sub.add_parser("eval", help="value of the antinorm (or Minkowski functional) at a point")
    ev.add_argument("file")
    ev.add_argument("--at", required=True, help="point, e.g. 1,1")
    ev.add_argument("--dual", action="store_true", help="also print the dual value")

    exp = sub.add_parser("export", help="OBJ mesh of a clipped 3D body or CSV ray samples")
    exp.add_argument("file")
    exp.add_argument("--format", choices=["obj", "csv"], default="obj")
    exp.add_argument("--clip", help="clip bound R for the OBJ mesh")
    exp.add_argument("--samples", type=int, default=200, help="rows of the CSV export")
    return parser


def _read_json(path: str) -> dict:
    if path == "-":
        return json.load(sys.stdin)
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def _dumps(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def load_target(data: dict, config: CliConfig, scalar: Optional[str] = None) -> Target:
    """Antinorm descriptors carry a "kind"; anything else is a polyhedron document."""
    if "kind" in data:
        return antinorm_from_doc(data)
    if scalar is not None:
        data = {**data, "scalar": scalar}
    return polytope_from_doc(data, tol=config.tol)


def _as_polytope(target: Target) -> ConicPolytope:
    if isinstance(target, ConicPolytope):
        return target
    if isinstance(target, PiecewiseLinearAntinorm):
        return target.ball()
    raise NotAdmissible(f"A polyhedron is required, got a {target.kind} antinorm.")


def _as_antinorm(target: Target) -> Antinorm:
    if isinstance(target, Antinorm):
        return target
    return PiecewiseLinearAntinorm(list(target.normals), target.ambient)


# --- subcommands ---

def cmd_generate(args, config: CliConfig) -> Tuple[int, str]:
    if args.recipe:
        data = _read_json(args.recipe)
    elif args.kind == "algorithm1":
        data = {"construct": "algorithm1", "a": _split(args.a, "--a"), "inner": [_split(v, "--inner") for v in args.inner]}
    elif args.kind == "pn":
        data = {"construct": "pn", "n": args.n, "choices": _split(args.choices, "--choices")}
    elif args.kind == "product":
        data = {"construct": "product", "p": _split(args.p, "--p")}
    else:
        raise RecipeError("Give a recipe file with --recipe or one of algorithm1 | pn | product with its flags.")
    try:
        recipe = recipe_adapter.validate_python(data)
    except ValidationError as e:
        raise RecipeError(f"Invalid recipe: {e.errors()[0]['msg']}") from e

    if isinstance(recipe, ProductRecipe):
        return EXIT_OK, _dumps(ProductAntinorm([parse_scalar(w) for w in recipe.p]).to_doc())
    if isinstance(recipe, PnRecipe):
        if len(recipe.choices) != recipe.n - 1:
            raise RecipeError(f"P_{recipe.n} needs {recipe.n - 1} choices, got {len(recipe.choices)}.")
        P = build_pn(recipe.choices, tol=config.tol)
    elif isinstance(recipe, Algorithm1Recipe):
        a = [parse_scalar(c) for c in recipe.a]
        inner = [[parse_scalar(c) for c in v] for v in recipe.inner]
        policy = config.policy if config.scalar.value == "float" else None
        P = algorithm1_2d(a, inner, policy)
    else:
        assert isinstance(recipe, LiftRecipe)
        splitter = AdmissibleHyperplane(i=recipe.splitter.i, j=recipe.splitter.j, mu=parse_scalar(recipe.splitter.mu))
        P = lift_polytope(LiftInput(splitter=splitter, g1=polytope_from_doc(recipe.g1, tol=config.tol)))
    return EXIT_OK, _dumps(polytope_to_doc(P))


def _split(text: Optional[str], flag: str) -> List[str]:
    if not text:
        raise RecipeError(f"{flag} is required for this recipe.")
    return [p.strip() for p in text.split(",") if p.strip()]


def cmd_polar(args, config: CliConfig) -> Tuple[int, str]:
    P = _as_polytope(load_target(_read_json(args.file), config, args.scalar))
    return EXIT_OK, _dumps(polytope_to_doc(polar(P)))


def cmd_check(args, config: CliConfig) -> Tuple[int, str]:
    target = load_target(_read_json(args.file), config, args.scalar)
    mode = args.mode
    if mode == "autopolar":
        report = check_autopolar(_as_polytope(target))
        verdict, payload = report.verdict, report.model_dump(mode="json")
    elif mode == "selfdual":
        report = check_selfdual_sampled(
            _as_antinorm(target), n_samples=args.samples, budget=config.budget, seed=config.seed,
            threshold=config.selfdual_threshold,
        )
        verdict, payload = report.verdict, report.model_dump(mode="json")
    elif mode == "properties":
        report = property_suite(target, seed=config.seed, n_samples=args.samples, budget=config.budget)
        verdict, payload = report.verdict, report.model_dump(mode="json")
    elif mode == "lifting":
        report = detect_admissible_lifting(_as_polytope(target), tol=config.tol)
        verdict, payload = report.verdict, {"verdict": report.verdict, **report.model_dump(mode="json")}
    else:
        report = find_orthogonal_splitting(_as_polytope(target), tol=config.tol)
        verdict, payload = report.verdict, report.model_dump(mode="json")
    return (EXIT_OK if verdict else EXIT_VERDICT_FALSE), _dumps(payload)


def cmd_eval(args, config: CliConfig) -> Tuple[int, str]:
    target = load_target(_read_json(args.file), config, args.scalar)
    x = parse_vector(args.at)
    if isinstance(target, ConicPolytope):
        if not FullOrthant(dim=target.dim).contains(target.policy.vector(x), target.policy):
            raise NotAdmissible("The point must lie in the orthant.")
        result = {"value": format_scalar(minkowski_functional(target, x)), "inside": contains(target, x)}
        if args.dual:
            result["dual"] = format_scalar(dual_eval_polyhedral(target, x))
    else:
        result = {"value": format_scalar(evaluate(target, x))}
        if args.dual:
            result["dual"] = format_scalar(dual_eval(target, x, config.budget))
    return EXIT_OK, _dumps(result)


def cmd_export(args, config: CliConfig) -> Tuple[int, str]:
    target = load_target(_read_json(args.file), config, args.scalar)
    buffer = io.StringIO()
    if args.format == "obj":
        if args.clip is None:
            raise RecipeError("--clip is required for OBJ export.")
        export_obj(_as_polytope(target), parse_scalar(args.clip), buffer)
    else:
        export_csv(target, buffer, n_samples=args.samples, seed=config.seed, budget=config.budget)
    return EXIT_OK, buffer.getvalue()


COMMANDS = {
    "generate": cmd_generate,
    "polar": cmd_polar,
    "check": cmd_check,
    "eval": cmd_eval,
    "export": cmd_export,
}


def _emit(text: str, output: str) -> None:
    if output == "-":
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as f:
            f.write(text)


def _fail(code: int, payload: dict) -> int:
    sys.stderr.write(_dumps(payload))
    return code


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING if args.verbose == 0 else logging.INFO if args.verbose == 1 else logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        config = CliConfig.from_env(scalar=args.scalar, tol=args.tol, seed=args.seed, budget=args.budget)
        code, text = COMMANDS[args.command](args, config)
    except AutopolarError as e:
        logger.debug("command failed", exc_info=True)
        return _fail(e.exit_code, e.to_dict())
    except ValidationError as e:
        return _fail(EXIT_INPUT, {"error": "ValidationError", "message": str(e)})
    except (ValueError, OSError) as e:
        return _fail(EXIT_INPUT, {"error": type(e).__name__, "message": str(e)})
    _emit(text, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
