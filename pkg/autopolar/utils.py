# in autopolar/utils.py
import ast
import math
import operator as op
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import ScalarParseError
from .scalars import Scalar, ScalarPolicy, Vector

# A dictionary mapping allowed AST nodes to their corresponding operator functions
_SUPPORTED_OPERATORS = {
    ast.Add: op.add, ast.Sub: op.sub, ast.Mult: op.mul,
    ast.Div: op.truediv, ast.Pow: op.pow, ast.USub: op.neg, ast.UAdd: op.pos,
}


def exact_sqrt(value: Fraction) -> Optional[Fraction]:
    """Square root of a nonnegative rational when it is rational, else None."""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def sqrt_scalar(value: Scalar) -> Scalar:
    if isinstance(value, Fraction):
        root = exact_sqrt(value)
        if root is not None:
            return root
    return math.sqrt(float(value))


_SUPPORTED_FUNCTIONS = {"sqrt": sqrt_scalar}


def _recursive_eval(node: ast.AST) -> Scalar:
    """
    Recursively traverses the AST and evaluates it with exact integers where possible.
    Raises a TypeError for any unsupported operation.
    """
    if isinstance(node, ast.Constant) and not isinstance(node.value, bool):
        if isinstance(node.value, int):
            return Fraction(node.value)
        if isinstance(node.value, float):
            # decimal literals force float mode
            return float(node.value)
    elif isinstance(node, ast.BinOp) and type(node.op) in _SUPPORTED_OPERATORS:
        left, right = _recursive_eval(node.left), _recursive_eval(node.right)
        if isinstance(node.op, ast.Pow) and isinstance(right, Fraction) and right.denominator != 1:
            return float(left) ** float(right)
        return _SUPPORTED_OPERATORS[type(node.op)](left, right)
    elif isinstance(node, ast.UnaryOp) and type(node.op) in _SUPPORTED_OPERATORS:
        return _SUPPORTED_OPERATORS[type(node.op)](_recursive_eval(node.operand))
    elif isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and len(node.args) == 1 and not node.keywords:
        func = _SUPPORTED_FUNCTIONS.get(node.func.id)
        if func is not None:
            return func(_recursive_eval(node.args[0]))

    raise TypeError(f"Unsupported node type: {type(node).__name__}")


def parse_scalar(text) -> Scalar:
    """
    Safely evaluates a scalar expression such as "3/5", "0.25" or "sqrt(1257)/32".

    Integers and ratios stay exact (Fraction); decimals and irrational roots give floats.
    Numbers that are already int/Fraction/float pass through.
    """
    if isinstance(text, bool):
        raise ScalarParseError(f"Not a scalar: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, float):
        return text
    try:
        parsed_ast = ast.parse(str(text).strip(), mode='eval').body
        return _recursive_eval(parsed_ast)
    except (TypeError, SyntaxError, ValueError, ZeroDivisionError) as e:
        raise ScalarParseError(f"Invalid scalar expression {text!r}: {e}") from e


def parse_vector(text: str) -> Tuple[Scalar, ...]:
    """Comma separated scalars, e.g. "3/5,4/5"."""
    parts = [p for p in str(text).split(",") if p.strip()]
    if not parts:
        raise ScalarParseError(f"Empty vector {text!r}")
    return tuple(parse_scalar(p) for p in parts)


def format_scalar(value: Scalar):
    """JSON form: rationals as "p/q" strings, floats as numbers."""
    if isinstance(value, Fraction):
        return str(value)
    return float(value)


# --- small linear algebra, exact on Fractions and numpy-backed on floats ---

def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    return sum((a * b for a, b in zip(u, v)), Fraction(0) if _all_exact(u, v) else 0.0)


def norm_sq(u: Sequence[Scalar]) -> Scalar:
    return dot(u, u)


def _all_exact(*vectors: Sequence[Scalar]) -> bool:
    return all(isinstance(c, Fraction) for vec in vectors for c in vec)


def max_abs(u: Sequence[Scalar]) -> float:
    return max((abs(float(c)) for c in u), default=0.0)


def _row_echelon(rows: List[List[Fraction]]) -> List[int]:
    """Exact elimination; returns the pivot row indices of the original order."""
    pivots: List[int] = []
    basis: List[Tuple[int, List[Fraction]]] = []
    for idx, row in enumerate(rows):
        reduced = list(row)
        for col, brow in basis:
            if reduced[col] != 0:
                factor = reduced[col] / brow[col]
                reduced = [a - factor * b for a, b in zip(reduced, brow)]
        lead = next((k for k, a in enumerate(reduced) if a != 0), None)
        if lead is not None:
            basis.append((lead, reduced))
            pivots.append(idx)
    return pivots


def rank(rows: Sequence[Sequence[Scalar]], policy: ScalarPolicy) -> int:
    if not rows:
        return 0
    if policy.exact:
        return len(_row_echelon([[Fraction(a) for a in row] for row in rows]))
    matrix = np.array(rows, dtype=float)
    return int(np.linalg.matrix_rank(matrix, tol=policy.tol * max(1.0, np.abs(matrix).max())))


def solve(matrix: Sequence[Sequence[Scalar]], rhs: Sequence[Scalar], policy: ScalarPolicy) -> Vector:
    """Solve a square nonsingular system."""
    if not policy.exact:
        return tuple(float(v) for v in np.linalg.solve(np.array(matrix, dtype=float), np.array(rhs, dtype=float)))
    n = len(matrix)
    aug = [[Fraction(a) for a in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise np.linalg.LinAlgError("Singular matrix")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [a * inv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return tuple(row[n] for row in aug)


def cross3(u: Sequence[Scalar], v: Sequence[Scalar]) -> Vector:
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )
