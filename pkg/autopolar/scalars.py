# in autopolar/scalars.py
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field

Scalar = Union[Fraction, float]
Vector = Tuple[Scalar, ...]


class ScalarMode(str, Enum):
    RATIONAL = "rational"
    FLOAT = "float"


class ScalarPolicy(BaseModel):
    """How numbers are stored and compared during one computation.

    Rational mode never rounds and compares exactly. Float mode compares with
    |lhs - rhs| <= tol * max(1, |lhs|, |rhs|).
    """

    model_config = ConfigDict(frozen=True)

    mode: ScalarMode = Field(default=ScalarMode.RATIONAL, description="Exact rationals or floats with tolerance.")
    tol: float = Field(default=1e-9, ge=0, description="Relative tolerance, used only in float mode.")

    @property
    def exact(self) -> bool:
        return self.mode is ScalarMode.RATIONAL

    def coerce(self, value) -> Scalar:
        if self.exact:
            if isinstance(value, Fraction):
                return value
            if isinstance(value, str):
                return Fraction(value.strip())
            return Fraction(value)
        return float(value)

    def vector(self, coords: Iterable) -> Vector:
        return tuple(self.coerce(c) for c in coords)

    def is_zero(self, value: Scalar, scale: float = 1.0) -> bool:
        if self.exact:
            return value == 0
        return abs(value) <= self.tol * max(1.0, abs(scale))

    def sign(self, value: Scalar, scale: float = 1.0) -> int:
        if self.is_zero(value, scale):
            return 0
        return 1 if value > 0 else -1

    def eq(self, a: Scalar, b: Scalar) -> bool:
        if self.exact:
            return a == b
        return abs(a - b) <= self.tol * max(1.0, abs(a), abs(b))

    def ge(self, a: Scalar, b: Scalar) -> bool:
        return a >= b or self.eq(a, b)

    def le(self, a: Scalar, b: Scalar) -> bool:
        return a <= b or self.eq(a, b)

    def vectors_equal(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> bool:
        return len(u) == len(v) and all(self.eq(a, b) for a, b in zip(u, v))


RATIONAL = ScalarPolicy()
FLOAT = ScalarPolicy(mode=ScalarMode.FLOAT)


def infer_policy(values: Iterable, tol: float = 1e-9) -> ScalarPolicy:
    """Float mode as soon as one float appears among the (possibly nested) values."""
    stack = list(values)
    while stack:
        item = stack.pop()
        if isinstance(item, (list, tuple)):
            stack.extend(item)
        elif isinstance(item, float):
            return ScalarPolicy(mode=ScalarMode.FLOAT, tol=tol)
    return ScalarPolicy(mode=ScalarMode.RATIONAL, tol=tol)
