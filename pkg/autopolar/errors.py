# in autopolar/errors.py
from typing import Any, Dict, Optional


class AutopolarError(Exception):
    """Base class for every error raised by the package."""

    exit_code = 2

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        """Machine-readable form used by the command line front end."""
        payload: Dict[str, Any] = {"error": type(self).__name__, "message": self.message}
        for key, value in self.details.items():
            payload[key] = _jsonable(value)
        return payload


def _jsonable(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return str(value)


# --- Input errors (exit code 2) ---

class InputError(AutopolarError, ValueError):
    exit_code = 2


class OriginIncluded(InputError):
    pass


class OutsideAmbient(InputError):
    pass


class ZeroNormal(InputError):
    pass


class InvalidNormal(InputError):
    pass


class EmptyInterior(InputError):
    pass


class OutsideDomain(InputError):
    pass


class ZeroCoordinate(InputError):
    pass


class InvalidWeights(InputError):
    pass


class RidgeMismatch(InputError):
    def __init__(self, message: str, worst: float, at: Optional[Any] = None):
        super().__init__(message, worst=worst, at=at)
        self.worst = worst


class NotUnit(InputError):
    pass


class AngleViolation(InputError):
    def __init__(self, message: str, vertex: Any):
        super().__init__(message, vertex=vertex)
        self.vertex = vertex


class NotAdmissible(InputError):
    pass


class NoSphereIntersection(InputError):
    pass


class NegativeCoordinate(InputError):
    pass


class LengthConditionViolated(InputError):
    def __init__(self, message: str, index: int, length: float):
        super().__init__(message, index=index, length=length)
        self.index = index
        self.length = length


class ZeroWeightPair(InputError):
    pass


class RidgeNotAutopolar(InputError):
    pass


class DominationViolated(InputError):
    def __init__(self, message: str, witness: Any):
        super().__init__(message, witness=witness)
        self.witness = witness


class NotAutopolar(InputError):
    pass


class ScalarParseError(InputError):
    pass


class RecipeError(InputError):
    pass


# --- Capability errors (exit code 3) ---

class CapabilityError(AutopolarError):
    exit_code = 3


class DimensionTooLarge(CapabilityError):
    pass


class UnsupportedDimension(CapabilityError):
    pass


class BudgetExhausted(AutopolarError):
    """Numeric minimization ran out of evaluations; `best` is still an upper bound."""

    exit_code = 3

    def __init__(self, message: str, best: float):
        super().__init__(message, best=best)
        self.best = best
