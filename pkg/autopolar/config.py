# in autopolar/config.py
import os
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field

from .scalars import ScalarMode, ScalarPolicy

# Load environment variables from .env file
load_dotenv()


class CliConfig(BaseModel):
    scalar: ScalarMode = Field(default=ScalarMode.RATIONAL, description="Arithmetic for inputs without decimals.")
    tol: float = Field(default=1e-9, ge=0, description="Relative tolerance of float-mode comparisons.")
    seed: int = Field(default=0, ge=0, lt=2**64, description="Seed of every random draw.")
    budget: int = Field(default=10_000, gt=0, description="Objective evaluations per numeric dual.")
    selfdual_threshold: float = Field(default=1e-6, gt=0, description="Largest relative gap accepted as self-dual.")

    @property
    def policy(self) -> ScalarPolicy:
        return ScalarPolicy(mode=self.scalar, tol=self.tol)

    @classmethod
    def from_env(cls, **overrides) -> "CliConfig":
        """Defaults, then AUTOPOLAR_* environment variables, then explicit (non-None) overrides."""
        values = {}
        for field, cast in (("scalar", ScalarMode), ("tol", float), ("seed", int), ("budget", int), ("selfdual_threshold", float)):
            name = f"AUTOPOLAR_{field.upper()}"
            raw: Optional[str] = os.getenv(name)
            if raw is None or raw == "":
                continue
            try:
                values[field] = cast(raw.strip())
            except ValueError as e:
                raise ValueError(f"Invalid value for {name}: {raw!r}") from e
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
