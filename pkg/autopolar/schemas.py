# in autopolar/schemas.py
from enum import Enum
from typing import Annotated, List, Literal, Optional, Union

from pydantic import BaseModel, Field, TypeAdapter

# Rationals travel as "p/q" strings, floats as JSON numbers.
ScalarField = Union[str, float, int]
VectorField = List[ScalarField]


# --- Polyhedra ---

class SplitterDoc(BaseModel):
    i: int = Field(ge=0, description="Index of the coordinate on the left of x_i = mu * x_j (0-based).")
    j: int = Field(ge=0, description="Index of the coordinate on the right of x_i = mu * x_j (0-based).")
    mu: ScalarField = Field(description="Nonnegative slope mu.")


class HalfConeDoc(SplitterDoc):
    side: int = Field(default=1, ge=1, le=2, description="1: x_i <= mu x_j, 2: x_i >= mu x_j.")


class AmbientHalfCone(BaseModel):
    halfcone: HalfConeDoc


class InequalityDoc(BaseModel):
    normal: VectorField
    rhs: int = Field(ge=0, le=1, description="1 for affine constraints (a, x) >= 1, 0 for cone constraints.")


class PolyhedronDoc(BaseModel):
    dim: int = Field(ge=1, description="Ambient dimension d.")
    scalar: Literal["rational", "float"] = "rational"
    ambient: Union[Literal["orthant"], AmbientHalfCone] = "orthant"
    vertices: List[VectorField] = Field(default_factory=list)
    rays: List[VectorField] = Field(default_factory=list)
    inequalities: List[InequalityDoc] = Field(default_factory=list)


# --- Antinorm descriptors ---

class PiecewiseLinearDoc(BaseModel):
    kind: Literal["pl"] = "pl"
    normals: List[VectorField]


class ProductDoc(BaseModel):
    kind: Literal["product"] = "product"
    p: VectorField


class ExtensionDoc(BaseModel):
    kind: Literal["extension"] = "extension"
    splitter: SplitterDoc
    phi: "AntinormDoc"


class ConcatDoc(BaseModel):
    kind: Literal["concat"] = "concat"
    splitter: SplitterDoc
    f1: "AntinormDoc"
    f2: "AntinormDoc"


class RestrictedDualDoc(BaseModel):
    kind: Literal["dual"] = "dual"
    of: "AntinormDoc"
    over: HalfConeDoc
    budget: int = Field(default=10_000, gt=0)


AntinormDoc = Annotated[
    Union[PiecewiseLinearDoc, ProductDoc, ExtensionDoc, ConcatDoc, RestrictedDualDoc],
    Field(discriminator="kind"),
]

for _model in (ExtensionDoc, ConcatDoc, RestrictedDualDoc):
    _model.model_rebuild()

antinorm_adapter = TypeAdapter(AntinormDoc)


# --- Construction recipes ---

class LiftRecipe(BaseModel):
    construction: Literal["lift"] = Field("lift", alias="construct")
    splitter: SplitterDoc
    g1: PolyhedronDoc = Field(description="G1 inside one side of the splitter; its ambient names the side.")


class Algorithm1Recipe(BaseModel):
    construction: Literal["algorithm1"] = Field("algorithm1", alias="construct")
    a: VectorField = Field(description="Unit vector where the ridge meets the body.")
    inner: List[VectorField] = Field(default_factory=list, description="Vertices A_1..A_n between a and the x1-axis.")


class PnRecipe(BaseModel):
    construction: Literal["pn"] = Field("pn", alias="construct")
    n: int = Field(ge=3)
    choices: VectorField = Field(description="n-1 free parameters t_1..t_{n-1}.")


class ProductRecipe(BaseModel):
    construction: Literal["product"] = Field("product", alias="construct")
    p: VectorField


Recipe = Annotated[
    Union[LiftRecipe, Algorithm1Recipe, PnRecipe, ProductRecipe],
    Field(discriminator="construction"),
]

recipe_adapter = TypeAdapter(Recipe)


# --- Reports ---

class DistanceReport(BaseModel):
    value: ScalarField
    point: VectorField


class Witness(BaseModel):
    vertex: VectorField = Field(description="Vertex that violates a constraint of the other body.")
    normal: VectorField = Field(description="Normal a of the violated constraint (a, x) >= 1.")
    value: ScalarField = Field(description="(a, vertex), below 1 for a genuine violation.")
    side: Literal["body", "polar"] = Field(description="Which body the vertex belongs to.")


class AutopolarityCertificate(BaseModel):
    verdict: bool
    max_residual: float
    distance: DistanceReport
    witness: Optional[Witness] = None


class SelfDualityReport(BaseModel):
    verdict: bool
    max_rel: float
    mean_rel: float
    n_samples: int
    exhausted: int = Field(default=0, description="Samples whose numeric dual ran out of budget.")
    threshold: float


class RejectionReason(str, Enum):
    CLOSEST_POINT_MISS = "ClosestPointMiss"
    TRANSVERSAL_NOT_ORTHOGONAL = "TransversalNotOrthogonal"
    OBTUSE_DIHEDRAL = "ObtuseDihedral"
    RECONSTRUCTION_MISMATCH = "ReconstructionMismatch"


class CandidateReport(BaseModel):
    ij: List[int]
    mu: Optional[ScalarField] = None
    reason: Optional[RejectionReason] = None
    detail: Optional[str] = None


class FoundLifting(BaseModel):
    ij: List[int]
    mu: ScalarField
    reconstruction_equal: bool


class LiftingReport(BaseModel):
    candidates: List[CandidateReport]
    found: Optional[FoundLifting] = None
    survivors: List[FoundLifting] = Field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return self.found is not None


class SplittingPlaneReport(BaseModel):
    normal: VectorField
    spanned_by: List[str] = Field(description="Labels of the points spanning the plane with the origin.")
    reason: Optional[RejectionReason] = None
    detail: Optional[str] = None


class OrthogonalSplittingReport(BaseModel):
    verdict: bool
    accepted: List[SplittingPlaneReport]
    rejected: List[SplittingPlaneReport] = Field(default_factory=list)


class PropertyCheck(BaseModel):
    name: str
    passed: bool
    worst: float = Field(description="Worst residual observed; the sign convention is per check.")
    detail: Optional[str] = None


class PropertyReport(BaseModel):
    verdict: bool
    checks: List[PropertyCheck]
    equality_ray: Optional[List[float]] = None


class ComparisonReport(BaseModel):
    verdict: bool = Field(description="False only when f >= g on samples but they disagree somewhere.")
    dominates: bool
    max_gap: float
