from typing import Dict, List, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

Coefficient = Union[int, str]


class SquidSpecModel(BaseModel):
    """Input of the squid generator: hyperplanes on P^d with weights.

    On P^1 the hyperplanes may be given as ``points`` (l0 : l1) instead of forms.
    """

    d: int = Field(..., ge=1)
    forms: Optional[List[List[Coefficient]]] = None
    points: Optional[List[List[Coefficient]]] = None
    weights: List[int] = Field(..., min_length=1)
    field: str = "rational"

    @model_validator(mode="after")
    def _check_forms(self):
        if (self.forms is None) == (self.points is None):
            raise ValueError("Give exactly one of 'forms' and 'points'")
        if self.points is not None and self.d != 1:
            raise ValueError("'points' only describe hyperplanes on P^1")
        count = len(self.forms if self.forms is not None else self.points)
        if count != len(self.weights):
            raise ValueError(f"{count} hyperplanes but {len(self.weights)} weights")
        if any(p < 2 for p in self.weights):
            raise ValueError("Weights must be at least 2")
        return self


class SquidVertexModel(BaseModel):
    name: str
    alpha: List[int]
    twist: int


class SquidArrowModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    label: str
    family: str
    source: str = Field(..., alias="from")
    target: str = Field(..., alias="to")


class RelationTermModel(BaseModel):
    coeff: str
    path: List[str]


class SquidQuiverModel(BaseModel):
    d: int
    weights: List[int]
    vertices: List[SquidVertexModel] = Field(default_factory=list)
    arrows: List[SquidArrowModel] = Field(default_factory=list)
    relations: List[List[RelationTermModel]] = Field(default_factory=list)
    relation_families: List[Optional[str]] = Field(
        default_factory=list, description="Family of each relation; null for commutativity relations"
    )


class BlockMismatch(BaseModel):
    source: str
    target: str
    paths: int
    homs: int


class CrosscheckReport(BaseModel):
    d: int
    weights: List[int]
    oracle: str = Field(..., description="grid_hom over coh P^1, or the closed form")
    path_total: int
    hom_total: int
    vertices: int
    summands: int = Field(..., description="Summand count of the assembled tilting object")
    mismatches: List[BlockMismatch] = Field(default_factory=list)
    closed_form_agrees: Optional[bool] = Field(None, description="grid_hom against the closed form, d = 1 only")

    @property
    def agrees(self) -> bool:
        return (
            self.path_total == self.hom_total
            and not self.mismatches
            and self.vertices == self.summands
            and self.closed_form_agrees is not False
        )


class SquidCounts(BaseModel):
    vertices: int
    arrows: Dict[str, int]
    relations: int
    families: Dict[str, int] = Field(default_factory=dict)
