from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Coefficient = Union[int, str]
PointToken = Union[str, List[Coefficient]]


class VarietyInput(BaseModel):
    kind: Literal["p", "hirzebruch"] = Field(..., description="Projective space or Hirzebruch surface")
    d: Optional[int] = Field(None, ge=1, description="Dimension of P^d")
    m: Optional[int] = Field(None, ge=0, description="Twist of Sigma_m; P^1 x P^1 is m = 0")

    @model_validator(mode="after")
    def _check_parameters(self):
        if self.kind == "p" and self.d is None:
            raise ValueError("Projective space needs 'd'")
        if self.kind == "hirzebruch" and self.m is None:
            raise ValueError("A Hirzebruch surface needs 'm'")
        return self


class DivisorInput(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    label: str
    pic_class: Union[int, List[int]] = Field(..., alias="class", description="Degree on P^d or (a, b) on Sigma_m")
    weight: int = Field(..., ge=2)
    form: Optional[List[Coefficient]] = Field(None, description="Linear form of a hyperplane, one coefficient per coordinate")
    position: Optional[str] = Field(None, description="Opaque token distinguishing curves of equal class")


class SNCConfigModel(BaseModel):
    """JSON input of a weighted SNC configuration, optionally with its tilting family."""

    variety: VarietyInput
    divisors: List[DivisorInput] = Field(default_factory=list)
    intersections: Dict[str, List[PointToken]] = Field(
        default_factory=dict,
        description='Declared intersection points keyed "L1,L2"; a point is a token or its coordinates',
    )
    family: Optional[Dict[str, List[Union[int, List[int]]]]] = Field(
        None,
        description='T_I keyed by comma separated labels ("" for the whole variety)',
    )
    field: str = Field("rational", description="Ground field: rational or a prime q")

    @field_validator("intersections")
    @classmethod
    def _pairs_only(cls, value):
        for key in value:
            if len([p for p in key.split(",") if p.strip()]) != 2:
                raise ValueError(f"Intersection key '{key}' must name exactly two divisors")
        return value


class SNCFailure(BaseModel):
    check: str = Field(..., description="divisor, position, intersection or triple point")
    divisors: List[str] = Field(default_factory=list)
    detail: str

    def __str__(self) -> str:
        where = ",".join(self.divisors)
        return f"{self.check} [{where}]: {self.detail}" if where else f"{self.check}: {self.detail}"


class StratumModel(BaseModel):
    I: List[str]
    kind: str
    dim: int
    count: int = Field(1, description="Number of points of a 0-dimensional stratum")


class SNCVerdict(BaseModel):
    variety: str
    valid: bool
    failures: List[SNCFailure] = Field(default_factory=list)
    strata: List[StratumModel] = Field(default_factory=list)


class CohomologyRow(BaseModel):
    pic_class: List[int] = Field(..., alias="class")
    h: List[int]
    euler: int

    model_config = ConfigDict(populate_by_name=True)


class CohomologyTable(BaseModel):
    variety: str
    canonical: List[int]
    rows: List[CohomologyRow] = Field(default_factory=list)
