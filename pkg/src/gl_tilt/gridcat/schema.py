from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class GridFailure(BaseModel):
    condition: str = Field(..., description="membership, commutativity or cycle")
    direction: int
    other: Optional[int] = Field(None, description="Second direction of a failing square")
    index: List[int]
    detail: Optional[str] = None

    def __str__(self) -> str:
        where = f"directions ({self.direction}, {self.other})" if self.other is not None else f"direction {self.direction}"
        return f"{self.condition} fails in {where} at {tuple(self.index)}"


class GridVerdict(BaseModel):
    ok: bool
    failures: List[GridFailure] = Field(default_factory=list)

    @property
    def first_failure(self) -> Optional[GridFailure]:
        return self.failures[0] if self.failures else None


class GridObjectModel(BaseModel):
    """JSON view of a grid: its shape and the serialized object at each index."""

    weights: List[int]
    modes: List[str]
    objects: Dict[str, Dict[str, Any]]
    arrows: Dict[str, List[str]] = Field(default_factory=dict, description="Coordinates of f^i at each index, keyed \"i:index\"")


class IdentityCheck(BaseModel):
    name: str
    holds: bool
    detail: Optional[str] = None


class GridDemoReport(BaseModel):
    example: str
    driver: str
    shape: List[str]
    objects: Dict[str, GridObjectModel] = Field(default_factory=dict)
    checks: List[IdentityCheck] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.holds for c in self.checks)


class CotiltingCondition(BaseModel):
    condition: str = Field(..., description="membership, injectivity or ext")
    H: List[int] = Field(default_factory=list)
    J: List[int] = Field(default_factory=list)
    a: Optional[int] = None
    degree: Optional[int] = None
    detail: Optional[str] = None

    def __str__(self) -> str:
        where = f"H={self.H}, J={self.J}"
        if self.a is not None:
            where += f", a={self.a}"
        if self.degree is not None:
            where += f", degree {self.degree}"
        return f"{self.condition} fails at {where}"


class CotiltingVerdict(BaseModel):
    gldim: int
    self_ext: List[int]
    rigid: bool
    uncovered: List[int] = Field(default_factory=list, description="Positions in the test family not cogenerated")
    tested: int = 0

    @property
    def passed(self) -> bool:
        return self.rigid and not self.uncovered


class GldimExperiment(BaseModel):
    weights: List[int]
    functors: List[str]
    measured: int
    lower: int
    upper: int
    equivalence: bool
    strata: Dict[str, int] = Field(default_factory=dict, description="gldim of each nonzero eta-killed subcategory")

    @property
    def within_bounds(self) -> bool:
        return self.lower <= self.measured <= self.upper
