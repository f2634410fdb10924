from typing import Dict, List, Optional

from pydantic import BaseModel, Field


class InjectivityVerdict(BaseModel):
    I: List[str]
    J: List[str]
    j: str
    injective: bool
    reason: str


class ExtEntry(BaseModel):
    I: List[str]
    J: List[str]
    i: int = Field(..., ge=1, description="Ext degree")
    dim: int

    def __str__(self) -> str:
        return f"Ext^{self.i}(T_{{{','.join(self.I)}}}|, T_{{{','.join(self.I + self.J)}}}) = {self.dim}"


class SummandDescriptor(BaseModel):
    I: List[str]
    column: List[int] = Field(default_factory=list, description="One index in 1..p_i - 1 per i in I")
    summand: str
    multiplicity: int = Field(1, description="Product of the column indices")


class TiltingReport(BaseModel):
    variety: str
    weights: Dict[str, int] = Field(default_factory=dict)
    family: Dict[str, List[List[int]]] = Field(default_factory=dict)
    conditions1: List[InjectivityVerdict] = Field(default_factory=list)
    conditions2: List[ExtEntry] = Field(default_factory=list)
    rigidity: List[ExtEntry] = Field(default_factory=list)
    summands: List[SummandDescriptor] = Field(default_factory=list)
    total: Optional[int] = None
    gldim: Optional[int] = None
    gldim_witness: Optional[List[str]] = None
    twists: Dict[str, int] = Field(default_factory=dict)
    passed: bool = False

    def failures(self) -> List[str]:
        broken = [str(e) for e in self.rigidity + self.conditions2 if e.dim]
        broken += [f"T_{{{','.join(c.I)}}} on L_{{{','.join(c.J)}}} is not injective along {c.j}" for c in self.conditions1 if not c.injective]
        return broken
