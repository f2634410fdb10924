"""Picard lattices, intersection numbers and line-bundle cohomology.

Two families are supported: projective space P^d, whose Picard classes are degrees
``(n,)``, and Hirzebruch surfaces Sigma_m = P(O(-m) + O) over P^1, whose classes are
``(a, b)`` in the basis fiber F = (1, 0), section C = (0, 1) with F.F = 0, F.C = 1,
C.C = m. P^1 x P^1 is Sigma_0.
"""

from dataclasses import dataclass
from math import comb
from typing import Sequence, Tuple

from ..errors import ConfigurationError
from .schema import CohomologyRow, CohomologyTable

PROJECTIVE = "p"
HIRZEBRUCH = "hirzebruch"

PicClass = Tuple[int, ...]


@dataclass(frozen=True)
class VarietyModel:
    kind: str
    d: int = 2
    m: int = 0

    def __post_init__(self):
        if self.kind == PROJECTIVE:
            if self.d < 1:
                raise ConfigurationError(f"Projective space needs d >= 1, got {self.d}")
        elif self.kind == HIRZEBRUCH:
            if self.m < 0:
                raise ConfigurationError(f"Hirzebruch surfaces need m >= 0, got {self.m}")
        else:
            raise ConfigurationError(f"Unknown variety kind '{self.kind}'")

    @classmethod
    def projective(cls, d: int) -> "VarietyModel":
        return cls(PROJECTIVE, d=d)

    @classmethod
    def hirzebruch(cls, m: int) -> "VarietyModel":
        return cls(HIRZEBRUCH, d=2, m=m)

    @property
    def dim(self) -> int:
        return self.d if self.kind == PROJECTIVE else 2

    @property
    def pic_rank(self) -> int:
        return 1 if self.kind == PROJECTIVE else 2

    def pic(self, values: Sequence[int]) -> PicClass:
        """Validate and normalize a Picard class; bare integers are degrees on P^d."""
        if isinstance(values, int):
            values = (values,)
        c = tuple(int(v) for v in values)
        if len(c) != self.pic_rank:
            raise ConfigurationError(f"{self} has Picard rank {self.pic_rank}, got class {list(c)}")
        return c

    def __str__(self) -> str:
        return f"P^{self.d}" if self.kind == PROJECTIVE else f"Sigma_{self.m}"


def add(c1: PicClass, c2: PicClass) -> PicClass:
    return tuple(a + b for a, b in zip(c1, c2))


def sub(c1: PicClass, c2: PicClass) -> PicClass:
    return tuple(a - b for a, b in zip(c1, c2))


def ample(v: VarietyModel) -> PicClass:
    """The ample generator used for global twists: O(1), respectively F + C."""
    return (1,) if v.kind == PROJECTIVE else (1, 1)


def shift(v: VarietyModel, c: PicClass, k: int) -> PicClass:
    return tuple(a + k * b for a, b in zip(c, ample(v)))


def intersection_number(v: VarietyModel, c1: PicClass, c2: PicClass) -> int:
    """c1 . c2 on a surface.

    Raises:
        ConfigurationError: If v is not a surface
    """
    if v.dim != 2:
        raise ConfigurationError(f"Intersection numbers of divisors need a surface, got {v}")
    c1, c2 = v.pic(c1), v.pic(c2)
    if v.kind == PROJECTIVE:
        return c1[0] * c2[0]
    (a, b), (c, d) = c1, c2
    return a * d + b * c + v.m * b * d


def canonical_class(v: VarietyModel) -> PicClass:
    if v.kind == PROJECTIVE:
        return (-(v.d + 1),)
    return (v.m - 2, -2)


def genus(v: VarietyModel, c: PicClass) -> int:
    """Arithmetic genus of a curve of class c by adjunction, 2g - 2 = C.(C + K)."""
    if v.kind == PROJECTIVE and v.d == 1:
        return 0
    twice = intersection_number(v, c, add(v.pic(c), canonical_class(v))) + 2
    return twice // 2


def p_cohomology(d: int, n: int, i: int) -> int:
    """h^i(P^d, O(n)); d = 0 is a single point."""
    if i < 0:
        raise ValueError(f"Cohomological degree must be non-negative, got {i}")
    if d == 0:
        return 1 if i == 0 else 0
    if i == 0:
        return comb(n + d, d) if n >= 0 else 0
    if i == d:
        return p_cohomology(d, -n - d - 1, 0)
    return 0


def cohomology_dim(v: VarietyModel, c: PicClass, i: int) -> int:
    """h^i(v, O(c)).

    On Sigma_m the pushforward of O(aF + bC) to P^1 is the sum of O(a + jm) for
    0 <= j <= b; b = -1 has no cohomology and b <= -2 goes through Serre duality.
    """
    c = v.pic(c)
    if i < 0:
        raise ValueError(f"Cohomological degree must be non-negative, got {i}")
    if v.kind == PROJECTIVE:
        return p_cohomology(v.d, c[0], i)
    a, b = c
    if i > 2:
        return 0
    if b >= 0:
        if i == 2:
            return 0
        return sum(p_cohomology(1, a + j * v.m, i) for j in range(b + 1))
    if b == -1:
        return 0
    return cohomology_dim(v, sub(canonical_class(v), c), 2 - i)


def euler_characteristic(v: VarietyModel, c: PicClass) -> int:
    return sum((-1) ** i * cohomology_dim(v, c, i) for i in range(v.dim + 1))


def cohomology_table(v: VarietyModel, classes: Sequence) -> CohomologyTable:
    rows = [
        CohomologyRow(pic_class=list(c), h=[cohomology_dim(v, c, i) for i in range(v.dim + 1)], euler=euler_characteristic(v, c))
        for c in (v.pic(x) for x in classes)
    ]
    return CohomologyTable(variety=str(v), canonical=list(canonical_class(v)), rows=rows)
