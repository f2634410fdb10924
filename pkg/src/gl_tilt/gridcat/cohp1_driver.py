from typing import FrozenSet, List, Sequence

from .. import cohp1
from ..cohp1 import P1Morphism, P1Sheaf, RationalPoint
from ..cohp1.sheaf import ZERO
from ..errors import ConfigurationError
from ..exactla import FieldSpec, RATIONALS
from .driver import CategoryDriver


class CohP1Driver(CategoryDriver):
    """Split coherent sheaves on the projective line with one marked point per direction.

    F_i twists by -1 and eta_i multiplies by the linear form vanishing at the i-th
    point, so eta_i(M) is injective whenever M has no torsion at that point.
    """

    def __init__(self, points: Sequence[RationalPoint], field: FieldSpec = RATIONALS):
        reduced = [p.reduce(field) for p in points]
        if not reduced:
            raise ConfigurationError("CohP1Driver needs at least one marked point")
        self.points = reduced
        self.field = field
        self.n_functors = len(reduced)

    def __repr__(self) -> str:
        return f"CohP1Driver(points={[str(p) for p in self.points]}, field={self.field})"

    def zero_object(self) -> P1Sheaf:
        return ZERO

    def is_zero(self, x: P1Sheaf) -> bool:
        return x.is_zero()

    def same_object(self, x: P1Sheaf, y: P1Sheaf) -> bool:
        return x == y

    def serialize(self, x: P1Sheaf) -> dict:
        return x.to_dict()

    def source(self, f: P1Morphism) -> P1Sheaf:
        return f.source

    def target(self, f: P1Morphism) -> P1Sheaf:
        return f.target

    def hom_basis(self, x: P1Sheaf, y: P1Sheaf) -> List[P1Morphism]:
        return cohp1.hom_basis(x, y, self.field)

    def vectorize(self, f: P1Morphism) -> List:
        return f.coordinates()

    def compose(self, g: P1Morphism, f: P1Morphism) -> P1Morphism:
        return cohp1.compose(g, f)

    def identity(self, x: P1Sheaf) -> P1Morphism:
        return cohp1.identity(x, self.field)

    def zero(self, x: P1Sheaf, y: P1Sheaf) -> P1Morphism:
        return cohp1.zero(x, y, self.field)

    def add(self, f: P1Morphism, g: P1Morphism) -> P1Morphism:
        return f + g

    def scale(self, f: P1Morphism, c) -> P1Morphism:
        return f.scale(c)

    def _kernel(self, f: P1Morphism):
        return cohp1.kernel(f)

    def _cokernel(self, f: P1Morphism):
        return cohp1.cokernel(f)

    def factor_through_mono(self, mono: P1Morphism, f: P1Morphism):
        return cohp1.factor_through_mono(mono, f)

    def factor_through_epi(self, epi: P1Morphism, f: P1Morphism):
        return cohp1.factor_through_epi(epi, f)

    def is_iso(self, f: P1Morphism) -> bool:
        return f.source == f.target and cohp1.is_isomorphism(f)

    def direct_sum(self, parts: Sequence[P1Sheaf]):
        if not parts:
            return self.zero_object(), [], []
        return cohp1.direct_sum_data(list(parts), self.field)

    def apply_F(self, i: int, x: P1Sheaf) -> P1Sheaf:
        return x.twist(-1)

    def apply_F_morphism(self, i: int, f: P1Morphism) -> P1Morphism:
        return cohp1.twist_morphism(f, -1)

    def eta(self, i: int, x: P1Sheaf) -> P1Morphism:
        return cohp1.twist_and_eta(x, self.points[i], self.field)[1]

    def functor_is_equivalence(self, i: int) -> bool:
        return True

    def ext_dim(self, x: P1Sheaf, y: P1Sheaf, n: int, killed: FrozenSet[int] = frozenset()) -> int:
        """Ext on the projective line, or on the reduced points when directions are killed.

        Sheaves killed by a linear form are sums of simple skyscrapers at its point,
        a semisimple category, and two distinct points leave only the zero sheaf.
        """
        if n < 0:
            raise ValueError(f"Ext degree must be non-negative, got {n}")
        if not killed:
            return cohp1.ext_dim(x, y, n, self.field)
        if len({self.points[c] for c in killed}) > 1:
            return 0
        return cohp1.hom_dim(x, y) if n == 0 else 0
