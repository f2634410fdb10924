from typing import FrozenSet, List, Sequence, Tuple

from .. import exactla as la
from ..errors import ConfigurationError, DimensionMismatchError
from ..quivalg import (
    AlgebraPresentation,
    Representation,
    RepMorphism,
    cokernel,
    direct_sum,
    hom_space,
    identity_morphism,
    kernel,
)
from ..quivalg import ext_dim as quiver_ext_dim
from .driver import CategoryDriver

ZERO_FUNCTOR = "zero"
IDENTITY_FUNCTOR = "identity"
FUNCTORS = (ZERO_FUNCTOR, IDENTITY_FUNCTOR)


class FinDimDriver(CategoryDriver):
    """Finite-dimensional modules over a bound quiver algebra.

    Each direction carries either the zero functor with eta = 0 or the identity
    functor with eta = id. Both are exact and commute with everything.
    """

    def __init__(self, presentation: AlgebraPresentation, functors: Sequence[str] = (ZERO_FUNCTOR,)):
        unknown = [f for f in functors if f not in FUNCTORS]
        if unknown:
            raise ConfigurationError(f"Unsupported functors {unknown}; choose from {FUNCTORS}")
        self.presentation = presentation
        self.field = presentation.field
        self.functors: Tuple[str, ...] = tuple(functors)
        self.n_functors = len(self.functors)

    def __repr__(self) -> str:
        return f"FinDimDriver(vertices={self.presentation.quiver.vertices}, functors={list(self.functors)})"

    def module(self, dims, maps=None) -> Representation:
        return Representation(self.presentation, dims, maps)

    def zero_object(self) -> Representation:
        return Representation(self.presentation, {}, check=False)

    def is_zero(self, x: Representation) -> bool:
        return x.is_zero()

    def same_object(self, x: Representation, y: Representation) -> bool:
        return x.dims == y.dims and all(la.equal(x.maps[k], y.maps[k]) for k in x.maps)

    def describe(self, x: Representation) -> str:
        return "(" + ",".join(str(x.dims[v]) for v in self.presentation.quiver.vertices) + ")"

    def serialize(self, x: Representation) -> dict:
        return {
            "dims": dict(x.dims),
            "maps": {label: [[str(c) for c in row] for row in la.entries(m)] for label, m in sorted(x.maps.items())},
        }

    def source(self, f: RepMorphism) -> Representation:
        return f.source

    def target(self, f: RepMorphism) -> Representation:
        return f.target

    def hom_basis(self, x: Representation, y: Representation) -> List[RepMorphism]:
        return hom_space(x, y)

    def vectorize(self, f: RepMorphism) -> List:
        out = []
        for v in self.presentation.quiver.vertices:
            for row in la.entries(f.components[v]):
                out.extend(row)
        return out

    def compose(self, g: RepMorphism, f: RepMorphism) -> RepMorphism:
        if f.target.dims != g.source.dims:
            raise DimensionMismatchError(f"Cannot compose: {f.target} is not {g.source}")
        return g.compose(f)

    def identity(self, x: Representation) -> RepMorphism:
        return identity_morphism(x)

    def zero(self, x: Representation, y: Representation) -> RepMorphism:
        return RepMorphism(x, y, check=False)

    def add(self, f: RepMorphism, g: RepMorphism) -> RepMorphism:
        return RepMorphism(f.source, f.target, {v: la.add(f.components[v], g.components[v]) for v in f.components}, check=False)

    def scale(self, f: RepMorphism, c) -> RepMorphism:
        return RepMorphism(f.source, f.target, {v: la.scale(m, c) for v, m in f.components.items()}, check=False)

    def _kernel(self, f: RepMorphism):
        return kernel(f)

    def _cokernel(self, f: RepMorphism):
        return cokernel(f)

    def is_mono(self, f: RepMorphism) -> bool:
        return f.is_mono()

    def is_epi(self, f: RepMorphism) -> bool:
        return f.is_epi()

    def direct_sum(self, parts: Sequence[Representation]):
        if not parts:
            return self.zero_object(), [], []
        total = direct_sum(list(parts))
        K = self.K
        injections, projections = [], []
        offsets = {v: 0 for v in self.presentation.quiver.vertices}
        for part in parts:
            inj, proj = {}, {}
            for v, n in total.dims.items():
                d, start = part.dims[v], offsets[v]
                block = la.vstack([la.zeros(start, d, K), la.identity(d, K), la.zeros(n - start - d, d, K)], d, K)
                inj[v] = block
                proj[v] = block.transpose()
                offsets[v] += d
            injections.append(RepMorphism(part, total, inj, check=False))
            projections.append(RepMorphism(total, part, proj, check=False))
        return total, injections, projections

    def apply_F(self, i: int, x: Representation) -> Representation:
        return self.zero_object() if self.functors[i] == ZERO_FUNCTOR else x

    def apply_F_morphism(self, i: int, f: RepMorphism) -> RepMorphism:
        if self.functors[i] == ZERO_FUNCTOR:
            zero = self.zero_object()
            return RepMorphism(zero, zero, check=False)
        return f

    def eta(self, i: int, x: Representation) -> RepMorphism:
        if self.functors[i] == ZERO_FUNCTOR:
            return RepMorphism(self.zero_object(), x, check=False)
        return identity_morphism(x)

    def functor_vanishes(self, i: int) -> bool:
        return self.functors[i] == ZERO_FUNCTOR

    def functor_is_equivalence(self, i: int) -> bool:
        return self.functors[i] == IDENTITY_FUNCTOR

    def vanishing_subcategory_is_zero(self, killed: FrozenSet[int]) -> bool:
        """Whether every object with eta_c = 0 for c in ``killed`` is zero."""
        return any(self.functors[c] == IDENTITY_FUNCTOR for c in killed)

    def ext_dim(self, x: Representation, y: Representation, n: int, killed: FrozenSet[int] = frozenset()) -> int:
        if n < 0:
            raise ValueError(f"Ext degree must be non-negative, got {n}")
        if self.vanishing_subcategory_is_zero(killed):
            return 0
        return quiver_ext_dim(x, y, n)
