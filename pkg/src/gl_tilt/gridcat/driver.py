"""The abelian category a grid is built over.

A driver bundles the operations the grid constructions need from a base category:
Hom bases, composition, kernels and cokernels, direct sums, and for each direction
i an exact functor ``F_i`` with a natural map ``eta_i: F_i -> id``.

Morphisms compose in the usual order: ``compose(g, f)`` is g after f.
"""

import random
from abc import ABC, abstractmethod
from typing import Any, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .. import exactla as la
from ..errors import DimensionMismatchError
from ..exactla import FieldSpec
from ..utils.logger import logger
from ..utils.settings import ToolkitSettings

Obj = Any
Mor = Any


class CategoryDriver(ABC):
    """Base category of a grid, with ``n_functors`` commuting pairs (F_i, eta_i)."""

    field: FieldSpec
    n_functors: int

    @property
    def K(self):
        return self.field.domain

    # objects

    @abstractmethod
    def zero_object(self) -> Obj:
        pass

    @abstractmethod
    def is_zero(self, x: Obj) -> bool:
        pass

    @abstractmethod
    def same_object(self, x: Obj, y: Obj) -> bool:
        """Strict equality of descriptors, not isomorphism."""

    def describe(self, x: Obj) -> str:
        return str(x)

    @abstractmethod
    def serialize(self, x: Obj) -> dict:
        """JSON-ready data of an object, as stored in grid reports."""

    # morphisms

    @abstractmethod
    def source(self, f: Mor) -> Obj:
        pass

    @abstractmethod
    def target(self, f: Mor) -> Obj:
        pass

    @abstractmethod
    def hom_basis(self, x: Obj, y: Obj) -> List[Mor]:
        pass

    @abstractmethod
    def vectorize(self, f: Mor) -> List:
        """Coordinates of f in a fixed ambient space depending only on its source and target."""

    @abstractmethod
    def compose(self, g: Mor, f: Mor) -> Mor:
        pass

    @abstractmethod
    def identity(self, x: Obj) -> Mor:
        pass

    @abstractmethod
    def zero(self, x: Obj, y: Obj) -> Mor:
        pass

    @abstractmethod
    def add(self, f: Mor, g: Mor) -> Mor:
        pass

    @abstractmethod
    def scale(self, f: Mor, c) -> Mor:
        pass

    @abstractmethod
    def _kernel(self, f: Mor) -> Tuple[Obj, Mor]:
        pass

    @abstractmethod
    def _cokernel(self, f: Mor) -> Tuple[Obj, Mor]:
        pass

    @abstractmethod
    def direct_sum(self, parts: Sequence[Obj]) -> Tuple[Obj, List[Mor], List[Mor]]:
        """The sum with its injections and projections, one per part."""

    # the functors F_i and the natural maps eta_i

    @abstractmethod
    def apply_F(self, i: int, x: Obj) -> Obj:
        pass

    @abstractmethod
    def apply_F_morphism(self, i: int, f: Mor) -> Mor:
        pass

    @abstractmethod
    def eta(self, i: int, x: Obj) -> Mor:
        """eta_i(x): F_i x -> x."""

    def functor_vanishes(self, i: int) -> bool:
        return False

    def functor_is_equivalence(self, i: int) -> bool:
        return False

    def ext_dim(self, x: Obj, y: Obj, n: int, killed: FrozenSet[int] = frozenset()) -> int:
        """dim Ext^n(x, y) computed in the full subcategory where every eta_c, c in ``killed``, vanishes."""
        raise NotImplementedError(f"{type(self).__name__} does not compute Ext")

    # derived operations

    def kernel(self, f: Mor) -> Tuple[Obj, Mor]:
        src = self.source(f)
        if self.is_zero(src):
            return src, self.identity(src)
        if self.is_zero_morphism(f):
            return src, self.identity(src)
        return self._kernel(f)

    def cokernel(self, f: Mor) -> Tuple[Obj, Mor]:
        tgt = self.target(f)
        if self.is_zero(tgt):
            return tgt, self.identity(tgt)
        if self.is_zero_morphism(f):
            return tgt, self.identity(tgt)
        return self._cokernel(f)

    def image(self, f: Mor) -> Tuple[Obj, Mor]:
        """The image of f as the kernel of its cokernel projection."""
        _, projection = self.cokernel(f)
        return self.kernel(projection)

    def is_zero_morphism(self, f: Mor) -> bool:
        zero = self.K.zero
        return all(c == zero for c in self.vectorize(f))

    def equal(self, f: Mor, g: Mor) -> bool:
        return self.vectorize(f) == self.vectorize(g)

    def is_mono(self, f: Mor) -> bool:
        return self.is_zero(self.kernel(f)[0])

    def is_epi(self, f: Mor) -> bool:
        return self.is_zero(self.cokernel(f)[0])

    def is_iso(self, f: Mor) -> bool:
        return self.is_mono(f) and self.is_epi(f)

    def apply_F_many(self, functors: Iterable[int], x: Obj) -> Obj:
        for i in functors:
            x = self.apply_F(i, x)
        return x

    def apply_F_morphism_many(self, functors: Iterable[int], f: Mor) -> Mor:
        for i in functors:
            f = self.apply_F_morphism(i, f)
        return f

    def combine(self, basis: Sequence[Mor], coeffs: Sequence, x: Obj, y: Obj) -> Mor:
        out = self.zero(x, y)
        for b, c in zip(basis, coeffs):
            if c:
                out = self.add(out, self.scale(b, c))
        return out

    def _solve(self, basis: List[Mor], images: List[List], target: List, x: Obj, y: Obj) -> Optional[Mor]:
        if not target:
            return self.zero(x, y)
        sol = la.solve(la.from_columns(images, len(target), self.K), target)
        if sol is None:
            return None
        return self.combine(basis, sol, x, y)

    def factor_through_mono(self, mono: Mor, f: Mor) -> Optional[Mor]:
        """Some h with mono after h equal to f, or None."""
        x, y = self.source(f), self.source(mono)
        basis = self.hom_basis(x, y)
        images = [self.vectorize(self.compose(mono, h)) for h in basis]
        return self._solve(basis, images, self.vectorize(f), x, y)

    def factor_through_epi(self, epi: Mor, f: Mor) -> Optional[Mor]:
        """Some h with h after epi equal to f, or None."""
        x, y = self.target(epi), self.target(f)
        basis = self.hom_basis(x, y)
        images = [self.vectorize(self.compose(h, epi)) for h in basis]
        return self._solve(basis, images, self.vectorize(f), x, y)

    def induced_on_cokernels(self, q_source: Mor, q_target: Mor, f: Mor) -> Mor:
        """The map h with h q_source = q_target f, for epimorphisms q_source and q_target.

        Raises:
            DimensionMismatchError: If f does not descend to the quotients
        """
        h = self.factor_through_epi(q_source, self.compose(q_target, f))
        if h is None:
            raise DimensionMismatchError("Morphism does not descend to the cokernels")
        return h

    def induced_on_kernels(self, i_source: Mor, i_target: Mor, f: Mor) -> Mor:
        """The map h with i_target h = f i_source, for monomorphisms i_source and i_target.

        Raises:
            DimensionMismatchError: If f does not restrict to the subobjects
        """
        h = self.factor_through_mono(i_target, self.compose(f, i_source))
        if h is None:
            raise DimensionMismatchError("Morphism does not restrict to the kernels")
        return h

    def restrict_object(self, x: Obj, directions: Iterable[int]) -> Obj:
        """x|_J: the iterated cokernel of eta_c for c in J."""
        for c in sorted(directions, reverse=True):
            x, _ = self.cokernel(self.eta(c, x))
        return x

    def is_isomorphic(self, x: Obj, y: Obj) -> bool:
        """Look for an invertible element among a seeded sample of Hom(x, y)."""
        if self.is_zero(x) or self.is_zero(y):
            return self.is_zero(x) and self.is_zero(y)
        basis = self.hom_basis(x, y)
        return any(self.is_iso(f) for f in self.sample_morphisms(basis, x, y))

    def sample_morphisms(self, basis: List[Mor], x: Obj, y: Obj) -> List[Mor]:
        """The basis itself followed by seeded random combinations of it."""
        if not basis:
            return []
        rng = random.Random(ToolkitSettings.random_seed())
        samples = list(basis)
        for _ in range(ToolkitSettings.iso_attempts()):
            coeffs = [self.field.element(rng.randint(-9, 9)) for _ in basis]
            samples.append(self.combine(basis, coeffs, x, y))
        logger.debug(f"Sampled {len(samples)} morphisms from a Hom space of dimension {len(basis)}")
        return samples
