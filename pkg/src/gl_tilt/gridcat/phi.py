"""Grid categories over finite-dimensional algebras as module categories.

A grid category over mod Lambda is equivalent to mod of a bound quiver algebra:

- an ``eta`` direction with the identity functor has only isomorphisms as arrows, so it
  collapses onto its last position;
- an ``eta`` direction with the zero functor is a linear A_p quiver, and a ``zero``
  direction a linear A_(p-1);
- ``absent`` directions, and ``killed`` ones with the zero functor, add nothing;
- a ``killed`` or ``zero`` direction with the identity functor only admits the zero object.

The bound quiver is Lambda copied at every kept index, with chain arrows between the
copies and the commutativity relations between them.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

from ..errors import ConfigurationError
from ..quivalg import AlgebraPresentation, Arrow, Path, Quiver, Representation, RepMorphism, global_dimension
from ..quivalg import ext_dim as quiver_ext_dim
from ..utils.logger import logger
from .findim import IDENTITY_FUNCTOR, FinDimDriver
from .functors import pi_rho
from .grid import ABSENT, ETA, KILLED, ZERO, GridMorphism, GridObject, GridShape, Index, step

Label = Tuple[int, ...]


def _label(beta: Label) -> str:
    return ",".join(map(str, beta))


@dataclass(eq=False)
class PhiTranslation:
    """The presentation of a grid category together with Phi and its inverse."""

    shape: GridShape
    driver: FinDimDriver
    presentation: AlgebraPresentation
    kept: Tuple[int, ...]
    collapsed: Tuple[int, ...]
    trivial: bool = False

    def vertex(self, v: str, beta: Label) -> str:
        return f"{v}|{_label(beta)}"

    def _labels(self) -> List[Label]:
        return list(itertools.product(*(range(1, self.shape.directions[i].length + 1) for i in self.kept)))

    def _full_index(self, beta: Label) -> Index:
        """The grid index read by Phi: last position in collapsed directions, 1 elsewhere."""
        index = [1] * self.shape.n
        for i in self.collapsed:
            index[i] = self.shape.directions[i].weight
        for i, c in zip(self.kept, beta):
            index[i] = c
        return tuple(index)

    def _reduced_shape(self) -> GridShape:
        shape = self.shape
        for i in self.collapsed:
            shape = shape.with_mode(i, ABSENT)
        return shape

    def _beta(self, index: Index) -> Label:
        return tuple(index[i] for i in self.kept)

    def to_module(self, g: GridObject) -> Representation:
        """Phi on objects."""
        if g.shape != self.shape:
            raise ConfigurationError(f"Grid of shape {g.shape} given to the translation of {self.shape}")
        if self.trivial:
            return Representation(self.presentation, {})
        quiver = self.driver.presentation.quiver
        dims, maps = {}, {}
        for beta in self._labels():
            index = self._full_index(beta)
            m = g.objects[index]
            for v in quiver.vertices:
                dims[self.vertex(v, beta)] = m.dims[v]
            for a in quiver.arrows:
                maps[f"{a.label}@{_label(beta)}"] = m.maps[a.label]
            for x, i in enumerate(self.kept):
                if beta[x] < 2:
                    continue
                f = g.arrow(i, index)
                for v in quiver.vertices:
                    maps[f"x{i}:{v}@{_label(beta)}"] = f.components[v]
        return Representation(self.presentation, dims, maps, check=False)

    def to_module_morphism(self, phi: GridMorphism) -> RepMorphism:
        source, target = self.to_module(phi.source), self.to_module(phi.target)
        if self.trivial:
            return RepMorphism(source, target, check=False)
        comps = {}
        for beta in self._labels():
            f = phi.components[self._full_index(beta)]
            for v in self.driver.presentation.quiver.vertices:
                comps[self.vertex(v, beta)] = f.components[v]
        return RepMorphism(source, target, comps, check=False)

    def from_module(self, rep: Representation) -> GridObject:
        """Phi inverse on objects: rebuild the kept directions, then pi_rho along the collapsed ones."""
        driver = self.driver
        if self.trivial:
            return GridObject(driver, self.shape, {a: driver.zero_object() for a in self.shape.indices()})
        quiver = driver.presentation.quiver
        reduced = self._reduced_shape()
        objects = {}
        for index in reduced.indices():
            beta = self._beta(index)
            dims = {v: rep.dims[self.vertex(v, beta)] for v in quiver.vertices}
            maps = {a.label: rep.maps[f"{a.label}@{_label(beta)}"] for a in quiver.arrows}
            objects[index] = driver.module(dims, maps)
        arrows = {}
        for i in self.kept:
            for index in reduced.arrow_indices(i):
                if index[i] < 2:
                    continue
                beta = self._beta(index)
                comps = {v: rep.maps[f"x{i}:{v}@{_label(beta)}"] for v in quiver.vertices}
                arrows[(i, index)] = RepMorphism(objects[step(index, i)], objects[index], comps, check=False)
        g = GridObject(driver, reduced, objects, arrows)
        for i in self.collapsed:
            g = pi_rho(g, i)
        return g

    def from_module_morphism(self, f: RepMorphism) -> GridMorphism:
        source, target = self.from_module(f.source), self.from_module(f.target)
        if self.trivial:
            return GridMorphism(source, target)
        comps = {}
        for index in self.shape.indices():
            beta = self._beta(index)
            pieces = {v: f.components[self.vertex(v, beta)] for v in self.driver.presentation.quiver.vertices}
            comps[index] = RepMorphism(source.objects[index], target.objects[index], pieces, check=False)
        return GridMorphism(source, target, comps)


def _classify(shape: GridShape, driver: FinDimDriver) -> Tuple[List[int], List[int], bool]:
    kept, collapsed, trivial = [], [], False
    for i, d in enumerate(shape.directions):
        identity = driver.functors[i] == IDENTITY_FUNCTOR
        if d.mode == ETA:
            (collapsed if identity else kept).append(i)
        elif d.mode == ZERO:
            kept.append(i)
            trivial = trivial or identity
        elif d.mode == KILLED:
            trivial = trivial or identity
    return kept, collapsed, trivial


@lru_cache(maxsize=64)
def to_matrix_algebra(shape: GridShape, driver: FinDimDriver) -> PhiTranslation:
    """The bound quiver presenting the grid category of ``shape`` over ``driver``.

    Raises:
        ConfigurationError: If the driver is not a FinDimDriver or has too few functors
    """
    if not isinstance(driver, FinDimDriver):
        raise ConfigurationError(f"Matrix algebra translation needs a FinDimDriver, got {type(driver).__name__}")
    if driver.n_functors < shape.n:
        raise ConfigurationError(f"Shape has {shape.n} directions but the driver only {driver.n_functors} functors")
    kept, collapsed, trivial = _classify(shape, driver)
    base = driver.presentation
    if trivial:
        logger.debug(f"Grid category {shape} is zero")
        presentation = AlgebraPresentation(Quiver([], []), [], base.field)
        return PhiTranslation(shape, driver, presentation, tuple(kept), tuple(collapsed), trivial=True)

    translation = PhiTranslation(shape, driver, None, tuple(kept), tuple(collapsed))
    labels = translation._labels()
    vertices, arrows, relations = [], [], []
    lengths = {i: shape.directions[i].length for i in kept}
    for beta in labels:
        tag = _label(beta)
        vertices.extend(translation.vertex(v, beta) for v in base.quiver.vertices)
        for a in base.quiver.arrows:
            arrows.append(Arrow(f"{a.label}@{tag}", translation.vertex(a.source, beta), translation.vertex(a.target, beta)))
        for x, i in enumerate(kept):
            if beta[x] >= 2:
                below = tuple(c - 1 if y == x else c for y, c in enumerate(beta))
                for v in base.quiver.vertices:
                    arrows.append(Arrow(f"x{i}:{v}@{tag}", translation.vertex(v, below), translation.vertex(v, beta)))

    def moved(beta: Label, x: int) -> Label:
        return tuple(c - 1 if y == x else c for y, c in enumerate(beta))

    for beta in labels:
        tag = _label(beta)
        for rel in base.relations:
            relations.append(
                tuple(
                    (c, Path(translation.vertex(p.source, beta), translation.vertex(p.target, beta), tuple(f"{lab}@{tag}" for lab in p.arrows)))
                    for c, p in rel
                )
            )
        for x, i in enumerate(kept):
            if beta[x] < 2:
                continue
            below = moved(beta, x)
            for a in base.quiver.arrows:
                start, end = translation.vertex(a.source, below), translation.vertex(a.target, beta)
                relations.append(
                    (
                        (1, Path(start, end, (f"x{i}:{a.source}@{tag}", f"{a.label}@{tag}"))),
                        (-1, Path(start, end, (f"{a.label}@{_label(below)}", f"x{i}:{a.target}@{tag}"))),
                    )
                )
            for y in range(x + 1, len(kept)):
                if beta[y] < 2:
                    continue
                j = kept[y]
                corner = moved(below, y)
                for v in base.quiver.vertices:
                    start, end = translation.vertex(v, corner), translation.vertex(v, beta)
                    relations.append(
                        (
                            (1, Path(start, end, (f"x{i}:{v}@{_label(moved(beta, y))}", f"x{j}:{v}@{tag}"))),
                            (-1, Path(start, end, (f"x{j}:{v}@{_label(below)}", f"x{i}:{v}@{tag}"))),
                        )
                    )
    translation.presentation = AlgebraPresentation(Quiver(vertices, arrows), relations, base.field)
    logger.debug(f"Grid category {shape} presented by {len(vertices)} vertices, {len(arrows)} arrows, {len(relations)} relations")
    return translation


def grid_ext(g: GridObject, h: GridObject, n: int) -> int:
    """dim Ext^n(g, h) in the grid category, computed on the Phi images."""
    translation = to_matrix_algebra(g.shape, g.driver)
    if translation.trivial:
        return 0
    return quiver_ext_dim(translation.to_module(g), translation.to_module(h), n)


def gldim_via_phi(shape: GridShape, driver: FinDimDriver) -> int:
    """Global dimension of the grid category; 0 for the zero category."""
    translation = to_matrix_algebra(shape, driver)
    if translation.trivial:
        return 0
    return global_dimension(translation.presentation)

