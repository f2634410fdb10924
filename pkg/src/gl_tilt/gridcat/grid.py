"""Grid shapes, grid objects and their morphisms.

Direction i of a shape is in one of four modes:

- ``eta``: a chain of length p_i closing up through F_i, whose p_i-fold composite is eta_i;
- ``zero``: a chain 0 -> M_1 -> ... -> M_{p_i - 1} of objects killed by eta_i;
- ``absent``: no chain in this direction;
- ``killed``: no chain, but every object is killed by eta_i.

Indices are 1-based tuples. A non-positive coordinate in an ``eta`` direction is read
through F_i: M_alpha = F_i M_(alpha + p_i e_i), and likewise for arrows. A non-positive
coordinate in a ``zero`` direction is the zero object.
"""

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from ..errors import ConfigurationError, DimensionMismatchError
from .driver import CategoryDriver, Mor, Obj
from .schema import GridObjectModel

ETA, ZERO, ABSENT, KILLED = "eta", "zero", "absent", "killed"
MODES = (ETA, ZERO, ABSENT, KILLED)

Index = Tuple[int, ...]


@dataclass(frozen=True)
class Direction:
    weight: int
    mode: str = ETA

    def __post_init__(self):
        if self.weight < 2:
            raise ConfigurationError(f"Weights must be at least 2, got {self.weight}")
        if self.mode not in MODES:
            raise ConfigurationError(f"Unknown direction mode '{self.mode}'")

    @property
    def length(self) -> int:
        if self.mode == ETA:
            return self.weight
        if self.mode == ZERO:
            return self.weight - 1
        return 1

    @property
    def has_chain(self) -> bool:
        return self.mode in (ETA, ZERO)

    @property
    def is_killed(self) -> bool:
        return self.mode in (ZERO, KILLED)


@dataclass(frozen=True)
class GridShape:
    directions: Tuple[Direction, ...]

    def __post_init__(self):
        object.__setattr__(self, "directions", tuple(self.directions))
        if not self.directions:
            raise ConfigurationError("A grid shape needs at least one direction")

    @classmethod
    def of(cls, weights: Sequence[int], modes: Optional[Sequence[str]] = None) -> "GridShape":
        modes = list(modes) if modes is not None else [ETA] * len(weights)
        if len(modes) != len(weights):
            raise ConfigurationError(f"{len(weights)} weights but {len(modes)} modes")
        return cls(tuple(Direction(int(p), m) for p, m in zip(weights, modes)))

    @property
    def n(self) -> int:
        return len(self.directions)

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(d.weight for d in self.directions)

    @property
    def modes(self) -> Tuple[str, ...]:
        return tuple(d.mode for d in self.directions)

    @property
    def lengths(self) -> Tuple[int, ...]:
        return tuple(d.length for d in self.directions)

    def indices(self) -> List[Index]:
        """The index set S, in lexicographic order."""
        return list(itertools.product(*(range(1, d.length + 1) for d in self.directions)))

    def killed(self) -> FrozenSet[int]:
        """Directions whose eta vanishes on every component."""
        return frozenset(i for i, d in enumerate(self.directions) if d.is_killed)

    def with_mode(self, i: int, mode: str) -> "GridShape":
        dirs = list(self.directions)
        dirs[i] = Direction(dirs[i].weight, mode)
        return GridShape(tuple(dirs))

    def arrow_indices(self, i: int) -> List[Index]:
        """Indices alpha with a stored arrow f^i_alpha: M_(alpha - e_i) -> M_alpha."""
        d = self.directions[i]
        if d.mode == ETA:
            return self.indices()
        if d.mode == ZERO:
            return [a for a in self.indices() if a[i] >= 2]
        return []

    def resolve(self, index: Sequence[int]) -> Tuple[Optional[Index], List[int]]:
        """Map an index to a stored one and the functors to apply to it.

        Returns (None, []) when the index denotes the zero object.
        """
        if len(index) != self.n:
            raise DimensionMismatchError(f"Index {tuple(index)} does not fit a shape with {self.n} directions")
        base, functors = [], []
        for j, (c, d) in enumerate(zip(index, self.directions)):
            if c > d.length:
                raise DimensionMismatchError(f"Index {tuple(index)} exceeds length {d.length} in direction {j}")
            if c < 1:
                if d.mode != ETA:
                    return None, []
                while c < 1:
                    c += d.weight
                    functors.append(j)
            base.append(c)
        return tuple(base), functors

    def __str__(self) -> str:
        return "[" + ", ".join(f"{d.mode}^(1/{d.weight})" for d in self.directions) + "]"


def step(index: Index, i: int, k: int = -1) -> Index:
    return tuple(c + k if j == i else c for j, c in enumerate(index))


class GridObject:
    """Objects M_alpha for alpha in S with arrows f^i_alpha: M_(alpha - e_i) -> M_alpha."""

    def __init__(
        self,
        driver: CategoryDriver,
        shape: GridShape,
        objects: Mapping[Index, Obj],
        arrows: Optional[Mapping[Tuple[int, Index], Mor]] = None,
    ):
        self.driver = driver
        self.shape = shape
        missing = [a for a in shape.indices() if a not in objects]
        if missing:
            raise DimensionMismatchError(f"Grid is missing objects at {missing[:3]}")
        extra = set(objects) - set(shape.indices())
        if extra:
            raise DimensionMismatchError(f"Objects given outside the index set: {sorted(extra)[:3]}")
        self.objects: Dict[Index, Obj] = dict(objects)
        self.arrows: Dict[Tuple[int, Index], Mor] = {}
        arrows = dict(arrows or {})
        for i in range(shape.n):
            for a in shape.arrow_indices(i):
                f = arrows.pop((i, a), None)
                if f is None:
                    f = driver.zero(self.object_at(step(a, i)), self.objects[a])
                self.arrows[(i, a)] = f
        if arrows:
            raise DimensionMismatchError(f"Arrows given for unknown positions {sorted(arrows)[:3]}")

    def object_at(self, index: Sequence[int]) -> Obj:
        base, functors = self.shape.resolve(index)
        if base is None:
            return self.driver.zero_object()
        return self.driver.apply_F_many(functors, self.objects[base])

    def arrow(self, i: int, index: Sequence[int]) -> Mor:
        """f^i at any index, non-positive coordinates included."""
        index = tuple(index)
        base, functors = self.shape.resolve(index)
        if base is None or (i, base) not in self.arrows:
            return self.driver.zero(self.object_at(step(index, i)), self.object_at(index))
        return self.driver.apply_F_morphism_many(functors, self.arrows[(i, base)])

    def chain_composite(self, i: int, index: Index, length: int) -> Mor:
        """f^i_index after ... after f^i_(index - (length - 1) e_i)."""
        driver = self.driver
        total = driver.identity(self.object_at(step(index, i, -length)))
        for k in range(length - 1, -1, -1):
            total = driver.compose(self.arrow(i, step(index, i, -k)), total)
        return total

    def is_zero(self) -> bool:
        return all(self.driver.is_zero(x) for x in self.objects.values())

    def describe(self) -> Dict[str, str]:
        return {",".join(map(str, a)): self.driver.describe(x) for a, x in sorted(self.objects.items())}

    def to_model(self) -> GridObjectModel:
        objects = {",".join(map(str, a)): self.driver.serialize(x) for a, x in sorted(self.objects.items())}
        arrows = {
            f"{i}:{','.join(map(str, a))}": [str(c) for c in self.driver.vectorize(f)] for (i, a), f in sorted(self.arrows.items())
        }
        return GridObjectModel(weights=list(self.shape.weights), modes=list(self.shape.modes), objects=objects, arrows=arrows)

    def __repr__(self) -> str:
        return f"GridObject(shape={self.shape}, objects={self.describe()})"


class GridMorphism:
    """Components phi_alpha: M_alpha -> N_alpha commuting with all arrows."""

    def __init__(self, source: GridObject, target: GridObject, components: Optional[Mapping[Index, Mor]] = None):
        if source.shape != target.shape:
            raise DimensionMismatchError(f"Shapes {source.shape} and {target.shape} differ")
        driver = source.driver
        self.source = source
        self.target = target
        components = dict(components or {})
        self.components: Dict[Index, Mor] = {}
        for a in source.shape.indices():
            f = components.get(a)
            self.components[a] = f if f is not None else driver.zero(source.objects[a], target.objects[a])

    @property
    def driver(self) -> CategoryDriver:
        return self.source.driver

    def component_at(self, index: Sequence[int]) -> Mor:
        base, functors = self.source.shape.resolve(index)
        if base is None:
            return self.driver.zero(self.source.object_at(index), self.target.object_at(index))
        return self.driver.apply_F_morphism_many(functors, self.components[base])

    def commutes(self) -> bool:
        driver = self.driver
        for i in range(self.source.shape.n):
            for a in self.source.shape.arrow_indices(i):
                lhs = driver.compose(self.target.arrow(i, a), self.component_at(step(a, i)))
                rhs = driver.compose(self.components[a], self.source.arrow(i, a))
                if not driver.equal(lhs, rhs):
                    return False
        return True

    def compose(self, other: "GridMorphism") -> "GridMorphism":
        """self after other."""
        driver = self.driver
        return GridMorphism(
            other.source,
            self.target,
            {a: driver.compose(self.components[a], other.components[a]) for a in self.components},
        )

    def is_zero(self) -> bool:
        return all(self.driver.is_zero_morphism(f) for f in self.components.values())

    def is_iso(self) -> bool:
        return all(self.driver.is_iso(f) for f in self.components.values())

    def is_mono(self) -> bool:
        return all(self.driver.is_mono(f) for f in self.components.values())

    def is_epi(self) -> bool:
        return all(self.driver.is_epi(f) for f in self.components.values())

    def vectorize(self) -> List:
        out = []
        for a in sorted(self.components):
            out.extend(self.driver.vectorize(self.components[a]))
        return out
