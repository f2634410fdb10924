import dataclasses
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from sympy import Rational

from .. import exactla as la
from ..exactla import FieldSpec, RATIONALS
from ..utils.logger import logger
from .quiver import Arrow, Path, Quiver, Relation, enumerate_paths, relation_endpoints

Block = Tuple[str, str]


@dataclass(eq=False)
class AlgebraPresentation:
    """A bound quiver algebra kQ/I given by generators of the ideal I."""

    quiver: Quiver
    relations: List[Relation] = dataclasses.field(default_factory=list)
    field: FieldSpec = RATIONALS

    def __post_init__(self):
        for rel in self.relations:
            relation_endpoints(rel)
            for _, p in rel:
                # re-derive the path to make sure every label exists and composes
                self.quiver.path(p.arrows, p.source)

    @cached_property
    def algebra(self) -> "PathAlgebra":
        return PathAlgebra(self)

    @cached_property
    def opposite(self) -> "AlgebraPresentation":
        """The presentation of the opposite algebra: arrows and paths reversed."""
        arrows = [Arrow(a.label, a.target, a.source) for a in self.quiver.arrows]
        relations = [tuple((c, Path(p.target, p.source, tuple(reversed(p.arrows)))) for c, p in rel) for rel in self.relations]
        return AlgebraPresentation(Quiver(list(self.quiver.vertices), arrows), relations, self.field)


class PathAlgebra:
    """Normal forms for kQ/I, block by block.

    For each pair (u, v) the paths from u to v are reduced modulo the span of
    ``prefix * relation * suffix``. The paths left free by the row-reduced ideal span
    form the basis of e_v (kQ/I) e_u, and reduction subtracts the reduced rows.
    """

    def __init__(self, presentation: AlgebraPresentation):
        self.presentation = presentation
        self.quiver = presentation.quiver
        self.K = presentation.field.domain
        self.paths = enumerate_paths(self.quiver)
        self.basis: Dict[Block, List[Path]] = {}
        self._position: Dict[Block, Dict[Path, int]] = {}
        self._reducer: Dict[Block, Tuple[List[List], Tuple[int, ...]]] = {}
        self._build()

    def _relation_terms(self):
        element = self.presentation.field.element
        for rel in self.presentation.relations:
            s, t = relation_endpoints(rel)
            yield s, t, [(element(c), p) for c, p in rel]

    def _build(self):
        K = self.K
        ideal: Dict[Block, List[Dict[Path, object]]] = {}
        vertices = self.quiver.vertices
        for s, t, terms in self._relation_terms():
            for u in vertices:
                for prefix in self.paths.get((u, s), []):
                    for v in vertices:
                        for suffix in self.paths.get((t, v), []):
                            element = {}
                            for c, p in terms:
                                full = prefix.then(p).then(suffix)
                                element[full] = element.get(full, K.zero) + c
                            ideal.setdefault((u, v), []).append(element)

        for block, block_paths in self.paths.items():
            position = {p: i for i, p in enumerate(block_paths)}
            rows = []
            for element in ideal.get(block, []):
                row = [K.zero] * len(block_paths)
                for p, c in element.items():
                    row[position[p]] += c
                rows.append(row)
            span = la.matrix(rows, K, (len(rows), len(block_paths)))
            reduced, pivots = la.rref(span)
            pivot_set = set(pivots)
            normal = [p for i, p in enumerate(block_paths) if i not in pivot_set]
            self.basis[block] = normal
            self._position[block] = position
            self._reducer[block] = (la.entries(reduced)[: len(pivots)], pivots)
        logger.debug(f"Path algebra over {len(vertices)} vertices: dimension {self.dimension}")

    def block_dim(self, u: str, v: str) -> int:
        return len(self.basis.get((u, v), []))

    @property
    def dimensions(self) -> Dict[Block, int]:
        return {b: len(ps) for b, ps in self.basis.items() if ps}

    @property
    def dimension(self) -> int:
        return sum(len(ps) for ps in self.basis.values())

    def reduce(self, u: str, v: str, element: Mapping[Path, object]) -> List:
        """Coordinates of a combination of u->v paths in the normal basis of e_v A e_u."""
        K = self.K
        block = (u, v)
        position = self._position.get(block, {})
        vec = [K.zero] * len(position)
        for p, c in element.items():
            vec[position[p]] += c
        rows, pivots = self._reducer.get(block, ([], ()))
        for row, piv in zip(rows, pivots):
            c = vec[piv]
            if c:
                vec = [x - c * y for x, y in zip(vec, row)]
        normal = self.basis.get(block, [])
        return [vec[position[p]] for p in normal]

    def reduce_path(self, path: Path) -> List:
        return self.reduce(path.source, path.target, {path: self.K.one})

    def projective(self, u: str):
        """The indecomposable projective with top at u: vertex v carries e_v A e_u."""
        from .representation import Representation

        K = self.K
        dims = {v: self.block_dim(u, v) for v in self.quiver.vertices}
        maps = {}
        for a in self.quiver.arrows:
            cols = [self.reduce_path(p.then(Path(a.source, a.target, (a.label,)))) for p in self.basis.get((u, a.source), [])]
            maps[a.label] = la.from_columns(cols, dims[a.target], K)
        return Representation(self.presentation, dims, maps, check=False)

    def simple(self, u: str):
        from .representation import Representation

        dims = {v: int(v == u) for v in self.quiver.vertices}
        return Representation(self.presentation, dims, check=False)


def algebra_dimension(presentation: AlgebraPresentation) -> Tuple[int, Dict[Block, int]]:
    """Total dimension of kQ/I and the nonzero block dimensions keyed by (u, v).

    The (u, v) entry is dim e_v (kQ/I) e_u, the span of paths from u to v.

    Raises:
        UnsupportedQuiverError: If the quiver has an oriented cycle
    """
    algebra = presentation.algebra
    return algebra.dimension, algebra.dimensions


def linear_relation(quiver: Quiver, terms: Sequence[Tuple[object, Sequence[str]]], source: Optional[str] = None) -> Relation:
    """Relation from (coefficient, arrow labels) pairs."""
    return tuple((Rational(c), quiver.path(labels, source)) for c, labels in terms)
