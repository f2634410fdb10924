from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Rational

from ..errors import ConfigurationError, UnsupportedQuiverError


@dataclass(frozen=True)
class Arrow:
    label: str
    source: str
    target: str


@dataclass(frozen=True, order=True)
class Path:
    """A path from ``source`` to ``target``; ``arrows`` are labels in traversal order.

    A path with no arrows is the trivial path (idempotent) at ``source``.
    """

    source: str
    target: str
    arrows: Tuple[str, ...] = ()

    def __post_init__(self):
        if not self.arrows and self.source != self.target:
            raise ValueError(f"Trivial path must start and end at one vertex, got {self.source}->{self.target}")

    @property
    def length(self) -> int:
        return len(self.arrows)

    def then(self, other: "Path") -> "Path":
        """The path that follows self and then other."""
        if self.target != other.source:
            raise ValueError(f"Cannot compose a path ending at {self.target} with one starting at {other.source}")
        return Path(self.source, other.target, self.arrows + other.arrows)

    def __str__(self) -> str:
        return "*".join(self.arrows) if self.arrows else f"e_{self.source}"


# A relation is a linear combination of parallel paths with exact coefficients
Relation = Tuple[Tuple[Rational, Path], ...]


def relation_endpoints(relation: Relation) -> Tuple[str, str]:
    """The common (source, target) of a relation.

    Raises:
        ConfigurationError: If the relation is empty or mixes endpoints
    """
    if not relation:
        raise ConfigurationError("Empty relation")
    ends = {(p.source, p.target) for _, p in relation}
    if len(ends) != 1:
        raise ConfigurationError(f"Relation is not homogeneous: endpoints {sorted(ends)}")
    return ends.pop()


@dataclass
class Quiver:
    vertices: List[str]
    arrows: List[Arrow] = field(default_factory=list)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ConfigurationError("Duplicate vertex labels")
        known = set(self.vertices)
        labels = set()
        for a in self.arrows:
            if a.source not in known or a.target not in known:
                raise ConfigurationError(f"Arrow {a.label} has an unknown endpoint ({a.source} -> {a.target})")
            if a.label in labels:
                raise ConfigurationError(f"Duplicate arrow label '{a.label}'")
            labels.add(a.label)

    def arrow(self, label: str) -> Arrow:
        for a in self.arrows:
            if a.label == label:
                return a
        raise KeyError(label)

    def arrows_from(self, vertex: str) -> List[Arrow]:
        return [a for a in self.arrows if a.source == vertex]

    def arrows_to(self, vertex: str) -> List[Arrow]:
        return [a for a in self.arrows if a.target == vertex]

    def path(self, labels: Sequence[str], source: Optional[str] = None) -> Path:
        """Build a path from arrow labels; ``source`` is needed for trivial paths."""
        if not labels:
            if source is None:
                raise ConfigurationError("A trivial path needs its vertex")
            return Path(source, source)
        arrows = [self.arrow(lab) for lab in labels]
        for a, b in zip(arrows, arrows[1:]):
            if a.target != b.source:
                raise ConfigurationError(f"Arrows {a.label} and {b.label} do not compose")
        if source is not None and source != arrows[0].source:
            raise ConfigurationError(f"Path {labels} does not start at {source}")
        return Path(arrows[0].source, arrows[-1].target, tuple(labels))

    def topological_order(self) -> List[str]:
        """Vertices so that every arrow goes forward.

        Raises:
            UnsupportedQuiverError: If the quiver has an oriented cycle
        """
        indegree = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indegree[a.target] += 1
        ready = [v for v in self.vertices if indegree[v] == 0]
        order = []
        while ready:
            v = ready.pop(0)
            order.append(v)
            for a in self.arrows_from(v):
                indegree[a.target] -= 1
                if indegree[a.target] == 0:
                    ready.append(a.target)
        if len(order) != len(self.vertices):
            raise UnsupportedQuiverError("Quiver has an oriented cycle; only acyclic quivers are supported")
        return order

    def is_acyclic(self) -> bool:
        try:
            self.topological_order()
        except UnsupportedQuiverError:
            return False
        return True


def enumerate_paths(q: Quiver, max_len: Optional[int] = None) -> Dict[Tuple[str, str], List[Path]]:
    """All paths of length at most ``max_len`` grouped by (source, target).

    With ``max_len=None`` the quiver must be acyclic and every path is listed. Within a
    group paths are sorted by length, then by arrow labels.
    """
    if max_len is None:
        q.topological_order()
        max_len = len(q.arrows)
    grouped: Dict[Tuple[str, str], List[Path]] = defaultdict(list)
    frontier = [Path(v, v) for v in q.vertices]
    for length in range(max_len + 1):
        nxt = []
        for p in frontier:
            grouped[(p.source, p.target)].append(p)
            if length < max_len:
                for a in q.arrows_from(p.target):
                    nxt.append(Path(p.source, a.target, p.arrows + (a.label,)))
        frontier = nxt
        if not frontier:
            break
    return {k: sorted(v, key=lambda p: (p.length, p.arrows)) for k, v in grouped.items()}
