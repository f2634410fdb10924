"""Squid quivers: End(T) of the canonical tilting object on weighted P^d.

Vertices are pairs (alpha, t) with alpha in prod_j {1..p_j}, I_alpha = {j : a_j != 1}
and |I_alpha| <= t <= d. Arrows:

- X^0..X^d from (alpha, t) to (alpha, t + 1) when both exist;
- x_j from (alpha, t) to (alpha + e_j, t) when 2 <= a_j <= p_j - 1;
- y_j from (alpha, t) to (alpha + e_j, t) when a_j = 1 and t > |I_alpha|.

Relations: every commutativity square whose two sides exist, l_i(X) = 0 at alpha for
i in I_alpha, and l_j(X) y_j = 0 for a_j = 1.
"""

import dataclasses
import itertools
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Rational

from ..cohp1 import RationalPoint
from ..errors import ConfigurationError
from ..exactla import RATIONALS, FieldSpec
from ..geom import DivisorDatum, SNCConfig, VarietyModel, require_valid
from ..quivalg import AlgebraPresentation, Arrow, Path, Quiver, Relation
from ..utils.logger import logger
from .schema import SquidCounts, SquidSpecModel

Alpha = Tuple[int, ...]


@dataclass(frozen=True)
class SquidSpec:
    """Hyperplanes l_1..l_n on P^d in general position with weights p_1..p_n."""

    d: int
    forms: Tuple[Tuple[Rational, ...], ...]
    weights: Tuple[int, ...]
    field: FieldSpec = RATIONALS

    def __post_init__(self):
        object.__setattr__(self, "forms", tuple(tuple(Rational(c) for c in f) for f in self.forms))
        object.__setattr__(self, "weights", tuple(int(p) for p in self.weights))
        if self.d < 1:
            raise ConfigurationError(f"A squid lives on P^d with d >= 1, got {self.d}")
        if not self.forms:
            raise ConfigurationError("A squid needs at least one hyperplane")
        if len(self.forms) != len(self.weights):
            raise ConfigurationError(f"{len(self.forms)} hyperplanes but {len(self.weights)} weights")
        for f in self.forms:
            if len(f) != self.d + 1:
                raise ConfigurationError(f"Form {[str(c) for c in f]} needs {self.d + 1} coefficients")

    @classmethod
    def from_points(cls, points: Sequence, weights: Sequence[int], field: FieldSpec = RATIONALS) -> "SquidSpec":
        """Points (l0 : l1) of P^1, each the zero of l1 X0 - l0 X1."""
        forms = []
        for p in points:
            point = p if isinstance(p, RationalPoint) else RationalPoint.of(p)
            forms.append((point.l1, -point.l0))
        return cls(1, tuple(forms), tuple(weights), field)

    @classmethod
    def from_model(cls, model: SquidSpecModel) -> "SquidSpec":
        field_spec = FieldSpec.parse(model.field)
        if model.points is not None:
            return cls.from_points([[Rational(c) for c in p] for p in model.points], model.weights, field_spec)
        return cls(model.d, tuple(tuple(Rational(c) for c in f) for f in model.forms), tuple(model.weights), field_spec)

    @property
    def n(self) -> int:
        return len(self.weights)

    def points(self) -> List[RationalPoint]:
        if self.d != 1:
            raise ConfigurationError(f"Hyperplanes of P^{self.d} are not points")
        return [RationalPoint(-f[1], f[0]) for f in self.forms]

    def to_config(self) -> SNCConfig:
        divisors = tuple(DivisorDatum(f"L{j + 1}", (1,), p, form) for j, (form, p) in enumerate(zip(self.forms, self.weights)))
        return SNCConfig(VarietyModel.projective(self.d), divisors, (), self.field)


@dataclass(frozen=True)
class SquidVertex:
    name: str
    alpha: Alpha
    twist: int

    @property
    def I(self) -> Tuple[int, ...]:
        return tuple(j for j, a in enumerate(self.alpha) if a != 1)


def _set_label(I: Sequence[int]) -> str:
    return "{" + ",".join(str(j + 1) for j in I) + "}"


@dataclass(eq=False)
class SquidQuiver:
    d: int
    weights: Tuple[int, ...]
    vertices: List[SquidVertex]
    arrows: List[Arrow]
    families: Dict[str, str]
    relations: List[Relation] = dataclasses.field(default_factory=list)
    relation_families: List[Optional[str]] = dataclasses.field(default_factory=list)
    field: FieldSpec = RATIONALS

    @cached_property
    def presentation(self) -> AlgebraPresentation:
        quiver = Quiver([v.name for v in self.vertices], list(self.arrows))
        return AlgebraPresentation(quiver, list(self.relations), self.field)

    def vertex(self, name: str) -> SquidVertex:
        for v in self.vertices:
            if v.name == name:
                return v
        raise KeyError(name)

    def kind(self, label: str) -> str:
        return self.families[label][0]

    def counts(self) -> SquidCounts:
        kinds = Counter(self.kind(a.label) for a in self.arrows)
        return SquidCounts(
            vertices=len(self.vertices),
            arrows={k: kinds.get(k, 0) for k in ("X", "x", "y")},
            relations=len(self.relations),
            families=relation_families(self),
        )


def relation_families(q: SquidQuiver) -> Dict[str, int]:
    """Instances of each non-commutativity relation, grouped by form, I_alpha and trailing y."""
    return dict(sorted(Counter(f for f in q.relation_families if f is not None).items()))


def _vertex_name(alpha: Alpha, t: int) -> str:
    return f"({','.join(map(str, alpha))})|{t}"


def _bump(alpha: Alpha, j: int) -> Alpha:
    return tuple(a + 1 if k == j else a for k, a in enumerate(alpha))


def _commutator(first: Sequence[str], second: Sequence[str], source: str, target: str) -> Relation:
    return ((Rational(1), Path(source, target, tuple(first))), (Rational(-1), Path(source, target, tuple(second))))


def build_pd_squid(spec: SquidSpec) -> SquidQuiver:
    """The squid of weighted P^d as a quiver with (possibly non-admissible) relations.

    Raises:
        ConfigurationError: If the hyperplanes are not in general position
    """
    require_valid(spec.to_config())
    d, weights = spec.d, spec.weights
    vertices: List[SquidVertex] = []
    exists = set()
    for alpha in itertools.product(*(range(1, p + 1) for p in weights)):
        size = sum(1 for a in alpha if a != 1)
        for t in range(size, d + 1):
            vertices.append(SquidVertex(_vertex_name(alpha, t), alpha, t))
            exists.add((alpha, t))

    arrows: List[Arrow] = []
    families: Dict[str, str] = {}

    def X(alpha: Alpha, t: int, a: int) -> Optional[str]:
        return f"X{a}:{_vertex_name(alpha, t)}" if (alpha, t + 1) in exists else None

    def step(alpha: Alpha, t: int, j: int) -> Optional[str]:
        """The x_j or y_j arrow leaving (alpha, t), if any."""
        if (alpha, t) not in exists or (_bump(alpha, j), t) not in exists:
            return None
        a = alpha[j]
        if 2 <= a <= weights[j] - 1:
            return f"x{j + 1}:{_vertex_name(alpha, t)}"
        if a == 1 and t > sum(1 for b in alpha if b != 1):
            return f"y{j + 1}:{_vertex_name(alpha, t)}"
        return None

    for v in vertices:
        I = _set_label(v.I)
        for a in range(d + 1):
            label = X(v.alpha, v.twist, a)
            if label:
                arrows.append(Arrow(label, v.name, _vertex_name(v.alpha, v.twist + 1)))
                families[label] = f"X{a}_{I}"
        for j in range(spec.n):
            label = step(v.alpha, v.twist, j)
            if label:
                arrows.append(Arrow(label, v.name, _vertex_name(_bump(v.alpha, j), v.twist)))
                families[label] = f"{label[0]}{j + 1}"

    relations: List[Relation] = []
    kinds: List[Optional[str]] = []

    def add(rel: Relation, family: Optional[str] = None):
        relations.append(rel)
        kinds.append(family)

    for v in vertices:
        alpha, t, u = v.alpha, v.twist, v.name
        up = _vertex_name(alpha, t + 1)
        # X^a X^b = X^b X^a
        if (alpha, t + 2) in exists:
            for a, b in itertools.combinations(range(d + 1), 2):
                add(_commutator([X(alpha, t, a), X(alpha, t + 1, b)], [X(alpha, t, b), X(alpha, t + 1, a)], u, _vertex_name(alpha, t + 2)))
        for j in range(spec.n):
            moved = _bump(alpha, j)
            # X^a s_j = s_j X^a
            s_here, s_up = step(alpha, t, j), step(alpha, t + 1, j)
            if s_here and s_up and X(moved, t, 0):
                for a in range(d + 1):
                    add(_commutator([X(alpha, t, a), s_up], [s_here, X(moved, t, a)], u, _vertex_name(moved, t + 1)))
            # s_j s_k = s_k s_j
            for k in range(j + 1, spec.n):
                first, second = step(alpha, t, j), step(alpha, t, k)
                if not (first and second):
                    continue
                then_k, then_j = step(moved, t, k), step(_bump(alpha, k), t, j)
                if then_k and then_j:
                    add(_commutator([first, then_k], [second, then_j], u, _vertex_name(_bump(moved, k), t)))

        if (alpha, t + 1) not in exists:
            continue
        I = _set_label(v.I)
        for i in v.I:
            terms = tuple((c, Path(u, up, (X(alpha, t, a),))) for a, c in enumerate(spec.forms[i]) if c != 0)
            add(terms, f"l{i + 1}(X_{I})")
        for j in range(spec.n):
            if alpha[j] != 1:
                continue
            y = step(alpha, t + 1, j)
            if not y:
                continue
            target = _vertex_name(_bump(alpha, j), t + 1)
            terms = tuple((c, Path(u, target, (X(alpha, t, a), y))) for a, c in enumerate(spec.forms[j]) if c != 0)
            add(terms, f"l{j + 1}(X_{I})y{j + 1}")

    q = SquidQuiver(d, weights, vertices, arrows, families, relations, kinds, spec.field)
    logger.info(f"Squid on P^{d} with weights {list(weights)}: {len(vertices)} vertices, {len(arrows)} arrows, {len(relations)} relations")
    return q


def build_weighted_line_squid(points: Sequence, weights: Sequence[int], field_spec: FieldSpec = RATIONALS) -> SquidQuiver:
    """The classical squid: X0, X1 into the body, then one leg y_i x ... x per point.

    Raises:
        ConfigurationError: If two points coincide or the counts differ
    """
    reduced = [(p if isinstance(p, RationalPoint) else RationalPoint.of(p)).reduce(field_spec) for p in points]
    if len(set(reduced)) != len(reduced):
        logger.error(f"Repeated point among {[str(p) for p in reduced]}")
        raise ConfigurationError("The points of a weighted projective line must be distinct")
    if len(reduced) != len(weights) or not reduced:
        raise ConfigurationError(f"{len(reduced)} points but {len(weights)} weights")
    n = len(weights)
    body = (1,) * n
    vertices = [SquidVertex("0", body, 0), SquidVertex("1", body, 1)]
    arrows = [Arrow("X0", "0", "1"), Arrow("X1", "0", "1")]
    families = {"X0": "X0_{}", "X1": "X1_{}"}
    relations: List[Relation] = []
    for i, (point, p) in enumerate(zip(reduced, weights)):
        for k in range(1, p):
            alpha = tuple(k + 1 if j == i else 1 for j in range(n))
            vertices.append(SquidVertex(f"{i + 1}:{k}", alpha, 1))
        y = f"y{i + 1}"
        arrows.append(Arrow(y, "1", f"{i + 1}:1"))
        families[y] = y
        for k in range(1, p - 1):
            label = f"x{i + 1}:{k}"
            arrows.append(Arrow(label, f"{i + 1}:{k}", f"{i + 1}:{k + 1}"))
            families[label] = f"x{i + 1}"
        leg = f"{i + 1}:1"
        terms = ((point.l1, Path("0", leg, ("X0", y))), (-point.l0, Path("0", leg, ("X1", y))))
        relations.append(tuple((c, path) for c, path in terms if c != 0))
    kinds = [f"l{i + 1}(X_{{}})y{i + 1}" for i in range(n)]
    return SquidQuiver(1, tuple(weights), vertices, arrows, families, relations, kinds, field_spec)
