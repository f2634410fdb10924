"""Weighted SNC configurations: validation, strata and restriction of line bundles.

Strata on surfaces are handled combinatorially. A curve stratum is a smooth rational
curve, so bundles on it are read through their degrees; a 0-dimensional stratum is a
set of declared (or, for two lines on P^2, computed) points.
"""

import dataclasses
import itertools
import json
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from pydantic import ValidationError
from sympy import Rational

from .. import exactla as la
from ..errors import ConfigurationError
from ..exactla import FieldSpec
from ..utils.logger import logger
from .schema import SNCConfigModel, SNCFailure, SNCVerdict, StratumModel
from .variety import (
    HIRZEBRUCH,
    PROJECTIVE,
    PicClass,
    VarietyModel,
    cohomology_dim,
    genus,
    intersection_number,
    p_cohomology,
    sub,
)

IndexSet = Tuple[int, ...]

VARIETY = "variety"
PROJECTIVE_STRATUM = "projective"
CURVE = "curve"
POINTS = "points"
EMPTY = "empty"


@dataclass(frozen=True)
class DivisorDatum:
    label: str
    pic_class: PicClass
    weight: int
    form: Optional[Tuple[Rational, ...]] = None
    position: Optional[str] = None

    def __post_init__(self):
        if self.weight < 2:
            raise ConfigurationError(f"Divisor {self.label} needs weight >= 2, got {self.weight}")
        if self.form is not None and all(c == 0 for c in self.form):
            raise ConfigurationError(f"Divisor {self.label} has the zero linear form")


@dataclass(frozen=True)
class SNCConfig:
    """A variety with weighted prime divisors and their declared intersection points.

    ``intersections`` maps an index pair ``(a, b)`` with ``a < b`` to the declared points.
    ``family`` keeps the raw tilting family of the input file, if any.
    """

    variety: VarietyModel
    divisors: Tuple[DivisorDatum, ...]
    intersections: Tuple[Tuple[IndexSet, Tuple[str, ...]], ...] = ()
    field: FieldSpec = FieldSpec()
    family: Optional[Dict[str, list]] = dataclasses.field(default=None, compare=False, hash=False)

    @property
    def n(self) -> int:
        return len(self.divisors)

    @property
    def weights(self) -> Tuple[int, ...]:
        return tuple(d.weight for d in self.divisors)

    @property
    def is_arrangement(self) -> bool:
        """True for hyperplanes on P^d."""
        return self.variety.kind == PROJECTIVE and all(d.pic_class == (1,) for d in self.divisors)

    def declared(self, a: int, b: int) -> Optional[Tuple[str, ...]]:
        key = (min(a, b), max(a, b))
        for pair, points in self.intersections:
            if pair == key:
                return points
        return None

    def labels(self, subset: Sequence[int]) -> List[str]:
        return [self.divisors[i].label for i in subset]

    def index_set(self, text: str) -> IndexSet:
        """Parse ``"L1,L2"`` into sorted divisor indices; ``""`` is the empty set.

        Raises:
            ConfigurationError: If a label is unknown
        """
        lookup = {d.label: i for i, d in enumerate(self.divisors)}
        result = []
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if part not in lookup:
                raise ConfigurationError(f"Unknown divisor label '{part}'")
            result.append(lookup[part])
        return tuple(sorted(set(result)))

    def key(self, subset: Sequence[int]) -> str:
        return ",".join(self.labels(subset))

    def subsets(self) -> List[IndexSet]:
        """All index sets, ordered by size and then lexicographically."""
        return [s for k in range(self.n + 1) for s in itertools.combinations(range(self.n), k)]


@dataclass(frozen=True)
class Stratum:
    I: IndexSet
    kind: str
    dim: int
    count: int = 1
    curve_class: Optional[PicClass] = None

    @property
    def is_empty(self) -> bool:
        return self.kind == EMPTY

    def to_model(self, cfg: SNCConfig) -> StratumModel:
        return StratumModel(I=cfg.labels(self.I), kind=self.kind, dim=self.dim, count=self.count)


def _coefficient(value, field_spec: FieldSpec):
    try:
        return field_spec.element(Rational(value))
    except (TypeError, ValueError) as e:
        raise ConfigurationError(f"Cannot read coefficient {value!r}") from e


def _projective_token(values: Sequence, field_spec: FieldSpec) -> str:
    """``(x0:...:xd)`` with the first nonzero coordinate scaled to 1."""
    K = field_spec.domain
    lead = next((c for c in values if c != K.zero), None)
    if lead is None:
        raise ConfigurationError("The zero vector is not a projective point")
    return "(" + ":".join(str(K.to_sympy(c / lead)) for c in values) + ")"


def _point_token(point, field_spec: FieldSpec) -> str:
    if isinstance(point, str):
        return point
    if len(point) == 1:
        return str(point[0])
    return _projective_token([_coefficient(c, field_spec) for c in point], field_spec)


def _line_meet(f: Sequence, g: Sequence, field_spec: FieldSpec) -> Optional[str]:
    """The intersection point of two lines on P^2, or None when they coincide."""
    K = field_spec.domain
    a = [field_spec.element(c) for c in f]
    b = [field_spec.element(c) for c in g]
    cross = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    if all(c == K.zero for c in cross):
        return None
    return _projective_token(cross, field_spec)


def config_from_model(model: SNCConfigModel) -> SNCConfig:
    """Turn a parsed input model into an SNCConfig.

    Raises:
        ConfigurationError: If a value does not fit the variety or the field
    """
    v = model.variety
    variety = VarietyModel.projective(v.d) if v.kind == PROJECTIVE else VarietyModel.hirzebruch(v.m)
    field_spec = FieldSpec.parse(model.field)
    divisors = []
    for d in model.divisors:
        form = None
        if d.form is not None:
            form = tuple(Rational(c) for c in d.form)
        divisors.append(DivisorDatum(d.label, variety.pic(d.pic_class), d.weight, form, d.position))
    cfg = SNCConfig(variety, tuple(divisors), (), field_spec, model.family)

    intersections = {}
    for key, points in model.intersections.items():
        pair = cfg.index_set(key)
        if len(pair) != 2:
            raise ConfigurationError(f"Intersection key '{key}' must name two distinct divisors")
        intersections[pair] = tuple(_point_token(p, field_spec) for p in points)
    return SNCConfig(variety, tuple(divisors), tuple(sorted(intersections.items())), field_spec, model.family)


def parse_config(data: Union[str, dict]) -> SNCConfig:
    """Parse a configuration from JSON text or a decoded dict.

    Raises:
        ConfigurationError: On malformed JSON or schema violations
    """
    try:
        if isinstance(data, str):
            model = SNCConfigModel.model_validate_json(data)
        else:
            model = SNCConfigModel.model_validate(data)
    except ValidationError as e:
        logger.error(f"Configuration does not match the schema: {e.error_count()} error(s)")
        raise ConfigurationError(f"Invalid configuration: {e}") from e
    return config_from_model(model)


def load_config(path: Union[str, Path]) -> SNCConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
        json.loads(text)
    except OSError as e:
        raise ConfigurationError(f"Cannot read configuration {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"{path} is not valid JSON: {e}") from e
    return parse_config(text)


def _is_prime_class(v: VarietyModel, c: PicClass) -> bool:
    if v.kind == PROJECTIVE:
        return c[0] >= 1
    a, b = c
    return c == (1, 0) or c == (-v.m, 1) or (b >= 1 and a >= 0)


def _divisor_failures(cfg: SNCConfig) -> List[SNCFailure]:
    v = cfg.variety
    failures = []
    seen = set()
    for d in cfg.divisors:
        if d.label in seen:
            failures.append(SNCFailure(check="divisor", divisors=[d.label], detail="duplicate label"))
        seen.add(d.label)
        if not _is_prime_class(v, d.pic_class):
            failures.append(SNCFailure(check="divisor", divisors=[d.label], detail=f"class {list(d.pic_class)} is not a prime divisor class"))
            continue
        if v.kind == PROJECTIVE and v.d != 2 and d.pic_class != (1,):
            failures.append(SNCFailure(check="divisor", divisors=[d.label], detail=f"only hyperplanes are supported on {v}"))
            continue
        if v.dim == 2 and genus(v, d.pic_class) != 0:
            failures.append(SNCFailure(check="divisor", divisors=[d.label], detail=f"curve of class {list(d.pic_class)} is not rational"))
        if d.form is not None:
            if v.kind != PROJECTIVE or d.pic_class != (1,):
                failures.append(SNCFailure(check="divisor", divisors=[d.label], detail="only hyperplanes carry a linear form"))
            elif len(d.form) != v.d + 1:
                failures.append(SNCFailure(check="divisor", divisors=[d.label], detail=f"form needs {v.d + 1} coefficients"))
        elif v.kind == PROJECTIVE and v.d != 2:
            failures.append(SNCFailure(check="divisor", divisors=[d.label], detail="hyperplane without a linear form"))
    return failures


def _position_failures(cfg: SNCConfig) -> List[SNCFailure]:
    """Every k <= d + 1 hyperplanes with known forms must have independent forms."""
    v = cfg.variety
    if v.kind != PROJECTIVE:
        return []
    K = cfg.field.domain
    lines = [i for i, d in enumerate(cfg.divisors) if d.form is not None and len(d.form) == v.d + 1]
    failures = []
    for k in range(2, min(len(lines), v.d + 1) + 1):
        for subset in itertools.combinations(lines, k):
            rows = [[cfg.field.element(c) for c in cfg.divisors[i].form] for i in subset]
            if la.rank(la.matrix(rows, K)) < k:
                failures.append(SNCFailure(check="position", divisors=cfg.labels(subset), detail=f"{k} hyperplanes are not in general position"))
    return failures


def resolved_points(cfg: SNCConfig, a: int, b: int) -> Optional[Tuple[str, ...]]:
    """The points of L_a meet L_b: declared ones, else computed for two lines on P^2."""
    declared = cfg.declared(a, b)
    if declared is not None:
        return declared
    da, db = cfg.divisors[a], cfg.divisors[b]
    v = cfg.variety
    if v.kind == PROJECTIVE and v.d == 2 and da.form is not None and db.form is not None:
        point = _line_meet(da.form, db.form, cfg.field)
        return (point,) if point is not None else None
    if intersection_number(v, da.pic_class, db.pic_class) == 0:
        return ()
    return None


def _intersection_failures(cfg: SNCConfig) -> List[SNCFailure]:
    v = cfg.variety
    if v.dim != 2:
        if cfg.intersections:
            logger.warning(f"Declared intersections are ignored on {v}")
        return []
    failures = []
    owners: Dict[str, List[IndexSet]] = {}
    for a, b in itertools.combinations(range(cfg.n), 2):
        labels = cfg.labels((a, b))
        da, db = cfg.divisors[a], cfg.divisors[b]
        if da.pic_class == db.pic_class and da.position is not None and da.position == db.position:
            failures.append(SNCFailure(check="position", divisors=labels, detail="divisors coincide"))
            continue
        expected = intersection_number(v, da.pic_class, db.pic_class)
        points = resolved_points(cfg, a, b)
        if points is None:
            failures.append(SNCFailure(check="intersection", divisors=labels, detail=f"{expected} intersection point(s) must be declared"))
            continue
        declared = cfg.declared(a, b)
        if declared is not None and v.kind == PROJECTIVE and da.form is not None and db.form is not None:
            computed = _line_meet(da.form, db.form, cfg.field)
            if computed is not None and all(p.startswith("(") for p in declared) and declared != (computed,):
                failures.append(SNCFailure(check="intersection", divisors=labels, detail=f"declared {list(declared)} but the lines meet at {computed}"))
        if len(points) != expected:
            failures.append(SNCFailure(check="intersection", divisors=labels, detail=f"{len(points)} point(s) declared, intersection number is {expected}"))
        if len(set(points)) != len(points):
            failures.append(SNCFailure(check="intersection", divisors=labels, detail="repeated point, the curves are tangent"))
        for p in set(points):
            owners.setdefault(p, []).append((a, b))
    for p, pairs in sorted(owners.items()):
        if len(pairs) > 1:
            involved = sorted({i for pair in pairs for i in pair})
            failures.append(SNCFailure(check="triple point", divisors=cfg.labels(involved), detail=f"{p} lies on {len(involved)} divisors"))
    return failures


@lru_cache(maxsize=256)
def _failures(cfg: SNCConfig) -> Tuple[SNCFailure, ...]:
    failures = _divisor_failures(cfg)
    if not failures:
        failures += _position_failures(cfg)
        failures += _intersection_failures(cfg)
    return tuple(failures)


def validate_snc(cfg: SNCConfig) -> SNCVerdict:
    """Check that the divisors form a simple normal crossing configuration.

    Args:
        cfg: The configuration to check

    Returns:
        The verdict with one entry per failing check and, when valid, the nonempty strata.
    """
    failures = list(_failures(cfg))
    verdict = SNCVerdict(variety=str(cfg.variety), valid=not failures, failures=failures)
    if verdict.valid:
        verdict.strata = [s.to_model(cfg) for s in (stratum_info(cfg, I) for I in cfg.subsets()) if not s.is_empty]
        logger.info(f"SNC configuration on {cfg.variety} with {cfg.n} divisor(s) is valid")
    else:
        for f in failures:
            logger.debug(f"SNC check failed: {f}")
    return verdict


def require_valid(cfg: SNCConfig):
    failures = _failures(cfg)
    if failures:
        logger.error(f"Configuration is not SNC: {failures[0]}")
        raise ConfigurationError(f"Configuration is not SNC: {'; '.join(str(f) for f in failures)}")


def stratum_info(cfg: SNCConfig, I: Sequence[int]) -> Stratum:
    """The stratum L_I, intersection of the divisors indexed by I.

    Raises:
        ConfigurationError: If the configuration is invalid
    """
    require_valid(cfg)
    I = tuple(sorted(I))
    v = cfg.variety
    if not I:
        kind = PROJECTIVE_STRATUM if v.kind == PROJECTIVE else VARIETY
        return Stratum(I, kind, v.dim)
    if cfg.is_arrangement:
        k = v.d - len(I)
        if k < 0:
            return Stratum(I, EMPTY, -1, 0)
        if k == 0:
            return Stratum(I, POINTS, 0, 1)
        return Stratum(I, PROJECTIVE_STRATUM, k)
    # surfaces
    if len(I) == 1:
        return Stratum(I, CURVE, 1, curve_class=cfg.divisors[I[0]].pic_class)
    if len(I) == 2:
        count = len(resolved_points(cfg, *I))
        return Stratum(I, POINTS, 0, count) if count else Stratum(I, EMPTY, -1, 0)
    return Stratum(I, EMPTY, -1, 0)


def _require_nonempty(stratum: Stratum, cfg: SNCConfig):
    if stratum.is_empty:
        raise ConfigurationError(f"Stratum {{{cfg.key(stratum.I)}}} is empty")


def _degree(value) -> int:
    if isinstance(value, int):
        return value
    if len(value) != 1:
        raise ConfigurationError(f"Expected a degree, got {list(value)}")
    return int(value[0])


def restrict_to_stratum(cfg: SNCConfig, bundle: Sequence[PicClass], I: Sequence[int]) -> List[int]:
    """Degrees on L_I of a sum of line bundles on the variety.

    On a 0-dimensional stratum only the rank survives; every summand becomes a 0.

    Raises:
        ConfigurationError: If the stratum is empty or is Sigma_m itself
    """
    stratum = stratum_info(cfg, I)
    _require_nonempty(stratum, cfg)
    v = cfg.variety
    classes = [v.pic(c) for c in bundle]
    if stratum.kind == POINTS:
        return [0] * len(classes)
    if stratum.kind == CURVE:
        return [intersection_number(v, c, stratum.curve_class) for c in classes]
    if v.kind == HIRZEBRUCH:
        raise ConfigurationError(f"Bundles on {v} are given by classes, not degrees")
    return [c[0] for c in classes]


def restrict_along(cfg: SNCConfig, values: Sequence, I: Sequence[int], K: Sequence[int]) -> List:
    """Restrict a sum of line bundles on L_I to the smaller stratum L_K, K containing I."""
    I, K = tuple(sorted(I)), tuple(sorted(K))
    if not set(I) <= set(K):
        raise ConfigurationError(f"Cannot restrict from {{{cfg.key(I)}}} to {{{cfg.key(K)}}}")
    if not I:
        if not K:
            return [cfg.variety.pic(c) for c in values]
        return restrict_to_stratum(cfg, values, K)
    target = stratum_info(cfg, K)
    _require_nonempty(target, cfg)
    if target.kind == POINTS:
        return [0] * len(values)
    return [_degree(x) for x in values]


def ext_dim_on_stratum(cfg: SNCConfig, I: Sequence[int], E: Sequence, F: Sequence, i: int) -> int:
    """dim Ext^i(E, F) over the stratum L_I for sums of line bundles.

    On the variety itself E and F are lists of Picard classes, on smaller strata lists
    of degrees. Over points only Hom survives: the product of ranks, once per point.

    Raises:
        ConfigurationError: If the stratum is empty
    """
    stratum = stratum_info(cfg, I)
    _require_nonempty(stratum, cfg)
    if i < 0:
        raise ValueError(f"Ext degree must be non-negative, got {i}")
    v = cfg.variety
    if stratum.kind == POINTS:
        return len(E) * len(F) * stratum.count if i == 0 else 0
    if not stratum.I:
        return sum(cohomology_dim(v, sub(v.pic(f), v.pic(e)), i) for e in E for f in F)
    return sum(p_cohomology(stratum.dim, _degree(f) - _degree(e), i) for e in E for f in F)
