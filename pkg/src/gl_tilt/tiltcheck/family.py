"""Tilting families T_I and the catalog of families for the supported configurations.

A family assigns to every nonempty stratum L_I a sum of line bundles: Picard classes on
the variety itself, degrees on smaller strata. On a 0-dimensional stratum every entry
stands for one copy of the structure sheaf, so only the number of entries matters.
"""

from dataclasses import dataclass
from typing import Dict, List, Mapping, Sequence, Tuple

from ..errors import ConfigurationError
from ..geom import (
    CURVE,
    HIRZEBRUCH,
    POINTS,
    PROJECTIVE,
    SNCConfig,
    intersection_number,
    require_valid,
    resolved_points,
    shift,
    stratum_info,
)
from ..geom.config import IndexSet
from ..utils.logger import logger


@dataclass(frozen=True)
class TiltingFamily:
    members: Tuple[Tuple[IndexSet, Tuple], ...]

    @classmethod
    def of(cls, members: Mapping[IndexSet, Sequence]) -> "TiltingFamily":
        return cls(tuple(sorted(((tuple(sorted(I)), tuple(v)) for I, v in members.items()), key=lambda kv: (len(kv[0]), kv[0]))))

    def as_dict(self) -> Dict[IndexSet, Tuple]:
        return dict(self.members)

    def __getitem__(self, I: Sequence[int]) -> Tuple:
        I = tuple(sorted(I))
        for key, values in self.members:
            if key == I:
                return values
        raise KeyError(I)

    def __contains__(self, I) -> bool:
        return tuple(sorted(I)) in self.as_dict()

    def index_sets(self) -> List[IndexSet]:
        return [I for I, _ in self.members]

    def with_member(self, I: Sequence[int], values: Sequence) -> "TiltingFamily":
        members = self.as_dict()
        members[tuple(sorted(I))] = tuple(values)
        return TiltingFamily.of(members)

    def to_dict(self, cfg: SNCConfig) -> Dict[str, List[List[int]]]:
        return {cfg.key(I): [list(v) if isinstance(v, tuple) else [v] for v in values] for I, values in self.members}


def parse_family(cfg: SNCConfig, data: Mapping[str, Sequence]) -> TiltingFamily:
    """Read a family keyed by comma separated labels.

    Raises:
        ConfigurationError: If a key names an empty stratum, a nonempty stratum is
            missing, or T_empty is empty
    """
    members = {}
    for key, values in data.items():
        I = cfg.index_set(key)
        stratum = stratum_info(cfg, I)
        if stratum.is_empty:
            logger.error(f"Family given on the empty stratum {{{key}}}")
            raise ConfigurationError(f"T_{{{key}}} is given but the stratum {{{key}}} is empty")
        if I:
            members[I] = tuple(_as_degree(cfg, key, v) for v in values)
        else:
            members[I] = tuple(cfg.variety.pic(v) for v in values)
    family = TiltingFamily.of(members)
    _require_complete(cfg, family)
    return family


def _as_degree(cfg: SNCConfig, key: str, value) -> int:
    if isinstance(value, int):
        return value
    if len(value) == 1:
        return int(value[0])
    raise ConfigurationError(f"T_{{{key}}} lives on a stratum of Picard rank 1, got class {list(value)}")


def _require_complete(cfg: SNCConfig, family: TiltingFamily):
    for I in cfg.subsets():
        if stratum_info(cfg, I).is_empty:
            continue
        if I not in family:
            raise ConfigurationError(f"The family is missing T_{{{cfg.key(I)}}}")
    if not family[()]:
        raise ConfigurationError("T_{} must not be empty")


def default_family(cfg: SNCConfig) -> TiltingFamily:
    """The catalog family of the configuration.

    - hyperplanes on P^d, the weighted projective line included: T_I = O_I(|I|) + ... + O_I(d)
    - lines and conics on P^2: T = O(-2) + O(-1) + O, O_L + O_L(1) on each curve
    - (a, 1) and (1, 0) curves on Sigma_m: T = O + O(1,0) + O(0,1) + O(1,1),
      O_L(a + m) + O_L(a + m + 1) on an (a, 1) curve and O_L + O_L(1) on a fiber

    Points strata carry one copy of their structure sheaf.

    Raises:
        ConfigurationError: If the configuration is outside the catalog
    """
    require_valid(cfg)
    v = cfg.variety
    members = {}
    if cfg.is_arrangement:
        d = v.d
        for I in cfg.subsets():
            if len(I) <= d:
                members[I] = [(n,) for n in range(d + 1)] if not I else list(range(len(I), d + 1))
        return TiltingFamily.of(members)

    members[()] = [(-2,), (-1,), (0,)] if v.kind == PROJECTIVE else [(0, 0), (1, 0), (0, 1), (1, 1)]
    for I in cfg.subsets():
        if not I:
            continue
        stratum = stratum_info(cfg, I)
        if stratum.kind == CURVE:
            members[I] = _catalog_curve(cfg, stratum.curve_class)
        elif stratum.kind == POINTS:
            members[I] = [0]
    return TiltingFamily.of(members)


def _catalog_curve(cfg: SNCConfig, c) -> List[int]:
    v = cfg.variety
    if v.kind == PROJECTIVE or c == (1, 0):
        return [0, 1]
    if v.kind == HIRZEBRUCH and c[1] == 1:
        return [c[0] + v.m, c[0] + v.m + 1]
    logger.error(f"No catalog family for curves of class {list(c)} on {v}")
    raise ConfigurationError(f"Curves of class {list(c)} on {v} are outside the catalog, supply a family")


def family_for(cfg: SNCConfig) -> TiltingFamily:
    """The family declared in the configuration, else the catalog one."""
    if cfg.family is not None:
        return parse_family(cfg, cfg.family)
    return default_family(cfg)


def shift_member(cfg: SNCConfig, family: TiltingFamily, I: Sequence[int], k: int) -> TiltingFamily:
    """Twist T_I by O(k) on its stratum; the ample class O(1,1) on Sigma_m itself."""
    I = tuple(sorted(I))
    values = family[I]
    if not I:
        return family.with_member(I, [shift(cfg.variety, c, k) for c in values])
    if stratum_info(cfg, I).kind == POINTS:
        return family
    return family.with_member(I, [x + k for x in values])


def twist_globally(cfg: SNCConfig, family: TiltingFamily, k: int) -> TiltingFamily:
    """Tensor every T_I with the k-th power of the ample generator restricted to L_I."""
    v = cfg.variety
    members = {}
    for I, values in family.members:
        stratum = stratum_info(cfg, I)
        if not I:
            members[I] = [shift(v, c, k) for c in values]
        elif stratum.kind == POINTS:
            members[I] = list(values)
        elif stratum.kind == CURVE and v.kind == HIRZEBRUCH:
            step = intersection_number(v, (1, 1), stratum.curve_class)
            members[I] = [x + k * step for x in values]
        elif stratum.kind == CURVE:
            step = stratum.curve_class[0]
            members[I] = [x + k * step for x in values]
        else:
            members[I] = [x + k for x in values]
    return TiltingFamily.of(members)


def point_labels(cfg: SNCConfig, I: Sequence[int]) -> List[str]:
    """Names of the points of a 0-dimensional stratum."""
    I = tuple(sorted(I))
    if len(I) == 2 and not cfg.is_arrangement:
        points = resolved_points(cfg, *I)
        if points:
            return list(points)
    return [cfg.key(I)]


def summand_names(cfg: SNCConfig, family: TiltingFamily, I: Sequence[int]) -> List[str]:
    """One name per indecomposable summand of T_I."""
    I = tuple(sorted(I))
    values = family[I]
    stratum = stratum_info(cfg, I)
    if not I:
        return [f"O({','.join(map(str, c))})" for c in values]
    if stratum.kind == POINTS:
        return [f"O_{p}" for _ in values for p in point_labels(cfg, I)]
    return [f"O_{{{cfg.key(I)}}}({x})" for x in values]
