"""Conditions of the tilting theorem for GL orders, assembly of the tilting object.

For disjoint index sets I, J the theorem asks for

1. T_I restricted to L_{I+J}(-L_j) -> T_I restricted to L_{I+J} to be injective for j outside I + J;
2. Ext^i over L_{I+J} of (T_I restricted, T_{I+J}) to vanish for i > 0.

Ext is taken over the stratum L_{I+J}. The J = {} entries of 2. are the rigidity of each T_I.
"""

import itertools
from math import prod
from typing import List, Optional, Tuple

from ..errors import ConditionFailure, ConfigurationError, TwistBoundError
from ..geom import POINTS, SNCConfig, ext_dim_on_stratum, require_valid, restrict_along, stratum_info
from ..geom.config import IndexSet
from ..utils.logger import logger
from ..utils.settings import ToolkitSettings
from .family import TiltingFamily, shift_member, summand_names
from .schema import ExtEntry, InjectivityVerdict, SummandDescriptor, TiltingReport


def _disjoint_pairs(n: int, nonempty_J: bool) -> List[Tuple[IndexSet, IndexSet]]:
    pairs = []
    for labels in itertools.product((0, 1, 2), repeat=n):
        I = tuple(i for i, x in enumerate(labels) if x == 1)
        J = tuple(i for i, x in enumerate(labels) if x == 2)
        if nonempty_J and not J:
            continue
        pairs.append((I, J))
    pairs.sort(key=lambda p: (len(p[0]) + len(p[1]), len(p[0]), p[0], p[1]))
    return pairs


def _injectivity(cfg: SNCConfig, I: IndexSet, J: IndexSet, j: int) -> InjectivityVerdict:
    K = tuple(sorted(I + J))
    here = stratum_info(cfg, K)
    there = stratum_info(cfg, tuple(sorted(K + (j,))))
    labels = cfg.divisors[j].label
    if here.kind == POINTS:
        injective = there.is_empty
        reason = f"{labels} misses the {here.count} point(s) of the stratum" if injective else f"{labels} passes through a point of the stratum"
    elif there.is_empty:
        injective, reason = True, f"locally free on a stratum of dimension {here.dim} that {labels} misses"
    else:
        injective = there.dim < here.dim
        reason = f"locally free on a stratum of dimension {here.dim}, {labels} cuts it in dimension {there.dim}"
        if not injective:
            reason = f"{labels} contains the stratum"
    return InjectivityVerdict(I=cfg.labels(I), J=cfg.labels(J), j=labels, injective=injective, reason=reason)


def _ext_entries(cfg: SNCConfig, family: TiltingFamily, I: IndexSet, J: IndexSet) -> List[ExtEntry]:
    K = tuple(sorted(I + J))
    stratum = stratum_info(cfg, K)
    if stratum.is_empty:
        return []
    source = restrict_along(cfg, family[I], I, K)
    target = family[K]
    return [
        ExtEntry(I=cfg.labels(I), J=cfg.labels(J), i=i, dim=ext_dim_on_stratum(cfg, K, source, target, i))
        for i in range(1, stratum.dim + 1)
    ]


def check_conditions(cfg: SNCConfig, family: TiltingFamily) -> TiltingReport:
    """Evaluate conditions 1 and 2 and the rigidity of every T_I.

    Condition 1 is decided structurally: T_I is a sum of line bundles on the stratum,
    so multiplication by the equation of L_j is injective exactly when L_j does not
    contain a component of the stratum, i.e. when cutting by L_j lowers the dimension
    or, on points, when L_j misses them.

    Raises:
        ConfigurationError: If the configuration is invalid or the family misses a stratum
    """
    require_valid(cfg)
    report = TiltingReport(
        variety=str(cfg.variety),
        weights={d.label: d.weight for d in cfg.divisors},
        family=family.to_dict(cfg),
    )
    for I, J in _disjoint_pairs(cfg.n, nonempty_J=False):
        K = tuple(sorted(I + J))
        if stratum_info(cfg, K).is_empty:
            continue
        if I not in family or K not in family:
            missing = I if I not in family else K
            logger.error(f"No T_{{{cfg.key(missing)}}} in the family")
            raise ConfigurationError(f"The family is missing T_{{{cfg.key(missing)}}}")
        entries = _ext_entries(cfg, family, I, J)
        if J:
            report.conditions2.extend(entries)
        else:
            report.rigidity.extend(entries)
        for j in range(cfg.n):
            if j not in K:
                report.conditions1.append(_injectivity(cfg, I, J, j))
    report.passed = not report.failures()
    report.gldim, witness = global_dimension(cfg)
    report.gldim_witness = cfg.labels(witness)
    if report.passed:
        logger.info(f"Conditions hold on {cfg.variety}: {len(report.conditions1)} injectivity, {len(report.conditions2)} Ext entries")
    else:
        logger.warning(f"Conditions fail on {cfg.variety}: {report.failures()[0]}")
    return report


def summand_count(cfg: SNCConfig, family: TiltingFamily) -> int:
    """Sum over I of |T_I| times the product of (p_i - 1), counted in indecomposables."""
    return sum(len(summand_names(cfg, family, I)) * prod(cfg.divisors[i].weight - 1 for i in I) for I in family.index_sets())


def assemble_tilting(cfg: SNCConfig, family: TiltingFamily, report: Optional[TiltingReport] = None) -> TiltingReport:
    """List the summands of the tilting object, one per (I, column, summand of T_I).

    Raises:
        ConditionFailure: If the conditions do not hold
    """
    report = report or check_conditions(cfg, family)
    if not report.passed:
        failures = report.failures()
        logger.error(f"Cannot assemble a tilting object: {failures[0]}")
        raise ConditionFailure(f"Conditions fail: {failures[0]}", failures)
    summands = []
    for I in family.index_sets():
        names = summand_names(cfg, family, I)
        columns = itertools.product(*(range(1, cfg.divisors[i].weight) for i in I))
        for column in columns:
            for name in names:
                summands.append(SummandDescriptor(I=cfg.labels(I), column=list(column), summand=name, multiplicity=prod(column)))
    report.summands = summands
    report.total = len(summands)
    logger.info(f"Assembled a tilting object with {report.total} summands on {cfg.variety}")
    return report


def _failing_into(cfg: SNCConfig, family: TiltingFamily, K: IndexSet) -> int:
    """Total Ext dimension of the condition 2 entries whose target is T_K."""
    total = 0
    for r in range(len(K)):
        for I in itertools.combinations(K, r):
            J = tuple(i for i in K if i not in I)
            total += sum(e.dim for e in _ext_entries(cfg, family, I, J))
    return total


def auto_twist(cfg: SNCConfig, family: TiltingFamily, bound: Optional[int] = None) -> Tuple[TiltingFamily, dict]:
    """Twist each T_I by the least k >= 0 that kills the condition 2 entries into it.

    Index sets are visited by size and then lexicographically; points strata never
    need a twist.

    Returns:
        The twisted family and the twists that were applied, keyed by label set.

    Raises:
        TwistBoundError: If some T_I needs more than ``bound`` twists
    """
    require_valid(cfg)
    bound = ToolkitSettings.max_twist() if bound is None else bound
    twists = {}
    for K in family.index_sets():
        if not K or stratum_info(cfg, K).kind == POINTS:
            continue
        k = 0
        while _failing_into(cfg, shift_member(cfg, family, K, k), K):
            k += 1
            if k > bound:
                logger.error(f"T_{{{cfg.key(K)}}} still fails after {bound} twists")
                raise TwistBoundError(f"T_{{{cfg.key(K)}}} needs more than {bound} twists")
        if k:
            family = shift_member(cfg, family, K, k)
            twists[cfg.key(K)] = k
            logger.debug(f"Twisted T_{{{cfg.key(K)}}} by {k}")
    return family, twists


def global_dimension(cfg: SNCConfig) -> Tuple[int, IndexSet]:
    """Maximum of dim L_I + |I| over the nonempty strata, with the first I reaching it."""
    require_valid(cfg)
    best, witness = -1, ()
    for I in cfg.subsets():
        stratum = stratum_info(cfg, I)
        if stratum.is_empty:
            continue
        if stratum.dim + len(I) > best:
            best, witness = stratum.dim + len(I), I
    return best, witness
