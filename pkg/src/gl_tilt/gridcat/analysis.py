"""Structural checks on grid categories: unit and counit, the canonical sequences,
cotilting constructions and global dimension data."""

import itertools
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from ..errors import ConditionFailure, ConfigurationError
from ..utils.logger import logger
from .category import grid_cokernel, grid_direct_sum, grid_hom_dim, grid_kernel, is_isomorphic
from .driver import CategoryDriver, Obj
from .findim import FinDimDriver
from .functors import (
    Delta,
    at,
    at_last_position,
    cokernel_of_tails,
    counit,
    delta,
    eta_morphism,
    iota,
    iota_lambda,
    iota_rho,
    kernel_of_heads,
    pi,
    pi_lambda,
    pi_rho,
    point_grid,
    relabel,
    truncated_chain,
    unit,
)
from .grid import ABSENT, ETA, KILLED, GridMorphism, GridObject, GridShape
from .phi import gldim_via_phi, grid_ext
from .schema import CotiltingCondition, CotiltingVerdict, GldimExperiment, IdentityCheck

Subset = FrozenSet[int]


@dataclass
class UnitCounitAnalysis:
    """Kernels and cokernels of the unit and counit next to the chains they should equal."""

    unit: GridMorphism
    counit: GridMorphism
    ker_unit: GridObject
    cok_unit: GridObject
    ker_counit: GridObject
    cok_counit: GridObject
    checks: List[IdentityCheck] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.checks)


def unit_counit_analysis(x: GridObject, i: int = 0) -> UnitCounitAnalysis:
    """Compare ker/cok of epsilon_X and phi_X along direction i with their chain descriptions.

    Expected: ker epsilon = iota iota_rho X, cok epsilon = iota (cok X_k -> X_p)_k,
    ker phi = iota (ker FX_p -> X_k)_k and cok phi = iota iota_lambda X.
    """
    eps, phi = unit(x, i), counit(x, i)
    ker_eps, _ = grid_kernel(eps)
    cok_eps, _ = grid_cokernel(eps)
    ker_phi, _ = grid_kernel(phi)
    cok_phi, _ = grid_cokernel(phi)
    expected = {
        "ker unit": (ker_eps, iota(iota_rho(x, i), i)),
        "cok unit": (cok_eps, iota(cokernel_of_tails(x, i), i)),
        "ker counit": (ker_phi, iota(kernel_of_heads(x, i), i)),
        "cok counit": (cok_phi, iota(iota_lambda(x, i), i)),
    }
    checks = [IdentityCheck(name=name, holds=is_isomorphic(got, want)) for name, (got, want) in expected.items()]
    for c in checks:
        if not c.holds:
            logger.warning(f"Unit/counit identity '{c.name}' fails for a grid of shape {x.shape}")
    return UnitCounitAnalysis(eps, phi, ker_eps, cok_eps, ker_phi, cok_phi, checks)


def recollement_identities(x: GridObject, i: int = 0) -> List[IdentityCheck]:
    """pi iota = 0, pi pi_lambda = pi pi_rho = id and iota_lambda iota = iota_rho iota = id along direction i.

    The zero-mode inputs are iota_lambda X and iota_rho X, the absent-mode input is pi X.
    """
    m = pi(x, i)
    checks = [
        IdentityCheck(name="pi pi_rho = id", holds=is_isomorphic(pi(pi_rho(m, i), i), m)),
        IdentityCheck(name="pi pi_lambda = id", holds=is_isomorphic(pi(pi_lambda(m, i), i), m)),
    ]
    for side, z in (("lambda", iota_lambda(x, i)), ("rho", iota_rho(x, i))):
        lifted = iota(z, i)
        checks.append(IdentityCheck(name=f"pi iota = 0 on iota_{side} X", holds=pi(lifted, i).is_zero()))
        checks.append(IdentityCheck(name=f"iota_lambda iota = id on iota_{side} X", holds=is_isomorphic(iota_lambda(lifted, i), z)))
        checks.append(IdentityCheck(name=f"iota_rho iota = id on iota_{side} X", holds=is_isomorphic(iota_rho(lifted, i), z)))
    for c in checks:
        if not c.holds:
            logger.warning(f"Recollement identity '{c.name}' fails for a grid of shape {x.shape}")
    return checks


def resolving_member(g: GridObject, i: int = 0) -> bool:
    """Whether every composite F M_p -> M_(p-1) along direction i is a monomorphism."""
    if g.shape.directions[i].mode != ETA:
        raise ConfigurationError(f"Direction {i} carries no eta chain")
    driver = g.driver
    p = g.shape.directions[i].weight
    return all(driver.is_mono(g.chain_composite(i, a, p - 1)) for a in g.shape.indices() if a[i] == p - 1)


@dataclass
class FourTermSequence:
    """0 -> kernel -> source --morphism--> target -> cokernel -> 0 with the expected outer terms."""

    morphism: GridMorphism
    kernel: GridObject
    cokernel: GridObject
    expected_kernel: GridObject
    expected_cokernel: GridObject

    @property
    def matches(self) -> bool:
        return is_isomorphic(self.kernel, self.expected_kernel) and is_isomorphic(self.cokernel, self.expected_cokernel)


def canonical_sequence(m: GridObject, i: int = 0) -> FourTermSequence:
    """0 -> iota Delta ker eta(M) -> pi_lambda M -> pi_rho M -> iota Delta cok eta(M) -> 0.

    The middle map is eta(M) in positions below p and the identity at p.
    """
    if m.shape.directions[i].mode != ABSENT:
        raise ConfigurationError(f"canonical_sequence needs direction {i} absent")
    driver = m.driver
    p = m.shape.directions[i].weight
    source, target = pi_lambda(m, i), pi_rho(m, i)
    comps = {}
    for a in source.shape.indices():
        base = m.objects[at(a, i, 1)]
        comps[a] = driver.identity(base) if a[i] == p else driver.eta(i, base)
    middle = GridMorphism(source, target, comps)
    ker, _ = grid_kernel(middle)
    cok, _ = grid_cokernel(middle)

    killed_shape = m.shape.with_mode(i, KILLED)
    eta_m = eta_morphism(m, i)
    ker_eta = relabel(grid_kernel(eta_m)[0], killed_shape)
    cok_eta = relabel(grid_cokernel(eta_m)[0], killed_shape)
    return FourTermSequence(middle, ker, cok, iota(Delta(ker_eta, i), i), iota(Delta(cok_eta, i), i))


def delta_epimorphism(y: GridObject, i: int = 0) -> FourTermSequence:
    """The epimorphism pi_rho Y -> iota Delta Y for Y killed by eta_i, with kernel (FY -> 0 ... 0 -> Y)."""
    if y.shape.directions[i].mode != KILLED:
        raise ConfigurationError(f"delta_epimorphism needs direction {i} killed")
    driver = y.driver
    p = y.shape.directions[i].weight
    source = pi_rho(y, i)
    target = iota(Delta(y, i), i)
    comps = {a: driver.identity(source.objects[a]) for a in source.shape.indices() if a[i] < p}
    morphism = GridMorphism(source, target, comps)
    ker, _ = grid_kernel(morphism)
    cok, _ = grid_cokernel(morphism)
    zero = GridObject(driver, target.shape, {a: driver.zero_object() for a in target.shape.indices()})
    return FourTermSequence(morphism, ker, cok, at_last_position(y, i), zero)


# cotilting constructions


def _subsets(n: int) -> List[Subset]:
    return [frozenset(c) for r in range(n + 1) for c in itertools.combinations(range(n), r)]


def _shape_for(weights: Sequence[int], killed: Subset) -> GridShape:
    return GridShape.of(weights, [KILLED if c in killed else ABSENT for c in range(len(weights))])


def lift_summand(driver: CategoryDriver, weights: Sequence[int], h: Subset, t: Obj, columns: Optional[Mapping[int, int]] = None) -> GridObject:
    """pi_rho^(complement) iota^H of delta^H(t), or of one truncated summand per column."""
    g = point_grid(driver, t, _shape_for(weights, h))
    for c in sorted(h):
        g = delta(g, c) if columns is None else truncated_chain(g, c, columns[c])
    for c in sorted(h):
        g = iota(g, c)
    for c in range(len(weights)):
        if c not in h:
            g = pi_rho(g, c)
    return g


def _check_family(driver: CategoryDriver, weights: Sequence[int], family: Mapping[Subset, Obj], max_degree: int) -> List[CotiltingCondition]:
    n = len(weights)
    failures: List[CotiltingCondition] = []
    zero = driver.zero_object()
    objects = {h: family.get(h, zero) for h in _subsets(n)}
    for h, t in objects.items():
        for c in sorted(h):
            if not driver.is_zero_morphism(driver.eta(c, t)):
                failures.append(CotiltingCondition(condition="membership", H=sorted(h), a=c, detail=f"eta_{c} does not vanish on T_H"))
    for h in _subsets(n):
        rest = [c for c in range(n) if c not in h]
        for r in range(len(rest) + 1):
            for j in map(frozenset, itertools.combinations(rest, r)):
                restricted = driver.restrict_object(objects[h], j)
                for a in rest:
                    if a in j:
                        continue
                    if not driver.is_mono(driver.eta(a, restricted)):
                        failures.append(CotiltingCondition(condition="injectivity", H=sorted(h), J=sorted(j), a=a))
                for degree in range(1, max_degree + 1):
                    dim = driver.ext_dim(restricted, objects[h | j], degree, killed=h | j)
                    if dim:
                        failures.append(CotiltingCondition(condition="ext", H=sorted(h), J=sorted(j), degree=degree, detail=f"dimension {dim}"))
    return failures


def build_cotilting_general(
    driver: CategoryDriver, weights: Sequence[int], family: Mapping[Subset, Obj], max_degree: int = 3
) -> GridObject:
    """The sum over H of pi_rho^(complement of H) iota^H delta^H(T_H).

    Missing T_H are read as zero.

    Raises:
        ConditionFailure: With one CotiltingCondition per violated hypothesis
    """
    family = {frozenset(h): t for h, t in family.items()}
    failures = _check_family(driver, weights, family, max_degree)
    if failures:
        logger.error(f"Cotilting hypotheses fail: {failures[0]}")
        raise ConditionFailure(f"{len(failures)} cotilting hypotheses fail, first: {failures[0]}", failures)
    parts = [lift_summand(driver, weights, h, t) for h, t in sorted(family.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))]
    if not parts:
        raise ConfigurationError("Empty family")
    total, _, _ = grid_direct_sum(parts)
    logger.info(f"Assembled a cotilting grid from {len(parts)} strata over {GridShape.of(weights)}")
    return total


def general_summands(
    driver: CategoryDriver, weights: Sequence[int], family_parts: Mapping[Subset, Sequence[Obj]]
) -> List[Tuple[str, GridObject]]:
    """Labelled summands: one per (H, column, summand of T_H)."""
    out = []
    for h in sorted((frozenset(k) for k in family_parts), key=lambda s: (len(s), sorted(s))):
        ordered = sorted(h)
        ranges = [range(1, weights[c]) for c in ordered]
        for t in family_parts[h]:
            for column in itertools.product(*ranges):
                grid = lift_summand(driver, weights, h, t, dict(zip(ordered, column)))
                out.append((f"H={ordered} c={list(column)} {driver.describe(t)}", grid))
    return out


def build_cotilting_one_weight(driver: CategoryDriver, weight: int, t: Obj, u: Obj, max_degree: int = 3) -> GridObject:
    """iota delta(T) + pi_rho(U) for T killed by eta and U with eta(U) mono.

    Raises:
        ConditionFailure: If T is not killed by eta, eta(U) is not mono, or
            Ext^(>0)(cok eta(U), T) does not vanish in the eta-killed subcategory
    """
    return build_cotilting_general(driver, [weight], {frozenset(): u, frozenset({0}): t}, max_degree)


def one_weight_summands(driver: CategoryDriver, weight: int, t_parts: Sequence[Obj], u_parts: Sequence[Obj]) -> List[Tuple[str, GridObject]]:
    return general_summands(driver, [weight], {frozenset(): u_parts, frozenset({0}): t_parts})


def check_cotilting(t: GridObject, test_family: Sequence[GridObject]) -> CotiltingVerdict:
    """Rigidity up to the global dimension, and cogeneration tested on ``test_family``.

    Cogeneration is bounded: every nonzero X in the family needs some Ext^n(X, T) != 0.

    Raises:
        ConfigurationError: If the grid is not over a FinDimDriver
    """
    if not isinstance(t.driver, FinDimDriver):
        raise ConfigurationError("check_cotilting computes Ext through a FinDimDriver only")
    gldim = gldim_via_phi(t.shape, t.driver)
    ext = [grid_ext(t, t, n) for n in range(1, gldim + 1)]
    uncovered = []
    for k, x in enumerate(test_family):
        if x.is_zero():
            continue
        if not any(grid_ext(x, t, n) for n in range(gldim + 1)):
            uncovered.append(k)
    verdict = CotiltingVerdict(gldim=gldim, self_ext=ext, rigid=not any(ext), uncovered=uncovered, tested=len(test_family))
    logger.info(f"Cotilting check: rigid={verdict.rigid}, {len(uncovered)} of {len(test_family)} test objects uncovered")
    return verdict


# global dimension data


def _vanishing_dim(driver: FinDimDriver, killed: Subset) -> Optional[int]:
    """gldim of the eta-killed subcategory for FinDim drivers, None when it is zero."""
    if driver.vanishing_subcategory_is_zero(killed):
        return None
    return gldim_via_phi(GridShape.of([2] * driver.n_functors, [KILLED if c in killed else ABSENT for c in range(driver.n_functors)]), driver)


def gldim_experiment(driver: FinDimDriver, weights: Sequence[int]) -> GldimExperiment:
    """Measured gldim of the eta grid category next to the bounds over all killed sets I.

    The lower bound is max over I of gldim A_I + |I|. The upper bound equals it when
    every F_i is an equivalence, and is max over I of gldim A_I + 2|I| otherwise.
    """
    if len(weights) != driver.n_functors:
        raise ConfigurationError(f"{len(weights)} weights for {driver.n_functors} functors")
    shape = GridShape.of(weights)
    measured = gldim_via_phi(shape, driver)
    lower = upper = 0
    equivalence = all(driver.functor_is_equivalence(c) for c in range(driver.n_functors))
    per_subset: Dict[str, int] = {}
    for s in _subsets(driver.n_functors):
        dim = _vanishing_dim(driver, s)
        if dim is None:
            continue
        per_subset[",".join(map(str, sorted(s)))] = dim
        lower = max(lower, dim + len(s))
        upper = max(upper, dim + (len(s) if equivalence else 2 * len(s)))
    record = GldimExperiment(
        weights=list(weights), functors=list(driver.functors), measured=measured, lower=lower, upper=upper, equivalence=equivalence, strata=per_subset
    )
    logger.info(f"gldim over {shape}: measured {measured}, bounds [{lower}, {upper}]")
    return record


def adjunction_dims(x: GridObject, y: GridObject, i: int = 0) -> Dict[str, Tuple[int, int]]:
    """Both sides of the four adjunctions of the recollement for eta grids X, Y.

    The pi triple is read on pi X and pi Y, the iota triple on Z = iota_lambda X and W = iota_rho Y.
    """
    px, py = pi(x, i), pi(y, i)
    z, w = iota_lambda(x, i), iota_rho(y, i)
    return {
        "pi_lambda -| pi": (grid_hom_dim(pi_lambda(px, i), y), grid_hom_dim(px, py)),
        "pi -| pi_rho": (grid_hom_dim(x, pi_rho(py, i)), grid_hom_dim(px, py)),
        "iota_lambda -| iota": (grid_hom_dim(iota_lambda(x, i), w), grid_hom_dim(x, iota(w, i))),
        "iota -| iota_rho": (grid_hom_dim(iota(z, i), y), grid_hom_dim(z, iota_rho(y, i))),
    }
