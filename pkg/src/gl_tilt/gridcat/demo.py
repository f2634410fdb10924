"""Built-in examples for the recollement identities, small enough to print in full."""

from typing import Callable, Dict, Tuple

from .. import exactla as la
from ..cohp1 import P1Sheaf, RationalPoint
from ..errors import ConfigurationError
from ..quivalg import AlgebraPresentation, Arrow, Quiver, Representation
from ..utils.logger import logger
from .analysis import adjunction_dims, canonical_sequence, recollement_identities, unit_counit_analysis
from .category import grid_direct_sum
from .cohp1_driver import CohP1Driver
from .driver import CategoryDriver, Obj
from .findim import IDENTITY_FUNCTOR, ZERO_FUNCTOR, FinDimDriver
from .functors import pi_lambda, pi_rho, point_grid
from .grid import ABSENT, GridShape
from .schema import GridDemoReport, IdentityCheck

Example = Tuple[CategoryDriver, Obj, Tuple[int, ...]]


def _a2_zero() -> Example:
    quiver = Quiver(["1", "2"], [Arrow("a", "1", "2")])
    presentation = AlgebraPresentation(quiver)
    K = presentation.field.domain
    projective = Representation(presentation, {"1": 1, "2": 1}, {"a": la.matrix([[K.one]], K)})
    return FinDimDriver(presentation, (ZERO_FUNCTOR,)), projective, (3,)


def _k_identity() -> Example:
    presentation = AlgebraPresentation(Quiver(["0"]))
    return FinDimDriver(presentation, (IDENTITY_FUNCTOR,)), Representation(presentation, {"0": 2}), (2,)


def _p1_point() -> Example:
    return CohP1Driver([RationalPoint.of((1, 0))]), P1Sheaf.line(0), (3,)


def _p1_two_points() -> Example:
    return CohP1Driver([RationalPoint.of((1, 0)), RationalPoint.of((0, 1))]), P1Sheaf.line(1), (2, 3)


DEMOS: Dict[str, Callable[[], Example]] = {
    "a2-zero": _a2_zero,
    "k-identity": _k_identity,
    "p1-point": _p1_point,
    "p1-two-points": _p1_two_points,
}


def grid_demo(name: str) -> GridDemoReport:
    """Run the recollement, unit/counit, canonical sequence and adjunction checks on a named example.

    Along each direction i, M is the base object with no chains, X = pi_lambda M + pi_rho M.

    Raises:
        ConfigurationError: If the name is not a built-in example
    """
    if name not in DEMOS:
        logger.error(f"Unknown grid example '{name}'")
        raise ConfigurationError(f"Unknown grid example '{name}'; choose from {sorted(DEMOS)}")
    driver, base, weights = DEMOS[name]()
    shape = GridShape.of(weights, [ABSENT] * len(weights))
    m = point_grid(driver, base, shape)
    report = GridDemoReport(example=name, driver=repr(driver), shape=[str(d.weight) for d in shape.directions])
    report.objects["M"] = m.to_model()

    for i in range(len(weights)):
        left, right = pi_lambda(m, i), pi_rho(m, i)
        x, _, _ = grid_direct_sum([left, right])
        report.objects[f"pi_lambda M along {i}"] = left.to_model()
        report.objects[f"pi_rho M along {i}"] = right.to_model()

        report.checks.extend(IdentityCheck(name=f"{c.name} along {i}", holds=c.holds) for c in recollement_identities(x, i))

        analysis = unit_counit_analysis(x, i)
        report.checks.extend(IdentityCheck(name=f"{c.name} along {i}", holds=c.holds) for c in analysis.checks)

        sequence = canonical_sequence(m, i)
        report.checks.append(IdentityCheck(name=f"canonical sequence along {i}", holds=sequence.matches))

        for adjunction, (lhs, rhs) in adjunction_dims(x, right, i).items():
            report.checks.append(IdentityCheck(name=f"{adjunction} along {i}", holds=lhs == rhs, detail=f"{lhs} = {rhs}"))

    logger.info(f"Grid example {name}: {sum(c.holds for c in report.checks)}/{len(report.checks)} identities hold")
    return report
