from typing import List, Sequence, Tuple

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gl_tilt import exactla as la
from gl_tilt.cohp1 import P1Sheaf, RationalPoint
from gl_tilt.gridcat import (
    ABSENT,
    IDENTITY_FUNCTOR,
    ZERO,
    ZERO_FUNCTOR,
    CohP1Driver,
    FinDimDriver,
    GridMorphism,
    GridObject,
    GridShape,
    adjunction_dims,
    grid_cokernel,
    grid_direct_sum,
    grid_ext,
    grid_hom,
    iota,
    pi_lambda,
    pi_rho,
    point_grid,
    recollement_identities,
    unit_counit_analysis,
    validate_grid,
)
from gl_tilt.quivalg import AlgebraPresentation, Arrow, Quiver, Representation
from gl_tilt.quivalg.representation import RepMorphism

# (base object index, lift per direction: True for pi_rho, False for pi_lambda)
Part = Tuple[int, Tuple[bool, ...]]


def _lift(driver, base, sides: Sequence[bool], weights: Sequence[int]) -> GridObject:
    g = point_grid(driver, base, GridShape.of(weights, [ABSENT] * len(weights)))
    for i, rho in enumerate(sides):
        g = pi_rho(g, i) if rho else pi_lambda(g, i)
    return g


def _sum(driver, bases, parts: Sequence[Part], weights: Sequence[int]) -> GridObject:
    grids = [_lift(driver, bases[k], sides, weights) for k, sides in parts]
    return grid_direct_sum(grids)[0] if len(grids) > 1 else grids[0]


def random_grid(driver, bases, weights, source: Sequence[Part], target: Sequence[Part], coefficients: Sequence[int]):
    """The cokernel of a random map between sums of lifted objects, with that map's target."""
    a, b = _sum(driver, bases, source, weights), _sum(driver, bases, target, weights)
    basis = grid_hom(a, b)
    coeffs = [driver.field.element(c) for c in list(coefficients)[: len(basis)]]
    components = {index: driver.combine([m.components[index] for m in basis], coeffs, a.objects[index], b.objects[index]) for index in a.shape.indices()}
    cok, _ = grid_cokernel(GridMorphism(a, b, components))
    return cok, b


def parts(n_bases: int, n_directions: int):
    part = st.tuples(st.integers(min_value=0, max_value=n_bases - 1), st.tuples(*[st.booleans()] * n_directions))
    return st.lists(part, min_size=1, max_size=2)


coefficients = st.lists(st.integers(min_value=-2, max_value=2), min_size=64, max_size=64)


def _k(functor: str) -> Tuple[FinDimDriver, List[Representation]]:
    presentation = AlgebraPresentation(Quiver(["0"]))
    return FinDimDriver(presentation, (functor,)), [Representation(presentation, {"0": d}) for d in (1, 2)]


def _a2() -> Tuple[FinDimDriver, List[Representation]]:
    presentation = AlgebraPresentation(Quiver(["1", "2"], [Arrow("a", "1", "2")]))
    K = presentation.field.domain
    simple_1 = Representation(presentation, {"1": 1})
    simple_2 = Representation(presentation, {"2": 1})
    projective = Representation(presentation, {"1": 1, "2": 1}, {"a": la.matrix([[K.one]], K)})
    return FinDimDriver(presentation, (ZERO_FUNCTOR,)), [simple_1, simple_2, projective]


FINDIM = {"k-zero": lambda: _k(ZERO_FUNCTOR), "k-identity": lambda: _k(IDENTITY_FUNCTOR), "a2-zero": _a2}


def _assert_recollement(x: GridObject, y: GridObject):
    assert validate_grid(x).ok
    for i in range(x.shape.n):
        failed = [c.name for c in recollement_identities(x, i) if not c.holds]
        assert not failed, failed
        analysis = unit_counit_analysis(x, i)
        assert analysis.holds, [c.name for c in analysis.checks if not c.holds]
        for name, (lhs, rhs) in adjunction_dims(x, y, i).items():
            assert lhs == rhs, name


class TestFinDimRecollement:
    """Test the recollement identities on random grids over finite-dimensional modules."""

    @pytest.mark.parametrize("name", sorted(FINDIM))
    @settings(max_examples=50)
    @given(st.integers(min_value=2, max_value=4), parts(3, 1), parts(3, 1), coefficients)
    def test_random_grids(self, name, weight, source, target, coeffs):
        driver, bases = FINDIM[name]()
        source = [(k % len(bases), sides) for k, sides in source]
        target = [(k % len(bases), sides) for k, sides in target]
        x, y = random_grid(driver, bases, [weight], source, target, coeffs)
        _assert_recollement(x, y)


P1_POINTS = [RationalPoint.of((1, 0)), RationalPoint.of((0, 1))]
P1_BASES = [P1Sheaf.line(0), P1Sheaf.line(-1), P1Sheaf.point(P1_POINTS[0]), P1Sheaf.point(RationalPoint.of((1, 1)))]


class TestCohP1Recollement:
    """Test the recollement identities on random grids over sheaves on P^1."""

    @pytest.mark.slow
    @settings(max_examples=50)
    @given(st.data(), st.integers(min_value=1, max_value=2), coefficients)
    def test_random_grids(self, data, n_points, coeffs):
        weights = data.draw(st.lists(st.integers(min_value=2, max_value=3), min_size=n_points, max_size=n_points))
        source = data.draw(parts(len(P1_BASES), n_points))
        target = data.draw(parts(len(P1_BASES), n_points))
        driver = CohP1Driver(P1_POINTS[:n_points])
        x, y = random_grid(driver, P1_BASES, weights, source, target, coeffs)
        _assert_recollement(x, y)


def _chain(driver: FinDimDriver, weight: int, dims: Sequence[int], entries: Sequence[int]) -> GridObject:
    """A zero-mode grid 0 -> k^d_1 -> ... -> k^d_(p-1) with arrows filled from ``entries``."""
    presentation = driver.presentation
    field = presentation.field
    K = field.domain
    shape = GridShape.of([weight], [ZERO])
    modules = [Representation(presentation, {"0": d}) for d in dims]
    objects = {(a,): modules[a - 1] for a in range(1, weight)}
    supply = iter(list(entries) * 8)
    arrows = {}
    for a in range(2, weight):
        rows, cols = dims[a - 1], dims[a - 2]
        if rows and cols:
            m = la.matrix([[field.element(next(supply)) for _ in range(cols)] for _ in range(rows)], K)
        else:
            m = la.zeros(rows, cols, K)
        arrows[(0, (a,))] = RepMorphism(modules[a - 2], modules[a - 1], {"0": m})
    return GridObject(driver, shape, objects, arrows)


class TestExtTransport:
    """Test that iota preserves Ext between killed chains, computed on the module side."""

    @settings(max_examples=50)
    @given(
        st.integers(min_value=2, max_value=4),
        st.lists(st.integers(min_value=0, max_value=2), min_size=3, max_size=3),
        st.lists(st.integers(min_value=0, max_value=2), min_size=3, max_size=3),
        st.lists(st.integers(min_value=-1, max_value=1), min_size=4, max_size=4),
    )
    def test_iota_preserves_ext(self, weight, dims_x, dims_y, entries):
        driver, _ = _k(ZERO_FUNCTOR)
        x = _chain(driver, weight, dims_x, entries)
        y = _chain(driver, weight, dims_y, list(reversed(entries)))
        for n in range(3):
            assert grid_ext(iota(x, 0), iota(y, 0), n) == grid_ext(x, y, n)

    def test_simple_chains(self):
        driver, _ = _k(ZERO_FUNCTOR)
        top = _chain(driver, 3, [1, 0], [])
        bottom = _chain(driver, 3, [0, 1], [])
        # 0 -> S_2 -> P_1 -> S_1 -> 0 on the chain 1 -> 2
        assert grid_ext(iota(top, 0), iota(bottom, 0), 1) == grid_ext(top, bottom, 1) == 1
        assert grid_ext(iota(bottom, 0), iota(top, 0), 1) == 0
