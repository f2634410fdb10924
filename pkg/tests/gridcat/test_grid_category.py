import pytest

from gl_tilt.cohp1 import P1Sheaf, RationalPoint
from gl_tilt.errors import ConditionFailure, ConfigurationError
from gl_tilt.gridcat import (
    ABSENT,
    DEMOS,
    IDENTITY_FUNCTOR,
    KILLED,
    ZERO_FUNCTOR,
    CohP1Driver,
    FinDimDriver,
    GridShape,
    adjunction_dims,
    build_cotilting_one_weight,
    check_cotilting,
    gldim_experiment,
    grid_demo,
    is_isomorphic,
    lift_summand,
    one_weight_summands,
    pi,
    pi_lambda,
    pi_rho,
    point_grid,
    unit_counit_analysis,
    validate_grid,
)
from gl_tilt.gridcat.schema import GridDemoReport
from gl_tilt.quivalg import AlgebraPresentation, Quiver, Representation


@pytest.fixture
def k_zero() -> FinDimDriver:
    return FinDimDriver(AlgebraPresentation(Quiver(["0"])), (ZERO_FUNCTOR,))


@pytest.fixture
def k_module(k_zero) -> Representation:
    return Representation(k_zero.presentation, {"0": 1})


@pytest.fixture
def p1_driver() -> CohP1Driver:
    return CohP1Driver([RationalPoint.of((0, 1))])


class TestRecollement:
    """Test the recollement functors along one direction."""

    def test_pi_of_pi_rho(self, k_zero, k_module):
        m = point_grid(k_zero, k_module, GridShape.of([3], [ABSENT]))
        assert is_isomorphic(pi(pi_rho(m, 0), 0), m)
        assert is_isomorphic(pi(pi_lambda(m, 0), 0), m)

    def test_lifted_grids_are_valid(self, p1_driver):
        m = point_grid(p1_driver, P1Sheaf.line(0), GridShape.of([3], [ABSENT]))
        assert validate_grid(pi_rho(m, 0)).ok
        assert validate_grid(pi_lambda(m, 0)).ok

    def test_iota_summand_dies_under_pi(self, k_zero, k_module):
        g = lift_summand(k_zero, [3], frozenset({0}), k_module)
        assert validate_grid(g).ok
        assert not g.is_zero()
        assert pi(g, 0).is_zero()

    def test_adjunctions(self, p1_driver):
        m = point_grid(p1_driver, P1Sheaf((0, 1)), GridShape.of([2], [ABSENT]))
        x = pi_rho(m, 0)
        for lhs, rhs in adjunction_dims(x, pi_lambda(m, 0), 0).values():
            assert lhs == rhs

    def test_unit_counit(self, k_zero, k_module):
        x = pi_rho(point_grid(k_zero, k_module, GridShape.of([2], [ABSENT])), 0)
        assert unit_counit_analysis(x, 0).holds


class TestGridDemo:
    @pytest.mark.parametrize("name", sorted(DEMOS))
    def test_builtin_examples_pass(self, name):
        report = grid_demo(name)
        assert report.checks
        assert report.passed, [c.name for c in report.checks if not c.holds]

    def test_unknown_example(self):
        with pytest.raises(ConfigurationError):
            grid_demo("no-such-example")


class TestGlobalDimension:
    """Test measured global dimensions against the bounds."""

    @pytest.mark.parametrize("functor, weight, expected", [(ZERO_FUNCTOR, 2, 1), (IDENTITY_FUNCTOR, 2, 0), (ZERO_FUNCTOR, 4, 1)])
    def test_over_a_point(self, functor, weight, expected):
        driver = FinDimDriver(AlgebraPresentation(Quiver(["0"])), (functor,))
        record = gldim_experiment(driver, [weight])
        assert record.measured == expected
        assert record.within_bounds

    def test_identity_functor_is_an_equivalence(self):
        driver = FinDimDriver(AlgebraPresentation(Quiver(["0"])), (IDENTITY_FUNCTOR,))
        record = gldim_experiment(driver, [3])
        assert record.equivalence
        assert record.lower == record.upper == 0
        assert record.strata == {"": 0}

    def test_weight_count_mismatch(self, k_zero):
        with pytest.raises(ConfigurationError):
            gldim_experiment(k_zero, [2, 2])


class TestCotilting:
    """Test the one-weight cotilting construction."""

    def test_on_projective_line(self, p1_driver):
        point = RationalPoint.of((0, 1))
        t = build_cotilting_one_weight(p1_driver, 2, P1Sheaf.point(point), P1Sheaf((0, 1)))
        assert validate_grid(t).ok

    def test_summand_count(self, p1_driver):
        point = RationalPoint.of((0, 1))
        summands = one_weight_summands(p1_driver, 2, [P1Sheaf.point(point)], [P1Sheaf.line(0), P1Sheaf.line(1)])
        assert len(summands) == 3

    def test_torsion_at_the_weighted_point_fails(self, p1_driver):
        point = RationalPoint.of((0, 1))
        u = P1Sheaf((0,), ((point, 1),))
        with pytest.raises(ConditionFailure) as info:
            build_cotilting_one_weight(p1_driver, 2, P1Sheaf.point(point), u)
        assert any(f.condition == "injectivity" for f in info.value.failures)

    def test_t_must_be_killed(self, p1_driver):
        with pytest.raises(ConditionFailure) as info:
            build_cotilting_one_weight(p1_driver, 2, P1Sheaf.line(0), P1Sheaf.line(0))
        assert any(f.condition == "membership" for f in info.value.failures)

    def test_rigid_over_a_point(self, k_zero, k_module):
        t = build_cotilting_one_weight(k_zero, 2, k_module, k_module)
        verdict = check_cotilting(t, [t])
        assert verdict.gldim == 1
        assert verdict.rigid
        assert verdict.passed

    def test_check_needs_findim(self, p1_driver):
        g = point_grid(p1_driver, P1Sheaf.line(0), GridShape.of([2], [KILLED]))
        with pytest.raises(ConfigurationError):
            check_cotilting(g, [])


class TestGridJson:
    """Test the JSON view of grids."""

    def test_sheaf_components(self, p1_driver):
        point = RationalPoint.of((1, 1))
        m = point_grid(p1_driver, P1Sheaf((0,), ((point, 2),)), GridShape.of([2], [ABSENT]))
        g = pi_rho(m, 0)
        objects = g.to_model().model_dump()["objects"]
        assert set(objects) == {"1", "2"}
        for key, data in objects.items():
            assert set(data) == {"twists", "torsion"}
            assert P1Sheaf.from_dict(data) == g.objects[(int(key),)]
        assert objects["2"] == {"twists": [0], "torsion": [{"point": ["1", "1"], "mult": 2}]}

    def test_module_components(self, k_zero, k_module):
        g = pi_rho(point_grid(k_zero, k_module, GridShape.of([2], [ABSENT])), 0)
        assert g.to_model().objects["1"] == {"dims": {"0": 1}, "maps": {}}

    @pytest.mark.parametrize("name", ["a2-zero", "p1-two-points"])
    def test_demo_report_reads_back(self, name):
        report = grid_demo(name)
        again = GridDemoReport.model_validate_json(report.model_dump_json())
        assert again == report
        assert again.passed
