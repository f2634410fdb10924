import pytest
from hypothesis import HealthCheck, assume, given, reject, settings
from hypothesis import strategies as st

from gl_tilt.errors import ConditionFailure, ConfigurationError, TwistBoundError
from gl_tilt.geom import load_config, parse_config, stratum_info, validate_snc
from gl_tilt.tiltcheck import (
    assemble_tilting,
    auto_twist,
    check_conditions,
    default_family,
    family_for,
    global_dimension,
    parse_family,
    shift_member,
    summand_count,
    summand_names,
    twist_globally,
)

CATALOG = [
    "p1_three_points.json",
    "p2_lines.json",
    "p2_lines_conic.json",
    "p3_planes.json",
    "sigma0_section_fiber.json",
    "sigma0_two_curves.json",
    "sigma1_section_fiber.json",
    "sigma2_section_fiber.json",
]


class TestConditions:
    """Test the injectivity and Ext conditions on catalog families."""

    @pytest.mark.parametrize("name", CATALOG)
    def test_catalog_families_pass(self, config_dir, name):
        cfg = load_config(config_dir / name)
        report = check_conditions(cfg, default_family(cfg))
        assert report.passed, report.failures()
        assert all(c.injective for c in report.conditions1)

    def test_tampered_family_fails(self, data_dir):
        cfg = load_config(data_dir / "p2_lines_tampered.json")
        report = check_conditions(cfg, family_for(cfg))
        assert not report.passed
        broken = [e for e in report.conditions2 if e.dim]
        assert [(e.I, e.J, e.i, e.dim) for e in broken] == [([], ["L1"], 1, 9)]

    def test_rigidity_entries(self, config_dir):
        cfg = load_config(config_dir / "p2_lines.json")
        report = check_conditions(cfg, default_family(cfg))
        assert {tuple(e.I) for e in report.rigidity} == {(), ("L1",), ("L2",)}
        assert all(e.dim == 0 for e in report.rigidity)

    def test_rigidity_failure(self, config_dir):
        cfg = load_config(config_dir / "p2_lines.json")
        family = default_family(cfg).with_member((), [(0,), (3,)])
        report = check_conditions(cfg, family)
        assert not report.passed
        assert any(e.dim for e in report.rigidity)

    @pytest.mark.parametrize("name, expected", [("p1_three_points.json", 1), ("p2_lines.json", 2), ("p3_planes.json", 3), ("sigma2_section_fiber.json", 2)])
    def test_global_dimension(self, config_dir, name, expected):
        gldim, _ = global_dimension(load_config(config_dir / name))
        assert gldim == expected

    @settings(max_examples=100, suppress_health_check=[HealthCheck.filter_too_much])
    @given(st.data(), st.integers(min_value=1, max_value=3))
    def test_global_dimension_of_hyperplane_arrangements(self, data, d):
        count = data.draw(st.integers(min_value=1, max_value=d + 1))
        forms = data.draw(st.lists(st.lists(st.integers(min_value=-2, max_value=2), min_size=d + 1, max_size=d + 1), min_size=count, max_size=count))
        weights = data.draw(st.lists(st.integers(min_value=2, max_value=4), min_size=count, max_size=count))
        divisors = [{"label": f"H{k}", "class": 1, "weight": w, "form": f} for k, (f, w) in enumerate(zip(forms, weights))]
        try:
            cfg = parse_config({"variety": {"kind": "p", "d": d}, "divisors": divisors})
        except ConfigurationError:
            reject()
        assume(validate_snc(cfg).valid)
        assert global_dimension(cfg)[0] == d

    @pytest.mark.parametrize("k", [-2, 1, 3])
    def test_global_twist_keeps_conditions(self, config_dir, k):
        for name in ("p2_lines_conic.json", "sigma1_section_fiber.json"):
            cfg = load_config(config_dir / name)
            assert check_conditions(cfg, twist_globally(cfg, default_family(cfg), k)).passed


class TestAssembly:
    """Test the summand list of the tilting object."""

    def test_p2_two_lines(self, config_dir):
        cfg = load_config(config_dir / "p2_lines.json")
        report = assemble_tilting(cfg, default_family(cfg))
        assert report.total == 15
        assert report.total == summand_count(cfg, default_family(cfg))

    def test_weighted_projective_line(self, config_dir):
        cfg = load_config(config_dir / "p1_three_points.json")
        report = assemble_tilting(cfg, default_family(cfg))
        assert report.total == 2 + (2 - 1) + (3 - 1) + (4 - 1)

    def test_line_and_conic(self, config_dir):
        cfg = load_config(config_dir / "p2_lines_conic.json")
        family = default_family(cfg)
        report = assemble_tilting(cfg, family)
        assert report.total == summand_count(cfg, family) == 19
        assert summand_names(cfg, family, cfg.index_set("L1,C")) == ["O_(0:1:1)", "O_(0:1:-1)"]

    def test_columns_and_multiplicities(self, config_dir):
        cfg = load_config(config_dir / "p2_lines.json")
        report = assemble_tilting(cfg, default_family(cfg))
        corner = [s for s in report.summands if s.I == ["L1", "L2"]]
        assert sorted(s.multiplicity for s in corner) == [1, 2, 2, 4]

    def test_refuses_failing_family(self, data_dir):
        cfg = load_config(data_dir / "p2_lines_tampered.json")
        with pytest.raises(ConditionFailure) as info:
            assemble_tilting(cfg, family_for(cfg))
        assert info.value.failures


class TestFamilies:
    """Test parsing, twisting and completion of families."""

    def test_auto_twist_repairs(self, data_dir):
        cfg = load_config(data_dir / "p2_lines_tampered.json")
        family, twists = auto_twist(cfg, family_for(cfg))
        assert twists == {"L1": 3}
        assert family[cfg.index_set("L1")] == (1, 2)
        assert check_conditions(cfg, family).passed

    def test_auto_twist_leaves_catalog_alone(self, config_dir):
        cfg = load_config(config_dir / "sigma0_two_curves.json")
        family, twists = auto_twist(cfg, default_family(cfg))
        assert twists == {}
        assert family == default_family(cfg)

    def test_auto_twist_bound(self, data_dir):
        cfg = load_config(data_dir / "p2_lines_tampered.json")
        with pytest.raises(TwistBoundError):
            auto_twist(cfg, family_for(cfg), bound=1)

    def test_missing_member(self, config_dir):
        cfg = load_config(config_dir / "p2_lines.json")
        with pytest.raises(ConfigurationError):
            parse_family(cfg, {"": [[0], [1], [2]], "L1": [1, 2]})

    def test_member_on_empty_stratum(self):
        data = {
            "variety": {"kind": "hirzebruch", "m": 0},
            "divisors": [
                {"label": "F1", "class": [1, 0], "weight": 2, "position": "a"},
                {"label": "F2", "class": [1, 0], "weight": 2, "position": "b"},
            ],
        }
        cfg = parse_config(data)
        with pytest.raises(ConfigurationError):
            parse_family(cfg, {"": [[0, 0]], "F1": [0, 1], "F2": [0, 1], "F1,F2": [0]})

    def test_curve_outside_catalog(self):
        data = {"variety": {"kind": "hirzebruch", "m": 0}, "divisors": [{"label": "C", "class": [1, 2], "weight": 2}]}
        with pytest.raises(ConfigurationError):
            default_family(parse_config(data))

    def test_declared_family_wins(self, data_dir):
        cfg = load_config(data_dir / "p2_lines_tampered.json")
        assert family_for(cfg)[cfg.index_set("L1")] == (-2, -1)
        assert default_family(cfg)[cfg.index_set("L1")] == (1, 2)

    @pytest.mark.parametrize("name", CATALOG)
    def test_shifting_down_breaks_the_family(self, config_dir, name):
        cfg = load_config(config_dir / name)
        family = default_family(cfg)
        for I in family.index_sets():
            if not I or stratum_info(cfg, I).dim == 0:
                continue
            report = check_conditions(cfg, shift_member(cfg, family, I, -3))
            assert not report.passed
            assert any(e.dim > 0 and set(e.I + e.J) == set(cfg.labels(I)) for e in report.conditions2 + report.rigidity)
