import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gl_tilt.errors import ConfigurationError
from gl_tilt.geom import (
    CURVE,
    EMPTY,
    POINTS,
    PROJECTIVE_STRATUM,
    VARIETY,
    VarietyModel,
    canonical_class,
    cohomology_dim,
    cohomology_table,
    euler_characteristic,
    ext_dim_on_stratum,
    genus,
    intersection_number,
    load_config,
    parse_config,
    restrict_along,
    restrict_to_stratum,
    stratum_info,
    validate_snc,
)

degrees = st.integers(min_value=-6, max_value=6)


def p2_lines(forms, weights=None) -> dict:
    weights = weights or [2] * len(forms)
    return {
        "variety": {"kind": "p", "d": 2},
        "divisors": [{"label": f"L{k + 1}", "class": 1, "weight": w, "form": f} for k, (f, w) in enumerate(zip(forms, weights))],
    }


class TestCohomology:
    """Test line-bundle cohomology on P^d and Sigma_m."""

    @pytest.mark.parametrize("d, n, expected", [(1, 0, [1, 0]), (1, -2, [0, 1]), (2, 1, [3, 0, 0]), (2, -3, [0, 0, 1]), (3, -1, [0, 0, 0, 0])])
    def test_projective(self, d, n, expected):
        v = VarietyModel.projective(d)
        assert [cohomology_dim(v, (n,), i) for i in range(d + 1)] == expected

    def test_canonical_classes(self):
        assert canonical_class(VarietyModel.projective(2)) == (-3,)
        assert canonical_class(VarietyModel.hirzebruch(2)) == (0, -2)

    @settings(max_examples=1000)
    @given(st.integers(min_value=0, max_value=3), degrees, degrees)
    def test_serre_duality(self, m, a, b):
        v = VarietyModel.hirzebruch(m)
        k = canonical_class(v)
        dual = (k[0] - a, k[1] - b)
        for i in range(3):
            assert cohomology_dim(v, (a, b), i) == cohomology_dim(v, dual, 2 - i)

    @settings(max_examples=1000)
    @given(st.integers(min_value=0, max_value=3), degrees, degrees)
    def test_riemann_roch(self, m, a, b):
        v = VarietyModel.hirzebruch(m)
        c = (a, b)
        twice = intersection_number(v, c, c) - intersection_number(v, c, canonical_class(v))
        assert 2 * euler_characteristic(v, c) == 2 + twice

    @settings(max_examples=1000)
    @given(st.integers(min_value=-30, max_value=30))
    def test_p2_serre_duality_and_riemann_roch(self, n):
        v = VarietyModel.projective(2)
        k = canonical_class(v)
        for i in range(3):
            assert cohomology_dim(v, (n,), i) == cohomology_dim(v, (k[0] - n,), 2 - i)
        twice = intersection_number(v, (n,), (n,)) - intersection_number(v, (n,), k)
        assert 2 * euler_characteristic(v, (n,)) == 2 + twice

    @given(degrees)
    def test_p2_euler_characteristic(self, n):
        assert euler_characteristic(VarietyModel.projective(2), (n,)) == (n + 1) * (n + 2) // 2

    def test_table(self):
        table = cohomology_table(VarietyModel.hirzebruch(1), [[0, 0], [-1, -2]])
        assert table.canonical == [-1, -2]
        assert table.rows[0].h == [1, 0, 0]
        assert table.rows[1].h == [0, 0, 1]
        assert table.model_dump(by_alias=True)["rows"][0]["class"] == [0, 0]

    def test_picard_rank_mismatch(self):
        with pytest.raises(ConfigurationError):
            cohomology_dim(VarietyModel.hirzebruch(0), (1,), 0)

    def test_genus(self):
        assert genus(VarietyModel.projective(2), (2,)) == 0
        assert genus(VarietyModel.projective(2), (3,)) == 1
        assert genus(VarietyModel.hirzebruch(1), (1, 1)) == 0


class TestSNCValidation:
    """Test the simple normal crossing checks."""

    def test_two_lines(self):
        verdict = validate_snc(parse_config(p2_lines([[1, 0, 0], [0, 1, 0]])))
        assert verdict.valid
        assert [s.kind for s in verdict.strata] == [PROJECTIVE_STRATUM, PROJECTIVE_STRATUM, PROJECTIVE_STRATUM, POINTS]

    def test_concurrent_lines(self):
        verdict = validate_snc(parse_config(p2_lines([[1, 0, 0], [0, 1, 0], [1, 1, 0]])))
        assert not verdict.valid
        assert any(f.check == "position" for f in verdict.failures)

    def test_repeated_line(self):
        verdict = validate_snc(parse_config(p2_lines([[1, 0, 0], [2, 0, 0]])))
        assert not verdict.valid

    def test_line_and_conic(self, config_dir):
        cfg = load_config(config_dir / "p2_lines_conic.json")
        assert validate_snc(cfg).valid
        stratum = stratum_info(cfg, cfg.index_set("L1,C"))
        assert (stratum.kind, stratum.count) == (POINTS, 2)

    def test_wrong_number_of_points(self):
        data = {
            "variety": {"kind": "p", "d": 2},
            "divisors": [{"label": "L", "class": 1, "weight": 2, "form": [1, 0, 0]}, {"label": "C", "class": 2, "weight": 2}],
            "intersections": {"L,C": [[0, 1, 1]]},
        }
        verdict = validate_snc(parse_config(data))
        assert not verdict.valid
        assert verdict.failures[0].check == "intersection"

    def test_tangency(self):
        data = {
            "variety": {"kind": "p", "d": 2},
            "divisors": [{"label": "L", "class": 1, "weight": 2, "form": [1, 0, 0]}, {"label": "C", "class": 2, "weight": 2}],
            "intersections": {"L,C": ["t", "t"]},
        }
        assert not validate_snc(parse_config(data)).valid

    def test_triple_point(self):
        data = {
            "variety": {"kind": "hirzebruch", "m": 0},
            "divisors": [
                {"label": "A", "class": [1, 1], "weight": 2, "position": "a"},
                {"label": "B", "class": [1, 1], "weight": 2, "position": "b"},
                {"label": "F", "class": [1, 0], "weight": 2},
            ],
            "intersections": {"A,B": ["p", "q"], "A,F": ["p"], "B,F": ["p"]},
        }
        verdict = validate_snc(parse_config(data))
        assert any(f.check == "triple point" for f in verdict.failures)

    def test_cubic_is_not_rational(self):
        data = {"variety": {"kind": "p", "d": 2}, "divisors": [{"label": "E", "class": 3, "weight": 2}]}
        assert not validate_snc(parse_config(data)).valid

    def test_disjoint_fibers(self):
        data = {
            "variety": {"kind": "hirzebruch", "m": 1},
            "divisors": [
                {"label": "F1", "class": [1, 0], "weight": 2, "position": "a"},
                {"label": "F2", "class": [1, 0], "weight": 2, "position": "b"},
            ],
        }
        cfg = parse_config(data)
        assert validate_snc(cfg).valid
        assert stratum_info(cfg, (0, 1)).kind == EMPTY

    @pytest.mark.parametrize(
        "name",
        [
            "p1_three_points.json",
            "p2_lines.json",
            "p2_lines_conic.json",
            "p3_planes.json",
            "sigma0_section_fiber.json",
            "sigma0_two_curves.json",
            "sigma1_section_fiber.json",
            "sigma2_section_fiber.json",
        ],
    )
    def test_shipped_configurations(self, config_dir, name):
        assert validate_snc(load_config(config_dir / name)).valid


class TestStrata:
    """Test strata, restriction and Ext over strata."""

    def test_arrangement_strata(self, config_dir):
        cfg = load_config(config_dir / "p3_planes.json")
        assert stratum_info(cfg, ()).dim == 3
        assert stratum_info(cfg, (0, 1)).kind == PROJECTIVE_STRATUM
        assert stratum_info(cfg, (0, 1)).dim == 1
        assert stratum_info(cfg, (0, 1, 2)).kind == POINTS

    def test_surface_strata(self, config_dir):
        cfg = load_config(config_dir / "sigma1_section_fiber.json")
        assert stratum_info(cfg, ()).kind == VARIETY
        assert stratum_info(cfg, (0,)).kind == CURVE
        assert stratum_info(cfg, (0, 1)).count == 1

    def test_restrict_to_conic(self, config_dir):
        cfg = load_config(config_dir / "p2_lines_conic.json")
        assert restrict_to_stratum(cfg, [(1,), (0,)], cfg.index_set("C")) == [2, 0]

    def test_restrict_on_sigma(self, config_dir):
        cfg = load_config(config_dir / "sigma2_section_fiber.json")
        assert restrict_to_stratum(cfg, [(0, 1)], cfg.index_set("C")) == [2]
        assert restrict_to_stratum(cfg, [(0, 1)], cfg.index_set("F")) == [1]

    def test_restrict_along_to_points(self, config_dir):
        cfg = load_config(config_dir / "p2_lines.json")
        assert restrict_along(cfg, [3, -1], (0,), (0, 1)) == [0, 0]

    def test_restrict_along_needs_containment(self, config_dir):
        cfg = load_config(config_dir / "p2_lines.json")
        with pytest.raises(ConfigurationError):
            restrict_along(cfg, [0], (0,), (1,))

    def test_ext_on_a_line(self, config_dir):
        cfg = load_config(config_dir / "p2_lines.json")
        assert ext_dim_on_stratum(cfg, (0,), [0], [-2], 1) == 1
        assert ext_dim_on_stratum(cfg, (0,), [0], [-1], 1) == 0

    def test_ext_over_points(self, config_dir):
        cfg = load_config(config_dir / "p2_lines_conic.json")
        I = cfg.index_set("L2,C")
        assert ext_dim_on_stratum(cfg, I, [0, 0], [0], 0) == 4
        assert ext_dim_on_stratum(cfg, I, [0], [0], 1) == 0

    def test_empty_stratum(self):
        data = {
            "variety": {"kind": "hirzebruch", "m": 0},
            "divisors": [
                {"label": "F1", "class": [1, 0], "weight": 2, "position": "a"},
                {"label": "F2", "class": [1, 0], "weight": 2, "position": "b"},
            ],
        }
        with pytest.raises(ConfigurationError):
            ext_dim_on_stratum(parse_config(data), (0, 1), [0], [0], 0)


class TestConfigParsing:
    def test_unknown_label(self, config_dir):
        cfg = load_config(config_dir / "p2_lines.json")
        with pytest.raises(ConfigurationError):
            cfg.index_set("L1,L9")

    def test_schema_violation(self):
        with pytest.raises(ConfigurationError):
            parse_config({"variety": {"kind": "p"}, "divisors": []})

    def test_weight_below_two(self):
        with pytest.raises(ConfigurationError):
            parse_config(p2_lines([[1, 0, 0]], [1]))

    def test_json_text(self):
        cfg = parse_config(json.dumps(p2_lines([[1, 0, 0]])))
        assert cfg.weights == (2,)

    def test_not_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            load_config(path)

    def test_prime_field_points(self):
        data = {
            "variety": {"kind": "p", "d": 2},
            "divisors": [{"label": "L", "class": 1, "weight": 2, "form": [1, 0, 0]}, {"label": "C", "class": 2, "weight": 2}],
            "intersections": {"L,C": [[0, 1, 1], [0, 1, 4]]},
            "field": "GF(5)",
        }
        cfg = parse_config(data)
        assert cfg.declared(0, 1) == cfg.declared(1, 0)
        assert len(cfg.declared(0, 1)) == 2
