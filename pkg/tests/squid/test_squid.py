import json
from itertools import combinations_with_replacement

import pytest
from pydantic import ValidationError

from gl_tilt.errors import ConfigurationError
from gl_tilt.squid import (
    SquidSpec,
    SquidSpecModel,
    build_pd_squid,
    build_weighted_line_squid,
    emit,
    end_dim_crosscheck,
    parse_quiver_json,
    relation_families,
    summand_hom_dim,
)


@pytest.fixture
def p2_squid():
    return build_pd_squid(SquidSpec(2, ((1, 0, 0), (0, 1, 0)), (3, 3)))


class TestBuilder:
    """Test vertices, arrows and relations of squids on weighted P^d."""

    def test_p2_counts(self, p2_squid):
        counts = p2_squid.counts()
        assert counts.vertices == 15
        assert counts.arrows == {"X": 18, "x": 8, "y": 8}

    def test_p2_relation_families(self, p2_squid):
        families = relation_families(p2_squid)
        assert set(families) == {
            "l1(X_{})y1",
            "l2(X_{})y2",
            "l1(X_{1})",
            "l2(X_{2})",
            "l2(X_{1})y2",
            "l1(X_{2})y1",
        }
        # y_j leaves both O_(1,1)(1) and O_(1,1)(2)
        assert families["l1(X_{})y1"] == 2
        assert families["l1(X_{1})"] == 2
        assert families["l2(X_{1})y2"] == 2

    def test_one_weight_on_p2(self):
        q = build_pd_squid(SquidSpec(2, ((1, 0, 0),), (2,)))
        assert len(q.vertices) == 5

    def test_vertex_twists(self, p2_squid):
        for v in p2_squid.vertices:
            assert len(v.I) <= v.twist <= 2

    def test_general_position_required(self):
        with pytest.raises(ConfigurationError):
            build_pd_squid(SquidSpec(2, ((1, 0, 0), (2, 0, 0)), (2, 2)))

    def test_form_length(self):
        with pytest.raises(ConfigurationError):
            SquidSpec(2, ((1, 0),), (2,))

    def test_points_on_the_line(self):
        spec = SquidSpec.from_points([(0, 1), (1, 0)], [2, 2])
        assert [str(p) for p in spec.points()] == ["(0:1)", "(1:0)"]


class TestWeightedLine:
    """Test the classical squid of a weighted projective line."""

    @pytest.mark.parametrize("weights, expected", [([2, 2], 4), ([2], 3), ([2, 3, 4], 8)])
    def test_vertex_count(self, weights, expected):
        points = [(1, 0), (0, 1), (1, 1)][: len(weights)]
        q = build_weighted_line_squid(points, weights)
        assert len(q.vertices) == expected
        assert len(q.relations) == len(weights)

    def test_repeated_point(self):
        with pytest.raises(ConfigurationError):
            build_weighted_line_squid([(1, 0), (2, 0)], [2, 2])


LINE_POINTS = [(1, 0), (0, 1), (1, 1)]
LINE_WEIGHTS = [w for n in (1, 2, 3) for w in combinations_with_replacement((2, 3, 4), n)]


class TestCrosscheck:
    """Test that the squid presents the endomorphism algebra of the tilting object."""

    def test_two_points_on_the_line(self):
        report = end_dim_crosscheck(SquidSpec.from_points([(0, 1), (1, 0)], [2, 2]))
        assert report.oracle == "grid_hom"
        assert report.path_total == report.hom_total == 10
        assert report.closed_form_agrees
        assert report.agrees

    def test_one_point_on_the_line(self):
        report = end_dim_crosscheck(SquidSpec.from_points([(1, 0)], [2]))
        assert report.path_total == 7
        assert report.vertices == report.summands == 3
        assert report.agrees

    @pytest.mark.slow
    @pytest.mark.parametrize("weights", LINE_WEIGHTS, ids=lambda w: "-".join(map(str, w)))
    def test_weighted_lines(self, weights):
        report = end_dim_crosscheck(SquidSpec.from_points(LINE_POINTS[: len(weights)], weights))
        assert report.vertices == 2 + sum(p - 1 for p in weights)
        assert report.closed_form_agrees
        assert report.agrees, report.mismatches[:3]

    @pytest.mark.slow
    def test_p2(self):
        report = end_dim_crosscheck(SquidSpec(2, ((1, 0, 0), (0, 1, 0)), (3, 3)))
        assert report.oracle == "closed_form"
        assert report.summands == 15
        assert report.agrees, report.mismatches[:3]

    def test_closed_form(self, p2_squid):
        body = p2_squid.vertex("(1,1)|0")
        top = p2_squid.vertex("(1,1)|2")
        leg = p2_squid.vertex("(2,1)|1")
        assert summand_hom_dim(2, body, top) == 6
        assert summand_hom_dim(2, leg, body) == 0
        assert summand_hom_dim(2, body, leg) == 2


class TestEmit:
    """Test DOT and JSON output of squids."""

    def test_dot(self, p2_squid):
        text = emit(p2_squid, "dot")
        assert text.startswith("digraph squid {")
        nodes = [line for line in text.splitlines() if "[label=" in line and "->" not in line]
        edges = [line for line in text.splitlines() if "->" in line]
        assert len(nodes) == 15
        assert len(edges) == 34

    def test_json_reads_back(self, p2_squid):
        data = json.loads(emit(p2_squid, "json"))
        assert "from" in data["arrows"][0]
        q = parse_quiver_json(data)
        assert q.counts() == p2_squid.counts()

    def test_unknown_arrow_in_relation(self, p2_squid):
        data = json.loads(emit(p2_squid, "json"))
        data["relations"][0][0]["path"] = ["nope"]
        with pytest.raises(ConfigurationError):
            parse_quiver_json(data)

    def test_unknown_format(self, p2_squid):
        with pytest.raises(ConfigurationError):
            emit(p2_squid, "svg")


class TestSpecModel:
    def test_shipped_specs(self, config_dir):
        for name in ("squid_p1_22.json", "squid_p2_33.json"):
            model = SquidSpecModel.model_validate_json((config_dir / name).read_text(encoding="utf-8"))
            assert SquidSpec.from_model(model).n == 2

    def test_points_need_d_one(self):
        with pytest.raises(ValidationError):
            SquidSpecModel(d=2, points=[[1, 0]], weights=[2])

    def test_forms_or_points(self):
        with pytest.raises(ValidationError):
            SquidSpecModel(d=1, weights=[2])
