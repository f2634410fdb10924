import pytest
from sympy import Rational

from gl_tilt import exactla as la
from gl_tilt.errors import ConfigurationError, DimensionMismatchError, UnsupportedQuiverError
from gl_tilt.quivalg import (
    AlgebraPresentation,
    Arrow,
    Quiver,
    Representation,
    algebra_dimension,
    direct_sum,
    enumerate_paths,
    ext_dim,
    global_dimension,
    hom_dim,
    is_isomorphic,
    linear_relation,
    projective_dimension,
)


def a_n(n: int) -> Quiver:
    vertices = [str(i) for i in range(1, n + 1)]
    arrows = [Arrow(f"a{i}", str(i), str(i + 1)) for i in range(1, n)]
    return Quiver(vertices, arrows)


def interval(presentation: AlgebraPresentation, lo: int, hi: int) -> Representation:
    """The interval module of A_n supported on lo..hi with identity maps."""
    K = presentation.field.domain
    dims = {str(i): 1 for i in range(lo, hi + 1)}
    maps = {f"a{i}": la.matrix([[K.one]], K) for i in range(lo, hi)}
    return Representation(presentation, dims, maps)


@pytest.fixture
def square() -> AlgebraPresentation:
    q = Quiver(["1", "2", "3", "4"], [Arrow("a", "1", "2"), Arrow("b", "2", "4"), Arrow("c", "1", "3"), Arrow("d", "3", "4")])
    return AlgebraPresentation(q, [linear_relation(q, [(1, ["a", "b"]), (-1, ["c", "d"])])])


class TestQuiver:
    """Test quivers and their paths."""

    def test_a3_paths(self):
        paths = enumerate_paths(a_n(3))
        assert sum(len(ps) for ps in paths.values()) == 6

    def test_single_vertex(self):
        paths = enumerate_paths(Quiver(["0"]))
        assert sum(len(ps) for ps in paths.values()) == 1

    def test_paths_are_stable(self):
        first = enumerate_paths(a_n(4))
        second = enumerate_paths(a_n(4))
        assert first == second

    def test_duplicate_arrow_labels(self):
        with pytest.raises(ConfigurationError):
            Quiver(["1", "2"], [Arrow("a", "1", "2"), Arrow("a", "2", "1")])

    def test_oriented_cycle(self):
        q = Quiver(["1", "2"], [Arrow("a", "1", "2"), Arrow("b", "2", "1")])
        assert not q.is_acyclic()
        with pytest.raises(UnsupportedQuiverError):
            algebra_dimension(AlgebraPresentation(q))

    def test_non_composable_path(self):
        q = a_n(3)
        with pytest.raises(ConfigurationError):
            q.path(["a2", "a1"])

    def test_inhomogeneous_relation(self):
        q = a_n(3)
        with pytest.raises(ConfigurationError):
            AlgebraPresentation(q, [linear_relation(q, [(1, ["a1"]), (1, ["a2"])])])


class TestAlgebraDimension:
    """Test dimensions of bound quiver algebras."""

    def test_a3_free(self):
        total, blocks = algebra_dimension(AlgebraPresentation(a_n(3)))
        assert total == 6
        assert blocks[("1", "3")] == 1

    def test_a3_zero_relation(self):
        q = a_n(3)
        total, blocks = algebra_dimension(AlgebraPresentation(q, [linear_relation(q, [(1, ["a1", "a2"])])]))
        assert total == 5
        assert ("1", "3") not in blocks

    def test_commutative_square(self, square):
        total, blocks = algebra_dimension(square)
        assert total == 4 + 4 + 1
        assert blocks[("1", "4")] == 1

    def test_relation_coefficients_are_exact(self, square):
        assert square.relations[0][1][0] == Rational(-1)


class TestRepresentations:
    """Test Hom, Ext and global dimension over path algebras."""

    def test_hom_contains_identity(self):
        p = AlgebraPresentation(a_n(3))
        m = interval(p, 1, 3)
        assert hom_dim(m, m) >= 1

    def test_simples_of_a2(self):
        p = AlgebraPresentation(a_n(2))
        s1, s2 = interval(p, 1, 1), interval(p, 2, 2)
        assert hom_dim(s1, s2) == 0
        assert hom_dim(s2, s1) == 0

    @pytest.mark.parametrize(
        "m, n, expected",
        [
            # Hom([a, b], [c, d]) = 1 iff c <= a <= d <= b for 1 -> 2 -> 3
            ((1, 3), (1, 3), 1),
            ((1, 3), (2, 3), 0),
            ((2, 3), (1, 3), 1),
            ((1, 2), (1, 3), 0),
            ((1, 1), (1, 3), 0),
            ((3, 3), (1, 3), 1),
            ((2, 2), (3, 3), 0),
        ],
    )
    def test_interval_homs(self, m, n, expected):
        p = AlgebraPresentation(a_n(3))
        assert hom_dim(interval(p, *m), interval(p, *n)) == expected

    def test_relations_are_enforced(self):
        q = a_n(3)
        p = AlgebraPresentation(q, [linear_relation(q, [(1, ["a1", "a2"])])])
        with pytest.raises(DimensionMismatchError):
            interval(p, 1, 3)

    def test_direct_sum_is_not_indecomposable(self):
        p = AlgebraPresentation(a_n(2))
        s = direct_sum([interval(p, 1, 1), interval(p, 2, 2)])
        assert hom_dim(s, s) == 2
        assert not is_isomorphic(s, interval(p, 1, 2))

    def test_ext_between_simples(self):
        p = AlgebraPresentation(a_n(2))
        s1, s2 = interval(p, 1, 1), interval(p, 2, 2)
        assert ext_dim(s1, s2, 1) == 1
        assert ext_dim(s2, s1, 1) == 0
        assert projective_dimension(s1) == 1

    def test_global_dimension(self):
        q = a_n(3)
        assert global_dimension(AlgebraPresentation(q)) == 1
        assert global_dimension(AlgebraPresentation(q, [linear_relation(q, [(1, ["a1", "a2"])])])) == 2

    def test_negative_ext_degree(self):
        p = AlgebraPresentation(a_n(2))
        with pytest.raises(ValueError):
            ext_dim(interval(p, 1, 1), interval(p, 1, 1), -1)
