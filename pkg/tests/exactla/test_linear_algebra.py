import pytest
from hypothesis import given
from hypothesis import strategies as st

from gl_tilt import exactla as la
from gl_tilt.errors import ConfigurationError, DimensionMismatchError
from gl_tilt.exactla import RATIONALS, FieldSpec

QQ = RATIONALS.domain

small_ints = st.integers(min_value=-4, max_value=4)


def matrices(rows: int, cols: int):
    return st.lists(st.lists(small_ints, min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        lambda data: la.matrix([[QQ(x) for x in row] for row in data], QQ, (rows, cols))
    )


class TestFieldSpec:
    """Test parsing of ground fields."""

    @pytest.mark.parametrize("text", ["Q", "QQ", "rational", "q"])
    def test_rational_spellings(self, text):
        assert FieldSpec.parse(text) == RATIONALS

    @pytest.mark.parametrize("text, q", [("GF(7)", 7), ("F5", 5), ("11", 11)])
    def test_prime_spellings(self, text, q):
        spec = FieldSpec.parse(text)
        assert spec.kind == "prime"
        assert spec.characteristic == q
        assert str(spec) == f"GF({q})"

    def test_composite_rejected(self):
        with pytest.raises(ConfigurationError):
            FieldSpec.parse("GF(6)")

    def test_denominator_divisible_by_p(self):
        from sympy import Rational

        with pytest.raises(ConfigurationError):
            FieldSpec.parse("GF(3)").element(Rational(1, 3))


class TestRankKernel:
    """Test rank, kernels and solving."""

    def test_identity(self):
        r, basis = la.rank_kernel(la.identity(2, QQ))
        assert r == 2
        assert basis == []

    def test_row_of_ones(self):
        r, basis = la.rank_kernel(la.matrix([[QQ(1), QQ(1)]], QQ))
        assert r == 1
        assert basis == [[QQ(-1), QQ(1)]]

    def test_zero_columns(self):
        m = la.zeros(3, 0, QQ)
        assert la.rank(m) == 0
        assert la.kernel(m) == []

    @given(matrices(5, 8))
    def test_rank_nullity(self, m):
        r, basis = la.rank_kernel(m)
        assert r + len(basis) == 8
        for v in basis:
            assert all(x == QQ.zero for x in la.apply(m, v))

    def test_solve_identity(self):
        b = [QQ(3), QQ(-2)]
        assert la.solve(la.identity(2, QQ), b) == b

    def test_solve_inconsistent(self):
        assert la.solve(la.zeros(2, 2, QQ), [QQ(1), QQ(0)]) is None

    @given(matrices(3, 4), st.lists(small_ints, min_size=4, max_size=4))
    def test_solve_consistent_system(self, m, x):
        b = la.apply(m, [QQ(v) for v in x])
        solution = la.solve(m, b)
        assert solution is not None
        assert la.apply(m, solution) == b

    def test_solve_length_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            la.solve(la.identity(2, QQ), [QQ(1)])


class TestEqualizer:
    """Test the equalizer of pairs of linear maps."""

    def test_no_constraints(self):
        assert len(la.equalizer_basis([], 3, QQ)) == 3

    def test_equal_maps(self):
        a = la.matrix([[QQ(1), QQ(2)], [QQ(0), QQ(1)]], QQ)
        assert len(la.equalizer_basis([(a, a)], 2, QQ)) == 2

    @given(matrices(2, 4), matrices(2, 4), matrices(1, 4), matrices(1, 4))
    def test_dimension_is_corank_of_differences(self, a1, b1, a2, b2):
        stacked = la.vstack([la.sub(a1, b1), la.sub(a2, b2)], 4, QQ)
        basis = la.equalizer_basis([(a1, b1), (a2, b2)], 4, QQ)
        assert len(basis) == 4 - la.rank(stacked)

    def test_shape_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            la.equalizer_basis([(la.identity(2, QQ), la.identity(3, QQ))], 2, QQ)


class TestNilpotentChains:
    def test_single_jordan_block(self):
        n = la.matrix([[QQ(0), QQ(0), QQ(0)], [QQ(1), QQ(0), QQ(0)], [QQ(0), QQ(1), QQ(0)]], QQ)
        chains = la.nilpotent_chains(n)
        assert [length for length, _ in chains] == [3]

    def test_not_nilpotent(self):
        with pytest.raises(DimensionMismatchError):
            la.nilpotent_chains(la.identity(2, QQ))
