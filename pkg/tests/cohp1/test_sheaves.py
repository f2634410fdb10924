import pytest
from hypothesis import HealthCheck, given, reject, settings
from hypothesis import strategies as st

from gl_tilt.cohp1 import (
    P1Morphism,
    P1Sheaf,
    RationalPoint,
    cokernel,
    compose,
    euler_form,
    ext1_dim,
    ext_dim,
    from_coordinates,
    hom_basis,
    hom_dim,
    identity,
    is_isomorphism,
    kernel,
    twist_and_eta,
)
from gl_tilt.cohp1.sheaf import rings
from gl_tilt.errors import ConfigurationError, UnsupportedFieldError
from gl_tilt.exactla import RATIONALS, FieldSpec

QQ = RATIONALS.domain
twists = st.lists(st.integers(min_value=-3, max_value=3), min_size=1, max_size=3)


class TestRationalPoint:
    """Test normalization of points on the projective line."""

    def test_scaling(self):
        assert RationalPoint.of((2, 4)) == RationalPoint.of((1, 2))

    def test_point_at_infinity(self):
        p = RationalPoint.of((0, 3))
        assert (p.l0, p.l1) == (0, 1)
        assert str(p) == "(0:1)"

    def test_origin_rejected(self):
        with pytest.raises(ConfigurationError):
            RationalPoint.of((0, 0))

    def test_reduce_modulo_prime(self):
        gf5 = FieldSpec.parse("GF(5)")
        assert RationalPoint.of((2, 1)).reduce(gf5) == RationalPoint.of((1, 3)).reduce(gf5)
        assert RationalPoint.of((2, 1)).reduce(gf5) != RationalPoint.of((1, 1)).reduce(gf5)


class TestSheaf:
    def test_canonical_order(self):
        s = P1Sheaf((2, -1, 0))
        assert s.twists == (-1, 0, 2)
        assert s.rank == 3
        assert s.degree == 1

    def test_euler_characteristic(self):
        assert P1Sheaf.line(3).euler_characteristic() == 4
        assert P1Sheaf.point(RationalPoint.of((1, 0)), 2).euler_characteristic() == 2

    def test_dict_round_trip(self):
        s = P1Sheaf((1,), ((RationalPoint.of((1, 1)), 2),))
        assert P1Sheaf.from_dict(s.to_dict()) == s

    def test_malformed_dict(self):
        with pytest.raises(ConfigurationError):
            P1Sheaf.from_dict({"torsion": [{"mult": 1}]})


class TestHomExt:
    """Test Hom and Ext between split sheaves."""

    @pytest.mark.parametrize("a, b", [(0, 0), (0, 3), (2, 1), (-2, 1)])
    def test_hom_between_lines(self, a, b):
        assert hom_dim(P1Sheaf.line(a), P1Sheaf.line(b)) == max(0, b - a + 1)

    def test_serre_duality_pairs(self):
        assert ext1_dim(P1Sheaf.line(0), P1Sheaf.line(-2)) == 1
        assert ext1_dim(P1Sheaf.line(0), P1Sheaf.line(-1)) == 0

    def test_skyscraper(self):
        p = P1Sheaf.point(RationalPoint.of((1, 0)))
        o = P1Sheaf.line(0)
        assert hom_dim(o, p) == 1
        assert hom_dim(p, o) == 0
        assert ext1_dim(p, o) == 1
        assert ext1_dim(o, p) == 0

    def test_distinct_points_are_orthogonal(self):
        p = P1Sheaf.point(RationalPoint.of((1, 0)))
        q = P1Sheaf.point(RationalPoint.of((0, 1)))
        assert hom_dim(p, q) == 0
        assert ext1_dim(p, q) == 0

    def test_hereditary(self):
        assert ext_dim(P1Sheaf.line(0), P1Sheaf.line(-5), 2) == 0

    @given(twists, twists)
    def test_euler_form(self, a, b):
        m, n = P1Sheaf(tuple(a)), P1Sheaf(tuple(b))
        assert hom_dim(m, n) - ext1_dim(m, n) == euler_form(m, n)

    def test_hom_basis_size(self):
        m = P1Sheaf((0, 1))
        n = P1Sheaf((1, 2))
        assert len(hom_basis(m, n)) == hom_dim(m, n) == 2 + 3 + 1 + 2


class TestKernelCokernel:
    """Test kernels and cokernels in split form."""

    def test_euler_sequence(self):
        _, x, y, _, _ = rings(QQ)
        f = P1Morphism(P1Sheaf((-1, -1)), P1Sheaf.line(0), [[x, y]])
        ker, inclusion = kernel(f)
        assert ker == P1Sheaf.line(-2)
        assert compose(f, inclusion).is_zero()
        assert cokernel(f)[0].is_zero()

    def test_eta_cokernel_is_skyscraper(self):
        point = RationalPoint.of((1, 2))
        twisted, eta = twist_and_eta(P1Sheaf.line(0), point)
        assert twisted == P1Sheaf.line(-1)
        assert cokernel(eta)[0] == P1Sheaf.point(point)
        assert kernel(eta)[0].is_zero()

    def test_identity_is_isomorphism(self):
        m = P1Sheaf((0, 2), ((RationalPoint.of((1, 0)), 1),))
        assert is_isomorphism(identity(m))

    def test_irrational_support(self):
        _, x, y, _, _ = rings(QQ)
        f = P1Morphism(P1Sheaf.line(-2), P1Sheaf.line(0), [[x**2 + y**2]])
        with pytest.raises(UnsupportedFieldError):
            cokernel(f)

    def test_kernel_degrees_do_not_depend_on_the_twist_bound(self, monkeypatch):
        monkeypatch.setenv("GLTILT_MAX_TWIST", "2")
        _, x, y, _, _ = rings(QQ)
        f = P1Morphism(P1Sheaf((0, 0)), P1Sheaf.line(4), [[x**4, y**4]])
        ker, inclusion = kernel(f)
        assert ker == P1Sheaf.line(-4)
        assert compose(f, inclusion).is_zero()


POINTS = [RationalPoint.of((1, 0)), RationalPoint.of((0, 1)), RationalPoint.of((1, 1))]


def split_sheaves(low: int, high: int):
    return st.builds(
        P1Sheaf,
        st.lists(st.integers(min_value=low, max_value=high), max_size=2).map(tuple),
        st.lists(st.tuples(st.sampled_from(POINTS), st.integers(min_value=1, max_value=2)), max_size=2).map(tuple),
    )


class TestExactSequences:
    """Test 0 -> ker f -> E -> F -> cok f -> 0 on random morphisms."""

    @pytest.mark.slow
    @settings(max_examples=1000, suppress_health_check=[HealthCheck.filter_too_much])
    @given(split_sheaves(-1, 1), split_sheaves(0, 2), st.lists(st.integers(min_value=-2, max_value=2), min_size=48, max_size=48))
    def test_euler_characteristic_is_additive(self, source, target, coefficients):
        n = hom_dim(source, target)
        values = [RATIONALS.element(c) for c in (coefficients + [1] * n)[:n]]
        f = from_coordinates(source, target, values)
        ker, inclusion = kernel(f)
        try:
            cok, projection = cokernel(f)
        except UnsupportedFieldError:
            reject()
        assert ker.euler_characteristic() - source.euler_characteristic() + target.euler_characteristic() - cok.euler_characteristic() == 0
        assert ker.rank - source.rank + target.rank - cok.rank == 0
        assert compose(f, inclusion).is_zero()
        assert compose(projection, f).is_zero()
