from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from coreentropy.circle import (
    Angle,
    AngleSet,
    SeparationVerdict,
    as_angle,
    circle_distance,
    hausdorff_distance,
    orbit,
    preimages,
    separation,
    tau,
    unlinked,
)
from strategies import angle_sets, angles


def A(text):
    return Angle.parse(text)


def S(*items):
    return AngleSet(A(x) for x in items)


class TestAngle:
    def test_canonical_residue(self):
        assert A("5/4") == A("1/4")
        assert A("-1/4") == A("3/4")
        assert A("2/4").denominator == 2

    def test_zero_prints_as_fraction(self):
        assert str(A("0")) == "0/1"
        assert str(A("3/6")) == "1/2"

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            as_angle(0.25)

    @given(angles())
    def test_parse_roundtrip(self, a):
        assert A(str(a)) == a


class TestTau:
    @pytest.mark.parametrize("d, a, want", [(2, "1/3", "2/3"), (3, "1/3", "0/1"), (3, "83/216", "11/72")])
    def test_examples(self, d, a, want):
        assert tau(d, A(a)) == A(want)

    def test_fig3_block_has_one_image(self):
        assert tau(3, A("11/216")) == tau(3, A("83/216")) == A("11/72")

    def test_degree_check(self):
        with pytest.raises(ValueError):
            tau(1, A("1/2"))

    @given(st.integers(2, 6), angles())
    def test_preimages_are_d_to_one(self, d, a):
        pre = preimages(d, a)
        assert len(set(pre)) == d
        assert all(tau(d, b) == a for b in pre)
        assert all(b.denominator <= d * a.denominator for b in pre)


class TestOrbit:
    def test_periodic(self):
        o = orbit(2, A("3/7"))
        assert (o.preperiod, o.period) == (0, 3)
        assert o.points == (A("3/7"), A("6/7"), A("5/7"))

    def test_preperiodic(self):
        o = orbit(2, A("1/4"))
        assert (o.preperiod, o.period) == (2, 1)
        assert o.points == (A("1/4"), A("1/2"), A("0"))

    def test_fixed(self):
        o = orbit(2, A("0"))
        assert (o.preperiod, o.period, o.points) == (0, 1, (A("0"),))

    @given(st.integers(2, 5), angles())
    def test_closes_up(self, d, a):
        o = orbit(d, a)
        pts = o.points
        assert len(set(pts)) == len(pts) == o.preperiod + o.period
        assert all(tau(d, pts[k]) == pts[k + 1] for k in range(len(pts) - 1))
        assert tau(d, pts[-1]) == pts[o.preperiod]
        assert o.at(len(pts) + 5) == pts[o.preperiod + (len(pts) + 5 - o.preperiod) % o.period]


class TestSeparation:
    def test_examples(self):
        assert separation(S("1/4", "3/4"), A("0"), A("1/2")) is SeparationVerdict.SEPARATED
        assert separation(S("3/14", "5/7"), A("5/7"), A("6/7")) is SeparationVerdict.ON_BOUNDARY
        assert separation(S("1/14", "4/7"), A("1/7"), A("2/7")) is SeparationVerdict.SAME_SIDE

    def test_equal_points_rejected(self):
        with pytest.raises(ValueError):
            separation(S("1/4", "3/4"), A("0"), A("0"))

    @given(angle_sets(min_size=2), angles(), angles())
    def test_symmetric(self, hull, x, y):
        if x == y:
            return
        v = separation(hull, x, y)
        assert v is separation(hull, y, x)
        if v is SeparationVerdict.SEPARATED:
            assert not unlinked(AngleSet([x, y]), hull)


class TestUnlinked:
    def test_examples(self):
        assert unlinked(S("0", "1/3"), S("1/3", "2/3"))
        assert not unlinked(S("0", "1/2"), S("1/4", "3/4"))
        assert not unlinked(S("1/14", "4/7"), S("1/14", "4/7"))

    def test_nested_and_disjoint(self):
        assert unlinked(S("0", "1/2"), S("1/8", "1/4"))
        assert unlinked(S("0", "1/5", "2/5"), S("1/2", "7/10", "9/10"))

    def test_triangle_touching_chord(self):
        assert unlinked(S("0", "1/3", "2/3"), S("2/3", "5/6"))
        assert not unlinked(S("0", "1/3", "2/3"), S("1/6", "1/2"))

    @given(angle_sets(), angle_sets())
    def test_symmetric(self, a, b):
        assert unlinked(a, b) == unlinked(b, a)


class TestHausdorff:
    def test_examples(self):
        assert hausdorff_distance(S("1/4", "3/4"), S("1/4", "3/4")) == 0
        assert hausdorff_distance(S("0"), S("1/2")) == Fraction(1, 2)
        assert hausdorff_distance(S("0", "1/2"), S("1/8", "1/2")) == Fraction(1, 8)

    def test_wraps_around_zero(self):
        assert circle_distance(A("1/16"), A("15/16")) == Fraction(1, 8)

    @given(angle_sets(), angle_sets(), angle_sets())
    def test_metric(self, a, b, c):
        dab = hausdorff_distance(a, b)
        assert (dab == 0) == (a == b)
        assert dab == hausdorff_distance(b, a)
        assert hausdorff_distance(a, c) <= dab + hausdorff_distance(b, c)
