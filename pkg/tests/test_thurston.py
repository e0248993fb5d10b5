import math

import pytest
from hypothesis import given

from coreentropy import fixtures as fx
from coreentropy.circle import Angle
from coreentropy.portrait import quadratic_portrait, validate_portrait
from coreentropy.thurston import pair_image, postcritical_pool, thurston_entropy, transition_graph
from strategies import portraits

PHI = (1 + 5 ** 0.5) / 2


def A(t):
    return Angle.parse(t)


class TestPool:
    def test_chebyshev(self):
        assert postcritical_pool(fx.chebyshev_portrait()).to_strings() == ["0/1", "1/2"]

    def test_airplane(self):
        assert postcritical_pool(fx.airplane_portrait()).to_strings() == ["3/7", "5/7", "6/7"]

    def test_z2_plus_i(self):
        assert postcritical_pool(fx.z2_plus_i_portrait()).to_strings() == ["1/6", "1/3", "2/3"]


class TestPairs:
    def test_chebyshev_matrix(self):
        g = transition_graph(fx.chebyshev_portrait())
        assert g.pairs == ((A("0"), A("1/2")),)
        assert g.transition.tolist() == [[2]]

    def test_airplane_matrix(self):
        g = transition_graph(fx.airplane_portrait())
        assert g.transition.tolist() == [[0, 1, 0], [1, 1, 0], [1, 0, 0]]

    def test_image_through_block(self):
        # {0,1/2} crosses the Chebyshev diameter once: tau(0)=0, image 1/2, tau(1/2)=0
        assert pair_image(fx.chebyshev_portrait(), A("0"), A("1/2")) == [(A("0"), A("1/2"))] * 2

    def test_unseparated_pair_maps_straight(self):
        assert pair_image(fx.chebyshev_portrait(), A("1/3"), A("2/3")) == [(A("1/3"), A("2/3"))]


class TestEntropy:
    @pytest.mark.parametrize("portrait, h", [
        (fx.chebyshev_portrait, math.log(2)),
        (fx.airplane_portrait, math.log(PHI)),
        (fx.z2_plus_i_portrait, 0.419617624991),
        (fx.rabbit_portrait, 0.0),
        (fx.basilica_portrait, 0.0),
    ])
    def test_values(self, portrait, h):
        assert thurston_entropy(portrait()).value == pytest.approx(h, abs=1e-9)

    def test_z2_plus_i_pool_of_three_pairs(self):
        assert len(transition_graph(fx.z2_plus_i_portrait()).pairs) == 3

    def test_fixed_critical_value_is_zero(self):
        v = thurston_entropy(quadratic_portrait(A("0")))
        assert v.value == 0.0 and v.nilpotent

    def test_cubic_two_block(self):
        assert thurston_entropy(fx.cubic_two_block_portrait()).value == 0.0

    def test_quadratic_angle_doubling(self):
        # a real-axis angle strictly between the airplane and Chebyshev
        assert 0 < thurston_entropy(quadratic_portrait(A("7/16"))).value < math.log(2)

    @given(portraits())
    def test_bounded_by_log_degree(self, p):
        v = thurston_entropy(p)
        assert 0 <= v.value <= math.log(p.degree) + 1e-9
        assert v.lower <= v.value <= v.upper

    @given(portraits(degrees=(2,)))
    def test_invariant_under_relabelling(self, p):
        assert thurston_entropy(p).value == thurston_entropy(validate_portrait(2, p.blocks[::-1])).value
