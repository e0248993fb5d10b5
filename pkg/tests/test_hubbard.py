import dataclasses
import math

import pytest

from coreentropy import fixtures as fx
from coreentropy.circle import Angle, AngleSet
from coreentropy.errors import InconsistentAngles, ModelError, UnresolvedVerdict, ValidationFailed
from coreentropy.hubbard import (
    Verdict,
    cycle_decomposition,
    decide,
    forest_entropy,
    forest_report,
    h_j_forest,
    j_ends,
    julia_markings,
    model_mu,
    model_verdict,
    mu,
    poly_continuity_verdict,
    ppf_continuity_verdict,
    validate_forest,
)
from coreentropy.markov import EntropyValue
from coreentropy.thurston import thurston_entropy

PHI = (1 + 5 ** 0.5) / 2
TREE_NAMES = sorted(fx.TREES)


def S(*xs):
    return AngleSet(Angle.parse(x) for x in xs)


def ev(x, w=0.0):
    return EntropyValue(x, x - w, x + w, False)


@pytest.mark.parametrize("name", TREE_NAMES)
def test_tree_entropy_matches_thurston(name):
    p, t = fx.TREES[name]
    tree = validate_forest(t())
    assert forest_entropy(tree).value == pytest.approx(thurston_entropy(p()).value, abs=1e-9)


@pytest.mark.parametrize("name", TREE_NAMES)
def test_mu_at_most_h(name):
    tree = fx.TREES[name][1]()
    assert mu(tree).entropy.value <= forest_entropy(tree).value + 1e-9


@pytest.mark.parametrize("name", TREE_NAMES + ["period_two_pair", "two_end_forest"])
def test_entropy_is_cycle_maximum(name):
    f = fx.TREES[name][1]() if name in fx.TREES else getattr(fx, name)()
    assert cycle_decomposition(f).maximum.value == pytest.approx(forest_entropy(f).value, abs=1e-12)


class TestValidation:
    def test_trees_are_valid(self):
        for name in TREE_NAMES:
            assert forest_report(fx.TREES[name][1]()) == []
        assert forest_report(fx.two_end_forest()) == []
        assert forest_report(fx.period_two_pair()) == []

    def test_bad_angle(self):
        t = fx.chebyshev_tree()
        vs = list(t.vertices)
        vs[2] = dataclasses.replace(vs[2], angles=S("1/3"))
        with pytest.raises(ValidationFailed) as err:
            validate_forest(dataclasses.replace(t, vertices=tuple(vs)))
        assert {r["check"] for r in err.value.report} == {"angles"}

    def test_critical_needs_degree(self):
        t = fx.chebyshev_tree()
        vs = list(t.vertices)
        vs[1] = dataclasses.replace(vs[1], local_degree=1)
        assert "critical" in {r["check"] for r in forest_report(dataclasses.replace(t, vertices=tuple(vs)))}

    def test_components_must_be_trees(self):
        t = dataclasses.replace(fx.chebyshev_tree(), components=(("-2", "0"), ("2",)))
        assert "components" in {r["check"] for r in forest_report(t)}

    def test_landing_conflict(self):
        # "-2" and "2" would both carry the angle 0
        t = fx.chebyshev_tree()
        vs = list(t.vertices)
        vs[0] = dataclasses.replace(vs[0], angles=S("0", "1/2"))
        checks = {r["check"] for r in forest_report(dataclasses.replace(t, vertices=tuple(vs)))}
        assert "landing" in checks


class TestCycles:
    def test_period_two(self):
        cd = cycle_decomposition(fx.period_two_pair())
        assert [c.period for c in cd.cycles] == [2]
        assert cd.maximum.value == pytest.approx(math.log(2) / 2)

    def test_empty(self):
        assert cycle_decomposition(fx.empty_forest()).maximum.value == 0.0


class TestJEnds:
    def test_chebyshev_has_no_fatou(self):
        ends = j_ends(fx.chebyshev_tree(), [("0", S("1/4", "3/4"))])
        assert ends.classes == ()

    def test_airplane_single_class(self):
        ends = j_ends(fx.airplane_tree(), [])
        assert len(ends.classes) == 1 and ends.periods == {0: 1}

    def test_two_end_forest(self):
        f = fx.two_end_forest()
        ends = j_ends(f, [("c", S("1/8", "3/8"))])
        assert sorted(ends.classes) == [("u",), ("w",)]
        assert set(ends.periods.values()) == {1}
        assert h_j_forest(f, ends.marking).edges == ()

    def test_straddle(self):
        f = fx.two_end_forest()
        vs = [dataclasses.replace(v, angles=S("0", "1/4")) if v.id == "u" else v for v in f.vertices]
        with pytest.raises(InconsistentAngles):
            j_ends(dataclasses.replace(f, vertices=tuple(vs)), [("c", S("1/8", "3/8"))])

    def test_marking_must_sit_on_julia_critical(self):
        with pytest.raises(ValueError):
            j_ends(fx.airplane_tree(), [("c0", S("3/14", "5/7"))])


class TestMu:
    def test_chebyshev(self):
        r = mu(fx.chebyshev_tree())
        assert r.entropy.value == 0.0
        assert r.witness == (("0", S("1/4", "3/4")),)

    @pytest.mark.parametrize("name", ["airplane", "rabbit", "basilica"])
    def test_hyperbolic_trees(self, name):
        tree = fx.TREES[name][1]()
        assert julia_markings(tree) == [()]
        assert mu(tree).entropy.value == pytest.approx(forest_entropy(tree).value)

    def test_period_two_pair(self):
        assert mu(fx.period_two_pair()).entropy.value == 0.0


class TestDecide:
    def test_brackets(self):
        assert decide(ev(1.0), ev(1.0)) is Verdict.CONTINUOUS
        assert decide(ev(1.0), ev(0.5)) is Verdict.DISCONTINUOUS
        with pytest.raises(UnresolvedVerdict):
            decide(ev(1.0, 1e-9), ev(1.0 - 1.5e-9, 1e-9), tolerance=1e-9)

    def test_tolerance_widens(self):
        assert decide(ev(1.0), ev(0.99), tolerance=0.05) is Verdict.CONTINUOUS


class TestVerdicts:
    def test_chebyshev(self):
        v = poly_continuity_verdict(fx.chebyshev_tree())
        assert v.verdict is Verdict.DISCONTINUOUS
        assert v.h.value == pytest.approx(math.log(2)) and v.mu.value == 0.0

    @pytest.mark.parametrize("name", ["airplane", "rabbit", "basilica"])
    def test_continuous(self, name):
        assert poly_continuity_verdict(fx.TREES[name][1]()).verdict is Verdict.CONTINUOUS

    def test_model_rules(self):
        m, w = model_mu(fx.chebyshev_fatou_variant())
        assert m.value == pytest.approx(math.log(2)) and w == ()
        with pytest.raises(ModelError):
            model_mu(fx.fig3_marking())
        with pytest.raises(ModelError):
            model_mu(fx.chebyshev_portrait())
        assert model_verdict(fx.airplane_tree()).verdict is Verdict.CONTINUOUS


class TestPpf:
    def test_not_renormalizable(self):
        v = ppf_continuity_verdict([])
        assert v.verdict is Verdict.CONTINUOUS and v.h.value == 0.0
        assert v.details["renormalizable"] is False

    def test_chebyshev(self):
        assert ppf_continuity_verdict([(1, fx.chebyshev_tree())]).verdict is Verdict.DISCONTINUOUS

    def test_scaling_and_maximal(self):
        v = ppf_continuity_verdict([(2, fx.basilica_tree()), (1, fx.trivial_component())])
        assert v.verdict is Verdict.CONTINUOUS
        assert v.details["maximal_components"] == [0, 1]

    def test_only_maximal_components_matter(self):
        # chebyshev at period 3 gives log2/3 < log(phi)/1 from the airplane
        v = ppf_continuity_verdict([(1, fx.airplane_tree()), (3, fx.chebyshev_tree())])
        assert v.details["maximal_components"] == [0]
        assert v.h.value == pytest.approx(math.log(PHI))
        assert v.verdict is Verdict.CONTINUOUS

    def test_one_good_maximal_is_enough(self):
        v = ppf_continuity_verdict([(1, fx.chebyshev_tree()), (1, fx.chebyshev_fatou_variant())])
        assert v.verdict is Verdict.CONTINUOUS

    def test_bad_period(self):
        with pytest.raises(ValueError):
            ppf_continuity_verdict([(0, fx.airplane_tree())])

