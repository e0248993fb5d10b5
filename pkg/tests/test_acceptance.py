"""Acceptance criteria, one test each. Every test prints a PASS/FAIL line (run with -s to see them)."""
import math
import random
import time
from fractions import Fraction

import pytest

from coreentropy import fixtures as fx
from coreentropy.circle import Angle, tau
from coreentropy.hubbard import Verdict, forest_entropy, poly_continuity_verdict
from coreentropy.markov import invariant_split, power_system, subdivide_edge, system_entropy
from coreentropy.newton import cubic_verdict, extended_graph_entropy, multiplier_check, newton_core_entropy
from coreentropy.portrait import unlinked_classes, validate_portrait
from coreentropy.scan import scan_continuity
from coreentropy.thurston import thurston_entropy
from strategies import random_portrait

LOG_PHI = math.log((1 + 5 ** 0.5) / 2)


def report(n, ok, detail):
    print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, detail


def test_1_thurston_matches_trees():
    expected = {"chebyshev": math.log(2), "airplane": LOG_PHI, "rabbit": 0.0, "basilica": 0.0}
    t0 = time.perf_counter()
    worst = 0.0
    for name, (portrait, tree) in fx.TREES.items():
        h1 = thurston_entropy(portrait()).value
        h2 = forest_entropy(tree()).value
        worst = max(worst, abs(h1 - h2), abs(h1 - expected[name]))
    elapsed = time.perf_counter() - t0
    report(1, worst <= 1e-9 and elapsed < 1, f"max deviation {worst:.2e}, {elapsed:.3f}s")


def _bisect(g, lo, hi):
    for _ in range(200):
        mid = (lo + hi) / 2
        if g(lo) * g(mid) <= 0:
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def test_2_z2_plus_i():
    r = _bisect(lambda x: x ** 3 - x - 2, 1.0, 2.0)
    h = thurston_entropy(fx.z2_plus_i_portrait()).value
    report(2, abs(h - math.log(r)) <= 1e-9, f"h={h:.12f}, log r={math.log(r):.12f}, r={r:.6f}")


def test_3_d_parts_suite():
    rng = random.Random(20260301)
    failures, made = 0, 0
    while made < 200:
        d = 2 + made % 4
        p = random_portrait(rng, d)
        if p is None:
            continue
        p = validate_portrait(d, p.blocks)
        made += 1
        cls = unlinked_classes(p)
        if len(cls) != d or any(c.length != Fraction(1, d) for c in cls):
            failures += 1
            continue
        for c in cls:
            pts = []
            total = c.length
            for k in range(50):
                # k-th of 50 evenly spaced interior points, walked along the class's arcs
                t = total * Fraction(2 * k + 1, 100)
                for s, e in c.intervals:
                    span = (e.value - s.value) % 1 or Fraction(1)
                    if t < span:
                        pts.append(Angle(s.value + t))
                        break
                    t -= span
            imgs = [tau(d, x).value for x in pts]
            # images in class order must wind once around the circle: at most one descent
            descents = sum(1 for a, b in zip(imgs, imgs[1:]) if b <= a)
            if len(set(imgs)) != 50 or descents > 1:
                failures += 1
                break
    report(3, failures == 0, f"{made} portraits, {failures} failures")


def _fixture_systems():
    out = {name: t().system for name, (_, t) in fx.TREES.items()}
    out["period_two_pair"] = fx.period_two_pair().system
    out["two_end_forest"] = fx.two_end_forest().system
    out["newton_graph"] = fx.newton_extended_graph()[0]
    return out


def test_4_entropy_algebra():
    worst_pow = worst_sub = 0.0
    for s in _fixture_systems().values():
        h = system_entropy(s).value
        for k in (2, 3):
            worst_pow = max(worst_pow, abs(system_entropy(power_system(s, k)).value - k * h))
        for e in s.edge_ids:
            for j in range(1, len(s.edge_cover[e])):
                worst_sub = max(worst_sub, abs(system_entropy(subdivide_edge(s, e, j)).value - h))
    g, _ = fx.newton_extended_graph()
    split = invariant_split(g, [["D1"], ["D2", "R", "R2"], ["A", "B"]])
    exact = split.maximum.value == split.whole.value
    ok = worst_pow <= 2e-9 and worst_sub <= 1e-9 and exact
    report(4, ok, f"power {worst_pow:.1e}, subdivision {worst_sub:.1e}, split exact={exact}")


def test_5_newton_formula():
    h = newton_core_entropy(fx.newton([(2, fx.airplane_portrait())])).value
    empty = newton_core_entropy(fx.newton()).value
    g = extended_graph_entropy(fx.newton(graph=True))
    gap = abs(g.full.value - g.forest.value)
    ok = abs(h - 0.240606) <= 1e-6 and empty == 0 and gap <= 1e-9
    report(5, ok, f"h={h:.9f}, empty={empty}, graph gap {gap:.1e}")


def test_6_continuity_verdicts():
    cheb = poly_continuity_verdict(fx.chebyshev_tree())
    basil = poly_continuity_verdict(fx.basilica_tree())
    cubic = [
        cubic_verdict(fx.newton()).verdict,
        cubic_verdict(fx.newton([(2, fx.basilica_tree())])).verdict,
        cubic_verdict(fx.newton([(1, fx.chebyshev_tree())])).verdict,
    ]
    ok = (cheb.verdict is Verdict.DISCONTINUOUS and cheb.mu.value == 0
          and basil.verdict is Verdict.CONTINUOUS
          and cubic == [Verdict.CONTINUOUS, Verdict.CONTINUOUS, Verdict.DISCONTINUOUS])
    report(6, ok, f"chebyshev {cheb.verdict.value} mu={cheb.mu.value}, basilica {basil.verdict.value}, "
                  f"cubic {[v.value for v in cubic]}")


def test_7_airplane_scan():
    t0 = time.perf_counter()
    res = scan_continuity(fx.airplane_scan())
    elapsed = time.perf_counter() - t0
    tail = [round(r.gap, 6) for r in res.rows[-4:]]
    ok = res.final_gap < 0.05 and res.tail_non_increasing(4) and elapsed < 5
    report(7, ok, f"final gap {res.final_gap:.2e}, last four gaps {tail}, {elapsed:.2f}s")


def test_8_multipliers():
    r = multiplier_check([0j, 1 + 0j, -1 + 0j], [1, 1, 1])
    roots = max(abs(row["multiplier"]) for row in r["roots"])
    inf = abs(r["infinity"]["multiplier"] - 1.5)
    report(8, roots < 1e-6 and inf <= 1e-6, f"max root multiplier {roots:.1e}, infinity deviation {inf:.1e}")
