import re

from coreentropy import fixtures as fx
from coreentropy.render import portrait_svg, render_portrait


def hulls(svg):
    return re.findall(r'<(line|polygon) class="hull"[^>]*>', svg)


def test_chebyshev_one_chord():
    svg = portrait_svg(fx.chebyshev_portrait())
    assert hulls(svg) == ["line"]
    assert svg.count('class="unlinked-class"') == 2
    assert ">1/4<" in svg and ">3/4<" in svg


def test_fig3_shared_point():
    svg = portrait_svg(fx.cubic_two_block_portrait())
    chords = re.findall(r'x1="([^"]+)" y1="([^"]+)" x2="([^"]+)" y2="([^"]+)"', svg.split('class="tick"')[0])
    ends = [{(a, b), (c, d)} for a, b, c, d in chords]
    assert len(ends) == 2 and len(ends[0] & ends[1]) == 1
    assert svg.count(">1/3<") == 1


def test_quintic_two_disjoint_hulls():
    svg = portrait_svg(fx.quintic_two_block_portrait())
    assert hulls(svg) == ["polygon", "polygon"]
    pts = [set(m.split()) for m in re.findall(r'points="([^"]+)"', svg)]
    assert not pts[0] & pts[1]
    assert svg.count('class="unlinked-class"') == 5


def test_deterministic(tmp_path):
    a = render_portrait(fx.airplane_portrait(), tmp_path / "a.svg").read_bytes()
    b = render_portrait(fx.airplane_portrait(), tmp_path / "b.svg").read_bytes()
    assert a == b and a.startswith(b"<svg")
