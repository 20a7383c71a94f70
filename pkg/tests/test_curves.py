from fractions import Fraction

import pytest

from squareflux import builders
from squareflux.curves import (
    Polyline, Segment, Traversal, chart_point, core, crossing_number, crossing_points, format_curves,
    from_chart, is_simple, parse_curves, polyline_from_traversal, to_chart, traversal_from_polyline,
)
from squareflux.errors import CurveError, NotTransverse
from squareflux.rational import Q
from squareflux.twists import apply_twist


def test_torus_alpha_core_is_one_segment(torus):
    p = polyline_from_traversal(torus, Traversal(((0, "W", "E", Q(1, 2)),)))
    assert p.segments == (Segment(0, (0, Q(1, 2)), (1, Q(1, 2))),)


def test_unglued_traversal_rejected(g5):
    t = Traversal(((0, "W", "E", Q(1, 2)), (5, "W", "E", Q(1, 2))))
    with pytest.raises(CurveError) as ei:
        polyline_from_traversal(g5, t)
    assert ei.value.code == "curves.INCONSISTENT_TRAVERSAL"


def test_entry_equals_exit_rejected(torus):
    with pytest.raises(CurveError, match="INCONSISTENT_TRAVERSAL"):
        polyline_from_traversal(torus, Traversal(((0, "W", "W", Q(1, 2)),)))


def test_gamma_traversal_closes(g5):
    p = polyline_from_traversal(g5, builders.gamma())
    assert len(p) == 40
    assert is_simple(p)


def test_chart_examples(torus, g5):
    a = torus.cylinder("a1")
    assert chart_point(torus, a, 0, (Q(1, 2), Q(1, 2))) == (Q(1, 2), Q(1, 2))
    a2 = g5.cylinder("a2")
    sq = a2.squares[7]
    assert chart_point(g5, a2, sq, (Q(1, 3), Q(1, 5))) == (7 + Q(1, 3), Q(1, 5))
    b2 = g5.cylinder("b2")
    down = next(s for s in b2.squares if g5.flips[s] == -1)
    off = b2.offsets[down]
    assert chart_point(g5, b2, down, (Q(1, 3), Q(1, 5))) == (Q(2, 3), off + Q(4, 5))


@pytest.mark.parametrize("name", ["a1", "a2", "b1", "b2"])
def test_chart_round_trip(g5, name):
    cyl = g5.cylinder(name)
    pt = (Q(2, 7), Q(3, 11))
    for s in cyl.squares:
        assert from_chart(g5, cyl, chart_point(g5, cyl, s, pt)) == (s, pt)


def test_to_chart_lists_segments_in_cylinder(g5):
    cyl = g5.cylinder("a1")
    p = polyline_from_traversal(g5, builders.gamma())
    inside = to_chart(g5, cyl, p)
    assert inside and all(p.segments[i].square in cyl.squares for i, _, _ in inside)


def test_torus_crossing_sign(torus):
    alpha = core(torus, torus.cylinder("a1"))
    beta = core(torus, torus.cylinder("b1"), Q(1, 3))
    # alpha runs east, beta runs north: +1
    assert crossing_number(alpha, beta) == 1
    assert crossing_number(beta, alpha) == -1


def test_parallel_copy_is_disjoint(g5):
    cyl = g5.cylinder("a2")
    assert crossing_number(core(g5, cyl), core(g5, cyl, Q(1, 3))) == 0
    assert crossing_points(core(g5, cyl), core(g5, cyl, Q(1, 3))) == 0


def test_touching_is_not_transverse(torus):
    alpha = core(torus, torus.cylinder("a1"))
    with pytest.raises(NotTransverse):
        crossing_number(alpha, alpha)


def test_cone_point_rejected(torus):
    bad = Polyline((Segment(0, (0, 0), (1, 1)),))
    with pytest.raises(NotTransverse):
        from squareflux.curves import check_polyline
        check_polyline(torus, bad)


def test_curve_file_round_trip(g5):
    text = format_curves([builders.gamma(), builders.gamma_preimage()])
    back = parse_curves(text)
    assert [t.name for t in back] == ["gamma", "gamma0"]
    assert back[0].steps == builders.gamma().steps
    assert format_curves(back) == text


def test_curve_file_default_parameter():
    (t,) = parse_curves("curve: x\n(0, W, E)\n")
    assert t.steps == ((0, "W", "E", Q(1, 2)),)


@pytest.mark.parametrize("text", ["(0, W, E)\n", "curve: x\n(0, W)\n", "curve: x\n(0, W, E, t=3/2)\n", ""])
def test_curve_file_errors(text):
    with pytest.raises(CurveError, match="SYNTAX"):
        parse_curves(text)


def test_traversal_round_trip(g5):
    t = builders.gamma()
    p = polyline_from_traversal(g5, t)
    assert traversal_from_polyline(p, "gamma") == t


def test_straightened_twist_image_is_a_simple_traversal(g5):
    g0 = polyline_from_traversal(g5, builders.gamma_preimage())
    image = apply_twist(g5, g0, "b2", 1).polyline
    with pytest.raises(CurveError):
        traversal_from_polyline(image)
    t = traversal_from_polyline(image, "gamma", straighten=True)
    assert t == builders.gamma()


def test_crossing_number_invariant_under_rerouting(g5, g5_frame):
    gam = polyline_from_traversal(g5, builders.gamma())
    for name in ("a1", "b1", "a2", "b2"):
        cyl = g5.cylinder(name)
        assert crossing_number(gam, core(g5, cyl, Q(1, 3))) == crossing_number(gam, core(g5, cyl, Q(5, 7)))


def test_fraction_parameters_accepted(torus):
    p = polyline_from_traversal(torus, Traversal(((0, "W", "E", Fraction(1, 3)),)))
    assert p.segments[0].p1 == (1, Q(1, 3))
