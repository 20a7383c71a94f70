import pytest

from squareflux.errors import SurfaceError
from squareflux.surface import (
    SquareComplex, area, cylinders, euler_characteristic, faces, format_surface, genus, parse_surface,
)

TORUS_TEXT = """\
# the one-square torus
squares: 1
alpha:
a1: [0]
beta:
b1: [0]
flips: [+]
"""


def test_parse_torus():
    c = parse_surface(TORUS_TEXT)
    assert c.n_squares == 1
    assert genus(c) == 1
    assert [f.half_size for f in faces(c)] == [2]


def test_torus_cylinders(torus):
    assert [(cyl.family, cyl.width) for cyl in cylinders(torus)] == [("alpha", 1), ("beta", 1)]


@pytest.mark.parametrize("text, kind, line", [
    ("squares: 4\nalpha:\na: [0, 1, 2, 3]\nbeta:\nb: [0, 1, 2]\nflips: [+,+,+,+]\n", "MISSING_SQUARE", None),
    ("squares: 2\nalpha:\na: [0, 1, 1]\nbeta:\nb: [0, 1]\nflips: [+,+]\n", "DUPLICATE_SQUARE", 3),
    ("squares: 1\nalpha:\na: [0]\nbeta:\nb: [0]\nflips: [x]\n", "BAD_FLIP", 6),
    ("squares: 1\nalpha:\na: [0]\nbeta:\nb: [0]\nflips: [+,-]\n", "BAD_FLIP", None),
    ("squares: one\n", "SYNTAX", 1),
    ("squares: 1\nalpha:\na = [0]\n", "SYNTAX", 3),
    ("squares: 1\nalpha:\na: [0]\nbeta:\nb: [0]\n", "SYNTAX", None),
])
def test_parse_errors(text, kind, line):
    with pytest.raises(SurfaceError) as ei:
        parse_surface(text)
    assert ei.value.code == f"surface.{kind}"
    assert ei.value.line == line


def test_missing_square_three_absent_from_beta():
    text = "squares: 4\nalpha:\na: [0, 1, 2, 3]\nbeta:\nb: [0, 1, 2]\nflips: [+,+,+,+]\n"
    with pytest.raises(SurfaceError, match="square 3"):
        parse_surface(text)


def test_non_filling_bigons():
    c = SquareComplex(2, ("a",), ((0, 1),), ("b",), ((1, 0),), (1, -1))
    with pytest.raises(SurfaceError) as ei:
        faces(c)
    assert ei.value.kind == "NON_FILLING"


def test_disconnected():
    c = SquareComplex(2, ("a", "d"), ((0,), (1,)), ("b", "c"), ((0,), (1,)), (1, 1))
    with pytest.raises(SurfaceError) as ei:
        genus(c)
    assert ei.value.kind == "DISCONNECTED"


def test_constructor_checks():
    with pytest.raises(SurfaceError, match="BAD_FLIP"):
        SquareComplex(1, ("a",), ((0,),), ("b",), ((0,),), (0,))
    with pytest.raises(SurfaceError, match="SYNTAX"):
        SquareComplex(0, (), (), (), (), ())


def test_genus2_block_faces(g2):
    assert genus(g2) == 2
    assert sorted(f.half_size for f in faces(g2)) == [2, 2, 2, 2, 4, 4]
    assert [cyl.width for cyl in cylinders(g2)] == [8, 8]


def test_genus5_faces_and_widths(g5):
    fs = faces(g5)
    assert len(fs) == 12
    assert euler_characteristic(g5) == -8
    assert genus(g5) == 5
    assert [cyl.width for cyl in g5.cylinders_by_family["alpha"]] == [2, 18]
    assert [cyl.width for cyl in g5.cylinders_by_family["beta"]] == [2, 18]


@pytest.mark.parametrize("name", ["torus", "g2", "g5"])
def test_invariants(name, request):
    c = request.getfixturevalue(name)
    n = c.n_squares
    for fam in ("alpha", "beta"):
        cyls = c.cylinders_by_family[fam]
        assert sum(cyl.width for cyl in cyls) == n
        assert sorted(s for cyl in cyls for s in cyl.squares) == list(range(n))
    assert sum(2 * f.half_size for f in faces(c)) == 4 * n
    assert area(c) == 1
    assert parse_surface(format_surface(c)) == c


def test_gluing_is_an_involution(g5):
    for (s, side), (t, side2) in g5.gluing.items():
        assert g5.gluing[t, side2] == (s, side)
