import pytest
import table_search

from squareflux import builders
from squareflux.curves import core, crossing_points, is_simple, polyline_from_traversal, traversal_from_polyline
from squareflux.homology import is_bounding_pair
from squareflux.surface import faces, genus
from squareflux.twists import apply_twist


def test_torus():
    c = builders.torus()
    assert genus(c) == 1
    assert [f.half_size for f in faces(c)] == [2]
    assert [cyl.width for fam in ("alpha", "beta") for cyl in c.cylinders_by_family[fam]] == [1, 1]


def test_genus2_block(g2_frame):
    c = builders.genus2_block()
    assert genus(c) == 2
    assert sorted(f.half_size for f in faces(c)) == [2, 2, 2, 2, 4, 4]
    assert len(c.alpha_cycles[0]) == len(c.beta_cycles[0]) == 8
    assert not any(g2_frame.core_classes["a2"]) and not any(g2_frame.core_classes["b2"])


def test_genus5_postconditions(g5_frame):
    ex = builders.genus5_example()
    c = ex.complex
    assert ex.curves == {"alpha1": "a1", "alpha2": "a2", "beta1": "b1", "beta2": "b2"}
    assert c.n_squares == 20 and genus(c) == 5
    assert c.intersection_counts() == [[0, 2], [2, 16]]
    assert not any(g5_frame.core_classes["a2"]) and not any(g5_frame.core_classes["b2"])
    cores = {n: core(c, c.cylinder(n)) for n in ("a1", "b1")}
    assert is_bounding_pair(g5_frame, cores["a1"], cores["b1"])


def test_beta1_cuts_u2_into_two_rectangles(g5):
    u2 = g5.cylinder("a2").squares
    b1 = set(g5.cylinder("b1").squares)
    cuts = [i for i, s in enumerate(u2) if s in b1]
    assert len(cuts) == 2
    i, j = cuts
    first = [s for s in u2[i + 1:j]]
    second = [s for s in u2[j + 1:] + u2[:i]]
    # every square of U2 off beta1 is an a2 / b2 crossing
    assert len(first) == len(second) == 8


def test_gamma_meets_a1_and_b1_once_after_untwisting(g5):
    gam = polyline_from_traversal(g5, builders.gamma())
    assert is_simple(gam)
    back = apply_twist(g5, gam, "b2", -1).polyline
    assert is_simple(back)
    for name in ("a1", "b1"):
        assert crossing_points(back, core(g5, g5.cylinder(name))) == 1


def test_gamma_provenance(g5):
    g0 = polyline_from_traversal(g5, builders.gamma_preimage())
    for name in ("a1", "b1"):
        assert crossing_points(g0, core(g5, g5.cylinder(name))) == 1
    image = apply_twist(g5, g0, "b2", 1).polyline
    assert traversal_from_polyline(image, "gamma", straighten=True) == builders.gamma()


def test_genus5_word():
    w = builders.genus5_word()
    assert str(w) == "a2^1*a1^9*b1^-9*b2^-1"


def test_search_reproduces_embedded_tables():
    block = next(table_search.genus2_block_candidates())
    assert block == builders.genus2_block()
    assert next(table_search.double_with_bands(block)) == builders.genus5_surface()


def test_search_certifies_cut_properties():
    c = builders.genus5_surface()
    assert table_search.separates(c, "alpha", 1) and table_search.separates(c, "beta", 1)
    assert not table_search.separates(c, "alpha", 0) and not table_search.separates(c, "beta", 0)
    assert table_search.bounding_pair_cut(c)


@pytest.mark.parametrize("maker", [builders.torus, builders.genus2_block, builders.genus5_surface])
def test_builders_are_pure(maker):
    assert maker() == maker()
