import random

import pytest

from squareflux import builders
from squareflux.curves import core, crossing_number, polyline_from_traversal
from squareflux.homology import (
    apply_matrix, build_frame, class_of, invariant_sublattice, is_bounding_pair, is_nullhomologous,
    is_torelli, transvection, twist_action,
)
from squareflux.lattice import det, hermite, identity, integer_kernel, matmul, rank, solve_in_lattice
from squareflux.rational import Q
from squareflux.twists import TwistWord, apply_word, parse_word


def test_torus_frame(torus_frame):
    f = torus_frame
    assert len(f.cycles) == 2
    assert f.rank == 2
    assert sorted(map(sorted, f.pairing)) == [[-1, 0], [0, 1]]
    assert abs(det(f.form)) == 1


def test_ranks(g2_frame, g5_frame):
    assert g2_frame.rank == 4 and len(g2_frame.cycles) == 9
    assert g5_frame.rank == 10 and len(g5_frame.cycles) == 21


@pytest.mark.parametrize("frame", ["torus_frame", "g2_frame", "g5_frame"])
def test_pairing_skew_and_form_unimodular(frame, request):
    f = request.getfixturevalue(frame)
    n = len(f.pairing)
    assert all(f.pairing[i][j] == -f.pairing[j][i] for i in range(n) for j in range(n))
    assert rank(f.pairing) == f.rank
    assert abs(det(f.form)) == 1


def test_genus5_classes(g5, g5_frame):
    f = g5_frame
    a1, a2, b1, b2 = (f.core_classes[n] for n in ("a1", "a2", "b1", "b2"))
    assert not any(a2) and not any(b2)
    assert a1 == b1 and any(a1)
    assert is_nullhomologous(f, core(g5, g5.cylinder("a2")))


def test_torus_alpha_primitive(torus_frame):
    a = torus_frame.core_classes["a1"]
    assert sorted(map(abs, a)) == [0, 1]


def test_bounding_pair(g5, g5_frame, torus, torus_frame):
    cores = {n: core(g5, g5.cylinder(n)) for n in ("a1", "a2", "b1", "b2")}
    assert is_bounding_pair(g5_frame, cores["a1"], cores["b1"])
    assert not is_bounding_pair(g5_frame, cores["a2"], cores["b2"])
    a = core(torus, torus.cylinder("a1"))
    a_copy = core(torus, torus.cylinder("a1"), Q(1, 3))
    assert not is_bounding_pair(torus_frame, a, a_copy, same_isotopy_class=True)


def test_class_independent_of_routing(g5, g5_frame):
    for name in ("a1", "b1"):
        cyl = g5.cylinder(name)
        assert g5_frame.class_of(core(g5, cyl, Q(1, 3))) == g5_frame.class_of(core(g5, cyl, Q(3, 4)))


def test_class_additive(g5, g5_frame):
    f = g5_frame
    x, y = f.cycles[3], f.cycles[8]
    sx, sy = f.class_of(x), f.class_of(y)
    assert f.class_of(((x, 1), (y, 2))) == tuple(a + 2 * b for a, b in zip(sx, sy))
    assert f.class_of(x.reversed()) == tuple(-a for a in sx)


def test_pair_matches_crossing_number(g5, g5_frame):
    f = g5_frame
    gam = polyline_from_traversal(g5, builders.gamma())
    for name in ("a1", "b1"):
        c = core(g5, g5.cylinder(name))
        assert f.pair(f.class_of(c), f.class_of(gam)) == crossing_number(c, gam)


def test_seed_perturbation_gives_same_classes(g5):
    f1 = build_frame(g5)
    f2 = build_frame(g5, denominator=997)
    gam = polyline_from_traversal(g5, builders.gamma())
    # different frames, same intersection numbers with the cores
    for name in ("a1", "b1"):
        c = core(g5, g5.cylinder(name))
        assert f1.pair(f1.class_of(c), f1.class_of(gam)) == f2.pair(f2.class_of(c), f2.class_of(gam))
    assert f2.cycles_at(1) != f1.cycles_at(1)


def test_representative_has_the_class(g5_frame):
    f = g5_frame
    for i in range(f.rank):
        e = tuple(int(i == j) for j in range(f.rank))
        assert f.class_of(f.representative(e)) == e


def test_genus5_word_is_torelli(g5_frame):
    m = twist_action(g5_frame, builders.genus5_word())
    assert m == identity(10)
    assert is_torelli(m)
    assert len(invariant_sublattice(m)) == 10


def test_torus_anosov_action(torus_frame):
    m = twist_action(torus_frame, builders.torus_word())
    assert abs(m[0][0] + m[1][1]) == 3
    assert det(m) == 1
    assert invariant_sublattice(m) == []


def test_empty_word(g5_frame):
    m = twist_action(g5_frame, TwistWord())
    assert m == identity(10)
    assert len(invariant_sublattice(m)) == 10


def test_transvection_formula(torus_frame):
    f = torus_frame
    a, b = f.core_classes["a1"], f.core_classes["b1"]
    t = transvection(f, a, 1)
    # x -> x + <a, x> a
    assert apply_matrix(t, b) == tuple(bi + f.pair(a, b) * ai for ai, bi in zip(a, b))


@pytest.mark.parametrize("word", ["a1", "b1", "a1^-2", "b1^3", "a1*b1^-1", "b1^2*a1^-1*b1"])
def test_geometric_consistency_torus(torus, torus_frame, word):
    f = torus_frame
    w = parse_word(word)
    m = twist_action(f, w)
    for p in f.cycles:
        assert f.class_of(apply_word(torus, p, w).polyline) == apply_matrix(m, f.class_of(p))


def test_hermite_and_kernel():
    rnd = random.Random(3)
    for _ in range(20):
        a = [[rnd.randint(-4, 4) for _ in range(5)] for _ in range(4)]
        h, u, r = hermite(a)
        assert matmul(u, a) == h
        assert abs(det(u)) == 1
        assert r == rank(a)
        for v in integer_kernel(a):
            assert all(sum(x * y for x, y in zip(row, v)) == 0 for row in a)
        basis = h[:r]
        combo = [sum(3 * basis[0][j] - 2 * basis[-1][j] for _ in [0]) for j in range(5)]
        assert solve_in_lattice(basis, combo) is not None


def test_kernel_is_saturated():
    # x - 2y = 0 has primitive solution (2, 1)
    assert integer_kernel([[1, -2]]) in ([[2, 1]], [[-2, -1]])
