"""The example surfaces and twist words, embedded as validated data.

The two larger gluing tables were found by exhaustive search over cyclic
orders and flips; the search itself ships with the test suite, which checks
that it still reproduces the tables below.
"""
from __future__ import annotations

from typing import NamedTuple

from .curves import Traversal
from .rational import as_q
from .surface import SquareComplex, validate
from .twists import TwistWord


class Example(NamedTuple):
    complex: SquareComplex
    curves: dict  # role -> curve name
    gamma: Traversal | None = None


def torus() -> SquareComplex:
    """One square, one alpha and one beta curve meeting once."""
    return validate(SquareComplex(1, ("a1",), ((0,),), ("b1",), ((0,),), (1,)))


def torus_word() -> TwistWord:
    return TwistWord((("a1", 1), ("b1", -1)))


def genus2_block() -> SquareComplex:
    """Genus 2 filled by two separating curves meeting 8 times.

    The complement is two octagons and four squares.
    """
    return validate(SquareComplex(
        8,
        ("a2",), (tuple(range(8)),),
        ("b2",), ((0, 3, 6, 1, 4, 7, 2, 5),),
        (1, -1, 1, -1, 1, -1, 1, -1),
    ))


def genus2_word() -> TwistWord:
    return TwistWord((("a2", 1), ("b2", -1)))


_GENUS5_BETA2 = (3, 6, 9, 4, 7, 2, 5, 8, 0, 16, 13, 18, 15, 12, 17, 14, 11, 1)

# A curve crossing each of a1 and b1 once; gamma below is its image under the
# b2 twist, pulled straight inside every square.
_GAMMA_PREIMAGE = (
    (0, "E", "S", "1/5"),
    (8, "N", "E", "1/5"),
    (9, "W", "E", "1/5"),
    (10, "W", "E", "1/5"),
    (11, "W", "N", "1/5"),
    (1, "N", "W", "1/5"),
)

_GAMMA = (
    (0, "E", "S", "91/95"),
    (8, "N", "E", "1/5"),
    (9, "W", "S", "1/90"),
    (4, "S", "N", "14/15"),
    (7, "N", "S", "11/90"),
    (2, "S", "N", "37/45"),
    (5, "N", "S", "7/30"),
    (8, "S", "N", "32/45"),
    (0, "S", "N", "59/90"),
    (16, "N", "S", "2/5"),
    (13, "S", "N", "49/90"),
    (18, "N", "S", "23/45"),
    (15, "S", "N", "13/30"),
    (12, "N", "S", "28/45"),
    (17, "S", "N", "29/90"),
    (14, "N", "S", "11/15"),
    (11, "S", "N", "19/90"),
    (1, "N", "S", "38/45"),
    (3, "N", "S", "9/10"),
    (6, "S", "N", "2/45"),
    (9, "N", "E", "1/5"),
    (10, "W", "E", "1/5"),
    (11, "W", "S", "1/70"),
    (14, "S", "N", "32/35"),
    (17, "N", "S", "11/70"),
    (12, "S", "N", "66/85"),
    (15, "N", "S", "24/85"),
    (18, "S", "N", "56/85"),
    (13, "N", "S", "2/5"),
    (16, "S", "N", "46/85"),
    (0, "N", "S", "44/85"),
    (8, "N", "S", "49/85"),
    (5, "S", "N", "31/85"),
    (2, "N", "S", "59/85"),
    (7, "S", "N", "21/85"),
    (4, "N", "S", "69/85"),
    (9, "S", "N", "11/85"),
    (6, "N", "S", "79/85"),
    (3, "S", "N", "1/85"),
    (1, "S", "W", "1/5")
)


def _traversal(rows, name):
    return Traversal(tuple((s, a, b, as_q(t)) for s, a, b, t in rows), name)


def genus5_surface() -> SquareComplex:
    """Two copies of the genus 2 block joined by two tubes.

    ``a2`` and ``b2`` are the band sums of the copies' curves and stay
    separating; ``a1`` and ``b1`` run once through each tube and form a
    bounding pair.
    """
    return validate(SquareComplex(
        20,
        ("a1", "a2"), ((0, 1), tuple(range(2, 20))),
        ("b1", "b2"), ((10, 19), _GENUS5_BETA2),
        (1, -1, 1, -1, 1, -1, 1, -1, 1, -1, 1, 1, -1, 1, -1, 1, -1, 1, -1, -1),
    ))


def gamma_preimage() -> Traversal:
    return _traversal(_GAMMA_PREIMAGE, "gamma0")


def gamma() -> Traversal:
    return _traversal(_GAMMA, "gamma")


def genus5_example() -> Example:
    roles = {"alpha1": "a1", "alpha2": "a2", "beta1": "b1", "beta2": "b2"}
    return Example(genus5_surface(), roles, gamma())


def genus5_word() -> TwistWord:
    return TwistWord((("a2", 1), ("a1", 9), ("b1", -9), ("b2", -1)))
