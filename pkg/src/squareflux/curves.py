"""Closed curves on a square-tiled surface as exact polylines.

A :class:`Polyline` is a cyclic list of straight segments, each living in one
square and written in that square's alpha frame with exact rational
coordinates in ``[0, 1]^2``.  A :class:`Traversal` is the compact, user-facing
description: the squares visited, the sides crossed, and where on each exit
side the curve leaves.

Curves may be combined with integer multiplicities into a 1-cycle, written as
a tuple of ``(polyline, multiplicity)`` pairs.  Functions that accept curves
take either form.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

from .errors import CurveError, NotTransverse
from .rational import HALF, ONE, ZERO, Q, as_q, format_q
from .surface import Cylinder, SquareComplex


class Segment(NamedTuple):
    square: int
    p0: tuple
    p1: tuple


@dataclass(frozen=True)
class Polyline:
    segments: tuple

    def __len__(self):
        return len(self.segments)

    def reversed(self) -> "Polyline":
        return Polyline(tuple(Segment(s.square, s.p1, s.p0) for s in reversed(self.segments)))


@dataclass(frozen=True)
class Traversal:
    """Cyclic list of ``(square, entry side, exit side, t)``.

    ``t`` is the position of the exit point on the exit side: its x coordinate
    on N/S sides, its y coordinate on E/W sides.
    """

    steps: tuple
    name: str = ""


def side_point(side, u):
    if side == "N":
        return (u, ONE)
    if side == "S":
        return (u, ZERO)
    if side == "E":
        return (ONE, u)
    return (ZERO, u)


def point_side(p):
    """Sides of the unit square containing point ``p`` (empty if interior)."""
    x, y = p
    out = []
    if y == 1:
        out.append("N")
    if y == 0:
        out.append("S")
    if x == 1:
        out.append("E")
    if x == 0:
        out.append("W")
    return out


def side_param(side, p):
    return p[0] if side in ("N", "S") else p[1]


def as_cycle(curves):
    """Normalize a polyline, or ``(polyline, mult)`` pairs, to a tuple of pairs."""
    if isinstance(curves, Polyline):
        return ((curves, 1),)
    out = []
    for item in curves:
        if isinstance(item, Polyline):
            out.append((item, 1))
        else:
            pl, m = item
            if m:
                out.append((pl, int(m)))
    return tuple(out)


def check_polyline(c: SquareComplex, p: Polyline) -> Polyline:
    """Verify closure, gluing consistency and the absence of degenerate pieces."""
    segs = p.segments
    if not segs:
        raise CurveError("INCONSISTENT_TRAVERSAL", "empty polyline")
    for i, seg in enumerate(segs):
        if seg.p0 == seg.p1:
            raise CurveError("INCONSISTENT_TRAVERSAL", f"zero-length segment {i}")
        for pt in (seg.p0, seg.p1):
            if not (0 <= pt[0] <= 1 and 0 <= pt[1] <= 1):
                raise CurveError("INCONSISTENT_TRAVERSAL", f"segment {i} leaves its square")
            if len(point_side(pt)) > 1:
                raise NotTransverse(f"segment {i} runs through a cone point")
        nxt = segs[(i + 1) % len(segs)]
        if seg.square == nxt.square and seg.p1 == nxt.p0:
            continue
        sides = point_side(seg.p1)
        if not sides:
            raise CurveError("INCONSISTENT_TRAVERSAL", f"segment {i} is not glued to segment {i + 1}")
        t, _, u = c.glue_point(seg.square, sides[0], side_param(sides[0], seg.p1))
        t_side = c.gluing[seg.square, sides[0]][1]
        if t != nxt.square or side_point(t_side, u) != nxt.p0:
            raise CurveError("INCONSISTENT_TRAVERSAL", f"segment {i} is not glued to segment {i + 1}")
    return p


def polyline_from_traversal(c: SquareComplex, t: Traversal) -> Polyline:
    steps = t.steps
    if not steps:
        raise CurveError("INCONSISTENT_TRAVERSAL", "empty traversal")
    segs = []
    for i, (sq, entry, exit_, u) in enumerate(steps):
        if entry == exit_:
            raise CurveError("INCONSISTENT_TRAVERSAL", f"step {i} enters and leaves through {entry}")
        psq, _, pexit, pu = steps[i - 1]
        t2, side2, u2 = c.glue_point(psq, pexit, as_q(pu))
        if (t2, side2) != (sq, entry):
            raise CurveError(
                "INCONSISTENT_TRAVERSAL",
                f"step {i}: side {pexit} of square {psq} is glued to side {side2} of square {t2}, "
                f"not to side {entry} of square {sq}",
            )
        segs.append(Segment(sq, side_point(entry, u2), side_point(exit_, as_q(u))))
    return check_polyline(c, Polyline(tuple(segs)))


def traversal_from_polyline(p: Polyline, name: str = "", straighten: bool = False) -> Traversal:
    """Inverse of :func:`polyline_from_traversal` for polylines made of
    side-to-side chords (collinear pieces inside one square are merged).

    With ``straighten`` a run of pieces bending inside one square is replaced
    by the chord between its side points, a homotopy rel endpoints inside the
    square; callers check that the result is still simple.
    """
    def joined(chord, seg):
        return chord[0] == seg.square and chord[2] == seg.p0

    chords = []
    for seg in p.segments:
        if chords and joined(chords[-1], seg):
            if point_side(seg.p0):
                raise CurveError("INCONSISTENT_TRAVERSAL", "polyline touches a square side without crossing it")
            sq, a, _ = chords[-1]
            if not straighten and _orient(a, seg.p0, seg.p1) != 0:
                raise CurveError("INCONSISTENT_TRAVERSAL", "polyline bends inside a square")
            chords[-1] = (sq, a, seg.p1)
        else:
            chords.append((seg.square, seg.p0, seg.p1))
    if len(chords) > 1 and chords[0][0] == chords[-1][0] and not point_side(chords[0][1]):
        sq, a, b = chords.pop()
        if not straighten and _orient(a, b, chords[0][2]) != 0:
            raise CurveError("INCONSISTENT_TRAVERSAL", "polyline bends inside a square")
        chords[0] = (sq, a, chords[0][2])
    if straighten:
        chords = _remove_u_turns(chords)
    steps = []
    for sq, a, b in chords:
        ea, eb = point_side(a), point_side(b)
        if len(ea) != 1 or len(eb) != 1:
            raise CurveError("INCONSISTENT_TRAVERSAL", "chord does not run between square sides")
        steps.append((sq, ea[0], eb[0], side_param(eb[0], b)))
    return Traversal(tuple(steps), name)


def _remove_u_turns(chords):
    """Pull chords that leave through their entry side back across it."""
    chords = list(chords)
    changed = True
    while changed and len(chords) > 2:
        changed = False
        for i, (sq, a, b) in enumerate(chords):
            if point_side(a) == point_side(b):
                n = len(chords)
                prev, nxt = chords[i - 1], chords[(i + 1) % n]
                if prev[0] != nxt[0]:
                    raise CurveError("INCONSISTENT_TRAVERSAL", "chords around a turn lie in different squares")
                merged = (prev[0], prev[1], nxt[2])
                keep = [chords[k % n] for k in range(i + 2, i - 1 + n)]
                chords = [merged] + keep
                changed = True
                break
    return chords


def is_simple(p: Polyline) -> bool:
    """True when no two pieces of ``p`` cross or touch away from their shared ends."""
    by_sq = {}
    for i, seg in enumerate(p.segments):
        by_sq.setdefault(seg.square, []).append(i)
    n = len(p.segments)
    for idx in by_sq.values():
        for x, i in enumerate(idx):
            for j in idx[x + 1:]:
                a, b = p.segments[i], p.segments[j]
                adjacent = (j - i) % n == 1 or (i - j) % n == 1
                try:
                    if segment_crossing(a.p0, a.p1, b.p0, b.p1):
                        return False
                except NotTransverse:
                    if not adjacent:
                        return False
                    # consecutive pieces share one endpoint; anything more is an overlap
                    shared = a.p1 if a.p1 == b.p0 else a.p0
                    other = b.p1 if a.p1 == b.p0 else b.p0
                    if _orient(a.p0, a.p1, other) == 0 and _on_segment(a.p0, a.p1, other) \
                            or _orient(b.p0, b.p1, a.p0 if shared == a.p1 else a.p1) == 0 \
                            and _on_segment(b.p0, b.p1, a.p0 if shared == a.p1 else a.p1):
                        return False
    return True


def core_traversal(c: SquareComplex, cyl: Cylinder, t=HALF) -> Traversal:
    """The core of a cylinder, oriented along its family's direction."""
    if cyl.family == "alpha":
        steps = tuple((s, "W", "E", t) for s in cyl.squares)
    else:
        steps = tuple(
            (s, "S", "N", t) if c.flips[s] == 1 else (s, "N", "S", 1 - t) for s in cyl.squares
        )
    return Traversal(steps, cyl.name)


def core(c: SquareComplex, cyl: Cylinder, t=HALF) -> Polyline:
    return polyline_from_traversal(c, core_traversal(c, cyl, t))


# -- charts --------------------------------------------------------------

def chart_point(c: SquareComplex, cyl: Cylinder, square, p):
    """Alpha-frame point of ``square`` -> coordinates in the cylinder chart.

    Alpha charts are ``[0, width] x [0, 1]``, beta charts ``[0, 1] x [0, width]``;
    squares with flip -1 are rotated by pi inside beta charts.
    """
    off = cyl.offsets[square]
    x, y = p
    if cyl.family == "alpha":
        return (off + x, y)
    if c.flips[square] == 1:
        return (x, off + y)
    return (1 - x, off + 1 - y)


def from_chart(c: SquareComplex, cyl: Cylinder, q, square=None):
    """Inverse of :func:`chart_point`; the square is read off the chart coordinate
    unless given (needed for points on a grid line)."""
    X, Y = q
    if cyl.family == "alpha":
        if square is None:
            square = cyl.squares[int(X // 1) % cyl.width]
        off = cyl.offsets[square]
        return square, (X - off, Y)
    if square is None:
        square = cyl.squares[int(Y // 1) % cyl.width]
    off = cyl.offsets[square]
    if c.flips[square] == 1:
        return square, (X, Y - off)
    return square, (1 - X, off + 1 - Y)


def to_chart(c: SquareComplex, cyl: Cylinder, p) -> list:
    """Chart coordinates of the segments of ``p`` lying in ``cyl``.

    Returns ``(segment index, start, end)`` triples.
    """
    out = []
    for i, seg in enumerate(p.segments):
        if seg.square in cyl.offsets:
            out.append((i, chart_point(c, cyl, seg.square, seg.p0), chart_point(c, cyl, seg.square, seg.p1)))
    return out


# -- intersections ---------------------------------------------------------

def _orient(a, b, p):
    return (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])


def _on_segment(a, b, p):
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def segment_crossing(a0, a1, b0, b1):
    """Sign of a transverse crossing of two segments, 0 if disjoint.

    Raises :class:`NotTransverse` for touching or overlapping segments.
    """
    d1 = _orient(b0, b1, a0)
    d2 = _orient(b0, b1, a1)
    d3 = _orient(a0, a1, b0)
    d4 = _orient(a0, a1, b1)
    if d1 * d2 < 0 and d3 * d4 < 0:
        cr = (a1[0] - a0[0]) * (b1[1] - b0[1]) - (a1[1] - a0[1]) * (b1[0] - b0[0])
        return 1 if cr > 0 else -1
    if (d1 == 0 and _on_segment(b0, b1, a0)) or (d2 == 0 and _on_segment(b0, b1, a1)) \
            or (d3 == 0 and _on_segment(a0, a1, b0)) or (d4 == 0 and _on_segment(a0, a1, b1)):
        raise NotTransverse("segments touch or overlap")
    return 0


def _by_square(cycle):
    out = {}
    for pl, m in cycle:
        for seg in pl.segments:
            out.setdefault(seg.square, []).append((seg.p0, seg.p1, m))
    return out


def crossing_number(p, q) -> int:
    """Algebraic intersection number of two curves (or 1-cycles).

    A crossing where ``p`` runs east and ``q`` runs north counts +1.
    """
    bp = _by_square(as_cycle(p))
    bq = _by_square(as_cycle(q))
    total = 0
    for sq, segs in bp.items():
        other = bq.get(sq)
        if not other:
            continue
        for a0, a1, ma in segs:
            ax0, ax1 = min(a0[0], a1[0]), max(a0[0], a1[0])
            ay0, ay1 = min(a0[1], a1[1]), max(a0[1], a1[1])
            for b0, b1, mb in other:
                if max(b0[0], b1[0]) < ax0 or min(b0[0], b1[0]) > ax1 \
                        or max(b0[1], b1[1]) < ay0 or min(b0[1], b1[1]) > ay1:
                    continue
                sgn = segment_crossing(a0, a1, b0, b1)
                if sgn:
                    total += sgn * ma * mb
    return total


def crossing_points(p, q) -> int:
    """Number of transverse crossing points (ignoring signs and multiplicities)."""
    bp = _by_square(as_cycle(p))
    bq = _by_square(as_cycle(q))
    total = 0
    for sq, segs in bp.items():
        for a0, a1, _ in segs:
            for b0, b1, _ in bq.get(sq, ()):
                if segment_crossing(a0, a1, b0, b1):
                    total += 1
    return total


# -- curve files --------------------------------------------------------------

_STEP = re.compile(r"^\(\s*(\d+)\s*,\s*([NSEWnsew])\s*,\s*([NSEWnsew])\s*(?:,\s*t\s*=\s*([0-9]+(?:/[0-9]+)?)\s*)?\)$")


def parse_curves(text: str) -> list:
    """Parse a curve file: one or more ``curve:`` blocks of traversal steps."""
    out = []
    cur = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("curve"):
            head, _, name = line.partition(":")
            if head.strip().lower() != "curve":
                raise CurveError("SYNTAX", f"unexpected line {line!r}", lineno)
            cur = (name.strip(), [])
            out.append(cur)
            continue
        m = _STEP.match(line)
        if m is None or cur is None:
            raise CurveError("SYNTAX", f"bad traversal step {line!r}", lineno)
        t = as_q(m.group(4)) if m.group(4) else HALF
        if not 0 < t < 1:
            raise CurveError("SYNTAX", "side parameter must lie strictly between 0 and 1", lineno)
        cur[1].append((int(m.group(1)), m.group(2).upper(), m.group(3).upper(), t))
    if not out:
        raise CurveError("SYNTAX", "no 'curve:' block")
    return [Traversal(tuple(steps), name) for name, steps in out]


def format_curves(traversals) -> str:
    lines = []
    for tr in traversals:
        lines.append(f"curve: {tr.name}".rstrip())
        for sq, a, b, t in tr.steps:
            lines.append(f"({sq}, {a}, {b}, t={format_q(t)})")
    return "\n".join(lines) + "\n"
