"""Square-tiled surfaces built from a filling pair of multicurves.

A filling pair ``alpha``, ``beta`` of multicurves on a closed oriented surface
determines a square tiling: one unit square per intersection point.  Square
``s`` is drawn in its *alpha frame*, where the alpha strand runs west to east
along ``y = 1/2`` and the beta strand runs along ``x = 1/2``, upward when
``flips[s] == +1`` and downward when ``flips[s] == -1``.

East/west sides are glued by translation following the alpha cycles.  North and
south sides are glued following the beta cycles; the gluing is a translation
when the two squares have the same flip and a rotation by pi otherwise.  Any
such data therefore describes an oriented half-translation surface; what has
to be checked is that it is connected and that the pair actually fills.

The corners of the squares are the cone points of the flat metric, and they
correspond one-to-one with the complementary regions of ``alpha | beta``.
A region that is a ``2n``-gon shows up as a corner orbit of length ``2n``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

from .errors import SurfaceError

SIDES = ("N", "E", "S", "W")
OPPOSITE = {"N": "S", "S": "N", "E": "W", "W": "E"}

# corner -> side crossed when turning counterclockwise about that corner
_CORNER_SIDE = {(1, 1): "E", (0, 1): "N", (0, 0): "W", (1, 0): "S"}


@dataclass(frozen=True)
class Cylinder:
    """A maximal cylinder of one family (``"alpha"`` or ``"beta"``)."""

    family: str
    index: int
    name: str
    squares: tuple

    @property
    def width(self) -> int:
        return len(self.squares)

    @cached_property
    def offsets(self) -> dict:
        return {s: i for i, s in enumerate(self.squares)}

    @property
    def key(self):
        return (self.family, self.index)


@dataclass(frozen=True)
class Face:
    """A complementary region of ``alpha | beta``, seen as a corner orbit.

    ``corners`` lists ``(square, (cx, cy))`` in counterclockwise order around
    the cone point; the region is a ``2n``-gon with ``n = half_size``.
    """

    corners: tuple

    @property
    def half_size(self) -> int:
        return len(self.corners) // 2


@dataclass(frozen=True)
class SquareComplex:
    n_squares: int
    alpha_names: tuple
    alpha_cycles: tuple
    beta_names: tuple
    beta_cycles: tuple
    flips: tuple

    def __post_init__(self):
        n = self.n_squares
        if not isinstance(n, int) or n <= 0:
            raise SurfaceError("SYNTAX", "the number of squares must be a positive integer")
        if len(self.alpha_names) != len(self.alpha_cycles) or len(self.beta_names) != len(self.beta_cycles):
            raise SurfaceError("SYNTAX", "every cycle needs exactly one name")
        names = list(self.alpha_names) + list(self.beta_names)
        if len(set(names)) != len(names):
            raise SurfaceError("SYNTAX", "curve names must be distinct")
        for family, cycles in (("alpha", self.alpha_cycles), ("beta", self.beta_cycles)):
            if not cycles:
                raise SurfaceError("SYNTAX", f"{family} has no cycles")
            seen = set()
            for cyc in cycles:
                if not cyc:
                    raise SurfaceError("SYNTAX", f"empty {family} cycle")
                for s in cyc:
                    if not 0 <= s < n:
                        raise SurfaceError("MISSING_SQUARE", f"square {s} out of range in {family}")
                    if s in seen:
                        raise SurfaceError("DUPLICATE_SQUARE", f"square {s} repeated in {family}")
                    seen.add(s)
            if len(seen) != n:
                missing = min(set(range(n)) - seen)
                raise SurfaceError("MISSING_SQUARE", f"square {missing} absent from {family}")
        if len(self.flips) != n or any(f not in (1, -1) for f in self.flips):
            raise SurfaceError("BAD_FLIP", "need one flip in {+1, -1} per square")

    # -- combinatorics -------------------------------------------------

    @cached_property
    def _succ(self):
        an, ap, bn, bp = [0] * self.n_squares, [0] * self.n_squares, [0] * self.n_squares, [0] * self.n_squares
        for cyc in self.alpha_cycles:
            for i, s in enumerate(cyc):
                an[s] = cyc[(i + 1) % len(cyc)]
                ap[s] = cyc[i - 1]
        for cyc in self.beta_cycles:
            for i, s in enumerate(cyc):
                bn[s] = cyc[(i + 1) % len(cyc)]
                bp[s] = cyc[i - 1]
        return an, ap, bn, bp

    @cached_property
    def gluing(self) -> dict:
        """Map ``(square, side) -> (square', side')``.

        The gluing is a rotation by pi exactly when ``side == side'``.
        """
        an, ap, bn, bp = self._succ
        fl = self.flips
        table = {}
        for s in range(self.n_squares):
            table[s, "E"] = (an[s], "W")
            table[s, "W"] = (ap[s], "E")
            # side through which beta leaves / enters s
            out_side, in_side = ("N", "S") if fl[s] == 1 else ("S", "N")
            t = bn[s]
            table[s, out_side] = (t, "S" if fl[t] == 1 else "N")
            t = bp[s]
            table[s, in_side] = (t, "N" if fl[t] == 1 else "S")
        return table

    def glue_point(self, square, side, u):
        """Image of the point at parameter ``u`` on ``side`` of ``square``.

        Side parameters are the x coordinate on N/S sides and the y coordinate
        on E/W sides, in the alpha frame.
        """
        t, side2 = self.gluing[square, side]
        return t, side2, (1 - u if side2 == side else u)

    @cached_property
    def cylinders_by_family(self) -> dict:
        return {
            "alpha": tuple(
                Cylinder("alpha", i, name, tuple(cyc))
                for i, (name, cyc) in enumerate(zip(self.alpha_names, self.alpha_cycles))
            ),
            "beta": tuple(
                Cylinder("beta", i, name, tuple(cyc))
                for i, (name, cyc) in enumerate(zip(self.beta_names, self.beta_cycles))
            ),
        }

    @cached_property
    def alpha_of(self) -> tuple:
        """Square -> (alpha cylinder index, position along it)."""
        out = [None] * self.n_squares
        for i, cyc in enumerate(self.alpha_cycles):
            for p, s in enumerate(cyc):
                out[s] = (i, p)
        return tuple(out)

    @cached_property
    def beta_of(self) -> tuple:
        out = [None] * self.n_squares
        for i, cyc in enumerate(self.beta_cycles):
            for p, s in enumerate(cyc):
                out[s] = (i, p)
        return tuple(out)

    def cylinder(self, name) -> Cylinder:
        for cyls in self.cylinders_by_family.values():
            for cyl in cyls:
                if cyl.name == name:
                    return cyl
        raise KeyError(name)

    def intersection_counts(self) -> list:
        """Matrix ``[i][j] = #(alpha_i cap beta_j)``."""
        counts = [[0] * len(self.beta_cycles) for _ in self.alpha_cycles]
        for s in range(self.n_squares):
            counts[self.alpha_of[s][0]][self.beta_of[s][0]] += 1
        return counts


def faces(c: SquareComplex) -> list:
    """Corner orbits of the counterclockwise corner walk.

    Raises ``NON_FILLING`` if some region is a bigon.
    """
    seen = set()
    out = []
    for s in range(c.n_squares):
        for corner in ((1, 1), (0, 1), (0, 0), (1, 0)):
            if (s, corner) in seen:
                continue
            orbit = []
            cur = (s, corner)
            while cur not in seen:
                seen.add(cur)
                orbit.append(cur)
                sq, (cx, cy) = cur
                side = _CORNER_SIDE[cx, cy]
                t, side2 = c.gluing[sq, side]
                if side in ("E", "W"):
                    nx, ny = 1 - cx, cy
                elif side2 == side:
                    nx, ny = 1 - cx, cy
                else:
                    nx, ny = cx, 1 - cy
                cur = (t, (nx, ny))
            if cur != (s, corner):
                raise SurfaceError("NON_FILLING", "corner walk does not close up")
            if len(orbit) % 2:
                raise SurfaceError("NON_FILLING", "odd corner orbit")
            out.append(Face(tuple(orbit)))
    if sum(len(f.corners) for f in out) != 4 * c.n_squares:
        raise SurfaceError("NON_FILLING", "corner walk does not partition the corners")
    bad = [f for f in out if f.half_size < 2]
    if bad:
        raise SurfaceError("NON_FILLING", f"{len(bad)} complementary bigon(s)")
    return out


def is_connected(c: SquareComplex) -> bool:
    an, _, bn, _ = c._succ
    seen = {0}
    stack = [0]
    while stack:
        s = stack.pop()
        for t in (an[s], bn[s], c._succ[1][s], c._succ[3][s]):
            if t not in seen:
                seen.add(t)
                stack.append(t)
    return len(seen) == c.n_squares


def euler_characteristic(c: SquareComplex) -> int:
    # V = N crossings, E = 2N arcs of alpha | beta, F = corner orbits
    return len(faces(c)) - c.n_squares


def genus(c: SquareComplex) -> int:
    if not is_connected(c):
        raise SurfaceError("DISCONNECTED", "the squares do not form a connected surface")
    chi = euler_characteristic(c)
    if chi % 2 or chi > 0:
        raise SurfaceError("NON_FILLING", f"Euler characteristic {chi} is not that of a filled surface")
    return (2 - chi) // 2


def cylinders(c: SquareComplex) -> list:
    return list(c.cylinders_by_family["alpha"]) + list(c.cylinders_by_family["beta"])


def validate(c: SquareComplex) -> SquareComplex:
    """Run every global check; return ``c`` unchanged on success."""
    genus(c)
    return c


def area(c: SquareComplex, n_squares=None):
    """Normalized area of ``n_squares`` unit squares (all of them by default)."""
    from .rational import Q

    return Q(c.n_squares if n_squares is None else n_squares, c.n_squares)


# -- text format -------------------------------------------------------

_CYCLE = re.compile(r"^([A-Za-z_][\w']*)\s*:\s*\[(.*)\]$")


def _parse_ids(body, lineno):
    body = body.strip()
    if not body:
        return []
    out = []
    for tok in body.split(","):
        tok = tok.strip()
        if not tok.isdigit():
            raise SurfaceError("SYNTAX", f"bad square id {tok!r}", lineno)
        out.append(int(tok))
    return out


def parse_surface(text: str) -> SquareComplex:
    """Parse the line-oriented surface format and validate the result."""
    n = None
    section = None
    alpha, beta = [], []
    flips = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        low = line.lower()
        if low.startswith("squares:"):
            val = line.split(":", 1)[1].strip()
            if not val.isdigit():
                raise SurfaceError("SYNTAX", f"bad square count {val!r}", lineno)
            n = int(val)
            section = None
        elif low == "alpha:":
            section = alpha
        elif low == "beta:":
            section = beta
        elif low.startswith("flips:"):
            body = line.split(":", 1)[1].strip()
            if not (body.startswith("[") and body.endswith("]")):
                raise SurfaceError("SYNTAX", "flips must be a bracketed list", lineno)
            flips = []
            for tok in body[1:-1].split(","):
                tok = tok.strip()
                if tok in ("+", "+1"):
                    flips.append(1)
                elif tok in ("-", "-1"):
                    flips.append(-1)
                else:
                    raise SurfaceError("BAD_FLIP", f"bad flip {tok!r}", lineno)
            section = None
        else:
            m = _CYCLE.match(line)
            if m is None or section is None:
                raise SurfaceError("SYNTAX", f"unexpected line {line!r}", lineno)
            section.append((m.group(1), _parse_ids(m.group(2), lineno), lineno))
    if n is None:
        raise SurfaceError("SYNTAX", "missing 'squares:' line")
    if flips is None:
        raise SurfaceError("SYNTAX", "missing 'flips:' line")
    # check the bijection here so errors can point at a line
    for family, cycles in (("alpha", alpha), ("beta", beta)):
        seen = set()
        for _, ids, lineno in cycles:
            for s in ids:
                if s in seen:
                    raise SurfaceError("DUPLICATE_SQUARE", f"square {s} repeated in {family}", lineno)
                if s >= n:
                    raise SurfaceError("MISSING_SQUARE", f"square {s} out of range", lineno)
                seen.add(s)
        if len(seen) != n:
            missing = min(set(range(n)) - seen)
            raise SurfaceError("MISSING_SQUARE", f"square {missing} absent from {family}")
    if len(flips) != n:
        raise SurfaceError("BAD_FLIP", f"expected {n} flips, got {len(flips)}")
    c = SquareComplex(
        n,
        tuple(a[0] for a in alpha),
        tuple(tuple(a[1]) for a in alpha),
        tuple(b[0] for b in beta),
        tuple(tuple(b[1]) for b in beta),
        tuple(flips),
    )
    return validate(c)


def format_surface(c: SquareComplex) -> str:
    lines = [f"squares: {c.n_squares}", "alpha:"]
    for name, cyc in zip(c.alpha_names, c.alpha_cycles):
        lines.append(f"{name}: [{', '.join(map(str, cyc))}]")
    lines.append("beta:")
    for name, cyc in zip(c.beta_names, c.beta_cycles):
        lines.append(f"{name}: [{', '.join(map(str, cyc))}]")
    lines.append("flips: [" + ",".join("+" if f == 1 else "-" for f in c.flips) + "]")
    return "\n".join(lines) + "\n"
