"""Flux of affine twist words.

For a class ``[p]`` fixed by ``h``, the flux is the area of any 2-chain ``C``
with ``boundary(C) = h(p) - p``, taken modulo the period lattice, which is
``Z`` once the total area is normalized to 1.

The sweep engine builds ``C`` twist by twist.  The straight-line shear
isotopy of each twist sweeps a chain whose boundary is the image minus the
curve, *minus* the loops traced by arc endpoints dragged around the far
boundary circle of the cylinder.  Those loops sum to a null-homologous
combination of boundary circles (they account for ``h(p) - p`` in homology),
and a chain filling them is read off the square grid by propagating winding
numbers across square sides.

:func:`winding_oracle` computes the same number from the images alone,
without any chart or shear: it evaluates the winding function of
``h(p) - p`` square by square and integrates it.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .curves import as_cycle, segment_crossing, side_point
from .errors import FluxError, NotTransverse
from .homology import (
    HomologyFrame, apply_matrix, invariant_sublattice, is_torelli, twist_action,
)
from .lattice import det
from .rational import ONE, ZERO, Q, frac, to_fraction
from .surface import SquareComplex
from .twists import TwistWord, apply_word_cycle, check_word, pa_certificate


@dataclass(frozen=True)
class FluxValue:
    """Exact flux: ``raw`` is the area of one explicit cobordism, ``reduced``
    its representative in ``[0, 1)``."""

    raw: Fraction
    reduced: Fraction

    @classmethod
    def of(cls, q):
        return cls(to_fraction(q), to_fraction(frac(q)))

    def __eq__(self, other):
        if isinstance(other, FluxValue):
            return self.reduced == other.reduced
        return NotImplemented

    def __hash__(self):
        return hash(self.reduced)

    def is_zero(self):
        return self.reduced == 0


# -- filling the boundary tracks ------------------------------------------

def _far_side(c: SquareComplex, cyl, s):
    if cyl.family == "alpha":
        return "N"
    return "E" if c.flips[s] == 1 else "W"


def filling_area(c: SquareComplex, tracks):
    """Area of a 2-chain bounding the dragged boundary loops.

    ``tracks`` holds ``(curve, power, net)``; each contributes ``power * net``
    copies of the cylinder's far boundary circle.  The chain is normalized to
    have nonnegative multiplicities with minimum 0.
    """
    jump = {}
    for name, k, net in tracks:
        coef = k * net
        if not coef:
            continue
        cyl = c.cylinder(name)
        for s in cyl.squares:
            side = _far_side(c, cyl, s)
            t, side2 = c.gluing[s, side]
            jump[s, side] = jump.get((s, side), 0) + coef
            jump[t, side2] = jump.get((t, side2), 0) - coef
    if not any(jump.values()):
        return ZERO
    wind = {0: 0}
    queue = deque([0])
    while queue:
        s = queue.popleft()
        for side in ("N", "E", "S", "W"):
            t, side2 = c.gluing[s, side]
            val = wind[s] + jump.get((s, side), 0)
            if t not in wind:
                wind[t] = val
                queue.append(t)
            elif wind[t] != val:
                raise FluxError("NOT_NULLHOMOLOGOUS", "boundary tracks do not bound")
    low = min(wind.values())
    return Q(sum(v - low for v in wind.values()), c.n_squares)


# -- flux -----------------------------------------------------------------

def _invariance_check(f: HomologyFrame, cls, w):
    m = twist_action(f, w)
    if apply_matrix(m, cls) != tuple(cls):
        raise FluxError("CLASS_NOT_INVARIANT", "the class is moved by the word, so its flux is undefined")
    return m


def sweep_by_classes(f: HomologyFrame, cls, w: TwistWord):
    """Total sweep and boundary tracks computed from homology alone.

    Inside a cylinder every arc of a closed curve runs from one boundary
    circle to the other or back to the same one, so the sweep of a letter is
    ``power * width * net / 2`` with ``net`` the algebraic crossing of the core.
    """
    c = f.complex
    x = tuple(cls)
    total = ZERO
    tracks = []
    for name, k in reversed(w.letters):
        cyl = c.cylinder(name)
        g = f.core_classes[name]
        pairing = f.pair(g, x)
        net = pairing if cyl.family == "alpha" else -pairing
        total += Q(k * cyl.width * net, 2 * c.n_squares)
        tracks.append((name, k, net))
        if pairing:
            x = tuple(xi + k * pairing * gi for xi, gi in zip(x, g))
    return total, tuple(tracks)


def flux_and_image(c: SquareComplex, f: HomologyFrame, p, w: TwistWord, max_segments: int | None = None):
    """Flux along ``p`` by the sweep, together with the image 1-cycle."""
    check_word(c, w)
    _invariance_check(f, f.class_of(p), w)
    images, total, tracks = apply_word_cycle(c, p, w, max_segments)
    return FluxValue.of(total + filling_area(c, tracks)), images


def flux(c: SquareComplex, f: HomologyFrame, p, w: TwistWord, method: str = "sweep",
         max_segments: int | None = None) -> FluxValue:
    """Flux of ``w`` along the curve (or 1-cycle) ``p``.

    ``method="sweep"`` transports the polylines through every twist;
    ``method="classes"`` uses the closed form of the sweep on homology
    classes, which is exact and much cheaper for long words.
    """
    if method == "sweep":
        return flux_and_image(c, f, p, w, max_segments)[0]
    if method != "classes":
        raise ValueError(f"unknown method {method!r}")
    check_word(c, w)
    cls = f.class_of(p)
    _invariance_check(f, cls, w)
    total, tracks = sweep_by_classes(f, cls, w)
    return FluxValue.of(total + filling_area(c, tracks))


def flux_of_class(f: HomologyFrame, cls, w: TwistWord) -> FluxValue:
    _invariance_check(f, cls, w)
    total, tracks = sweep_by_classes(f, cls, w)
    return FluxValue.of(total + filling_area(f.complex, tracks))


# -- independent winding-number oracle ------------------------------------

def _clip_halfplane(poly, a, b, sign):
    """Keep the part of convex ``poly`` where ``sign * orient(a, b, x) >= 0``."""
    out = []
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        fp = sign * ((b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]))
        fq = sign * ((b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]))
        if fp >= 0:
            out.append(p)
        if (fp > 0 > fq) or (fp < 0 < fq):
            lam = fp / (fp - fq)
            out.append((p[0] + lam * (q[0] - p[0]), p[1] + lam * (q[1] - p[1])))
    return out


def _area(poly):
    s = ZERO
    for i in range(len(poly)):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % len(poly)]
        s += x0 * y1 - x1 * y0
    return abs(s) / 2


def _orient(a, b, p):
    return (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])


_UNIT = ((ZERO, ZERO), (ONE, ZERO), (ONE, ONE), (ZERO, ONE))


def _shadow(base, p0, p1):
    """Part of the unit square seen from ``base`` behind the segment ``p0 p1``."""
    o = _orient(p0, p1, base)
    if o == 0:
        return ZERO
    poly = list(_UNIT)
    s1 = 1 if _orient(base, p0, p1) > 0 else -1
    poly = _clip_halfplane(poly, base, p0, s1)
    if len(poly) >= 3:
        s2 = 1 if _orient(base, p1, p0) > 0 else -1
        poly = _clip_halfplane(poly, base, p1, s2)
    if len(poly) >= 3:
        poly = _clip_halfplane(poly, p0, p1, -1 if o > 0 else 1)
    return _area(poly) if len(poly) >= 3 else ZERO


def _base_point(segs):
    for i in range(1, 200):
        b = (Q(1, 3) + Q(i, 1009), Q(2, 7) + Q(i, 997))
        if all(_orient(a0, a1, b) != 0 for a0, a1, _ in segs):
            return b
    raise NotTransverse("no generic base point")


def _count(base, target, segs):
    total = 0
    for a0, a1, m in segs:
        sg = segment_crossing(base, target, a0, a1)
        if sg:
            # +m when the path passes from the right of the segment to its left
            total += m if _orient(a0, a1, base) < 0 else -m
    return total


def winding_oracle(c: SquareComplex, p, q) -> FluxValue:
    """Area of the winding function of ``q - p``, modulo 1.

    Within a square the winding number at ``x`` is the value at a base point
    plus the signed crossings of the straight path to ``x``; integrating
    gives the base value plus the signed areas of the segments' shadows.
    Base values of neighbouring squares are matched at a point of each
    shared side.
    """
    cycle = [(pl, m) for pl, m in as_cycle(q)] + [(pl, -m) for pl, m in as_cycle(p)]
    by_sq = {s: [] for s in range(c.n_squares)}
    for pl, m in cycle:
        for seg in pl.segments:
            by_sq[seg.square].append((seg.p0, seg.p1, m))
    base = {}
    inner = {}
    for s, segs in by_sq.items():
        b = _base_point(segs)
        base[s] = b
        acc = ZERO
        for p0, p1, m in segs:
            a = _shadow(b, p0, p1)
            if a:
                acc += (m if _orient(p0, p1, b) < 0 else -m) * a
        inner[s] = acc

    def side_offsets(s, side):
        t, side2 = c.gluing[s, side]
        rot = side2 == side
        for i in range(1, 400):
            u = Q(i, 401) if i % 2 else Q(401 - i, 401)
            u2 = 1 - u if rot else u
            try:
                return (_count(base[s], side_point(side, u), by_sq[s])
                        - _count(base[t], side_point(side2, u2), by_sq[t]))
            except NotTransverse:
                continue
        raise NotTransverse("no generic point on a square side")

    wind = {0: ZERO}
    queue = deque([0])
    while queue:
        s = queue.popleft()
        for side in ("N", "E", "S", "W"):
            t, _ = c.gluing[s, side]
            val = wind[s] + side_offsets(s, side)
            if t not in wind:
                wind[t] = val
                queue.append(t)
            elif wind[t] != val:
                raise FluxError("NOT_NULLHOMOLOGOUS", "the two curves are not homologous")
    total = sum((wind[s] + inner[s] for s in range(c.n_squares)), ZERO) / c.n_squares
    return FluxValue.of(total)


# -- reports ---------------------------------------------------------------

@dataclass(frozen=True)
class RealizabilityReport:
    verdict: str  # "OBSTRUCTED" | "NO_EIGENVALUE_ONE" | "INCONCLUSIVE"
    flux_nonzero: bool
    det_h_minus_id: int
    notes: tuple


@dataclass(frozen=True)
class FluxReport:
    word: TwistWord
    action: tuple
    kernel: tuple
    values: tuple  # FluxValue per kernel basis vector
    torelli: bool
    pa: object = None
    realizability: RealizabilityReport | None = None

    @property
    def nonzero(self):
        return any(not v.is_zero() for v in self.values)


def flux_hom(c: SquareComplex, f: HomologyFrame, w: TwistWord) -> FluxReport:
    """Flux on a saturated basis of the invariant sublattice ``K``."""
    check_word(c, w)
    m = twist_action(f, w)
    kernel = invariant_sublattice(m)
    values = tuple(flux_of_class(f, k, w) for k in kernel)
    return FluxReport(w, tuple(map(tuple, m)), tuple(map(tuple, kernel)), values, is_torelli(m))


def realizability_report(c: SquareComplex, f: HomologyFrame, w: TwistWord, hom: FluxReport | None = None):
    hom = hom or flux_hom(c, f, w)
    n = len(hom.action)
    d = det([[hom.action[i][j] - (i == j) for j in range(n)] for i in range(n)])
    notes = []
    if hom.nonzero:
        verdict = "OBSTRUCTED"
        notes.append("nonzero flux: not the first return map of any Reeb flow on the mapping torus")
    elif d != 0:
        verdict = "NO_EIGENVALUE_ONE"
        notes.append("1 is not an eigenvalue of h_* (det(h_* - id) = %d); on a surface with boundary a "
                     "primitive with zero flux exists and the Reeb construction applies" % d)
    else:
        verdict = "INCONCLUSIVE"
        notes.append("flux vanishes on K; this alone does not realize h as a first return map")
    return RealizabilityReport(verdict, hom.nonzero, d, tuple(notes))


def full_report(c: SquareComplex, f: HomologyFrame, w: TwistWord) -> FluxReport:
    hom = flux_hom(c, f, w)
    return FluxReport(hom.word, hom.action, hom.kernel, hom.values, hom.torelli,
                      pa_certificate(c, w), realizability_report(c, f, w, hom))
