"""Affine Dehn twists on square-tiled surfaces.

On the alpha cylinder ``U = [0, n] x [0, 1]`` the twist ``tau^k`` is the shear
``(X, y) -> (X + k n y, y)``; on the beta cylinder ``V = [0, 1] x [0, m]`` the
inverse twist is ``(x, Y) -> (x, Y + m x)``, so ``tau^k`` shears by ``-k m``.
Both are the identity on the cylinder boundary modulo the width.

Applying a twist to a polyline also returns the signed area swept by the
straight-line isotopy ``t -> shear_t`` over the arcs inside the cylinder:
``k * width * sum((t_b**2 - t_a**2) / 2)`` in square units, ``t`` the
coordinate across the cylinder.  The isotopy drags arc endpoints that sit on
the far boundary once around it ``k`` times; those dragged loops are returned
as ``net`` (signed number of arcs crossing from the near to the far side) so
that :mod:`squareflux.flux` can close the sweep up into a genuine cobordism.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .curves import Polyline, Segment, as_cycle, check_polyline, chart_point, from_chart
from .errors import NotTransverse, WordError
from .rational import ZERO, Q, floor
from .surface import SquareComplex


@dataclass(frozen=True)
class TwistWord:
    """``letters[i] = (curve name, nonzero power)``; the rightmost acts first."""

    letters: tuple = ()

    def __post_init__(self):
        for name, k in self.letters:
            if not isinstance(k, int) or k == 0:
                raise WordError("ZERO_POWER", f"power of {name} must be a nonzero integer")

    def __mul__(self, other: "TwistWord") -> "TwistWord":
        return TwistWord(self.letters + other.letters)

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "TwistWord":
        return TwistWord(tuple((n, -k) for n, k in reversed(self.letters)))

    def __str__(self):
        return "*".join(f"{n}^{k}" for n, k in self.letters)


_LETTER = re.compile(r"^([A-Za-z_][\w']*)(?:\^\(?\s*([+-]?\d+)\s*\)?)?$")


def parse_word(text: str, c: SquareComplex | None = None) -> TwistWord:
    """Parse ``"a2^1 * a1^9 * b1^-9 * b2^-1"`` (``*``, ``.`` or spaces separate)."""
    toks = [t for t in re.split(r"[\s*.·]+", text.strip()) if t]
    letters = []
    for tok in toks:
        m = _LETTER.match(tok)
        if m is None:
            raise WordError("SYNTAX", f"bad twist letter {tok!r}")
        k = int(m.group(2)) if m.group(2) is not None else 1
        if k == 0:
            raise WordError("ZERO_POWER", f"letter {tok!r} has power 0")
        letters.append((m.group(1), k))
    w = TwistWord(tuple(letters))
    if c is not None:
        check_word(c, w)
    return w


def check_word(c: SquareComplex, w: TwistWord) -> TwistWord:
    known = set(c.alpha_names) | set(c.beta_names)
    for name, _ in w.letters:
        if name not in known:
            raise WordError("UNKNOWN_CURVE", f"no curve named {name!r}")
    return w


class TwistImage(NamedTuple):
    polyline: Polyline
    swept: object  # mpq, normalized area
    net: int


class WordImage(NamedTuple):
    polyline: Polyline
    total_swept: object
    tracks: tuple  # (curve name, power, net) in order of application


def _clip(c, cyl, a, b, along):
    """Split the chart segment ``a -> b`` at integer values of coordinate
    ``along`` (0 for alpha charts, 1 for beta charts) and map the pieces back
    into squares."""
    lo, hi = a[along], b[along]
    cuts = []
    if lo != hi:
        step = 1 if hi > lo else -1
        first = floor(lo) + 1 if step == 1 else -floor(-lo) - 1
        k = first
        while (k < hi) if step == 1 else (k > hi):
            cuts.append(k)
            k += step
    pts = [a]
    for k in cuts:
        lam = (k - lo) / (hi - lo)
        pts.append((a[0] + lam * (b[0] - a[0]), a[1] + lam * (b[1] - a[1])))
    pts.append(b)
    out = []
    w = cyl.width
    for p, q in zip(pts, pts[1:]):
        if p == q:
            continue
        mid = (p[along] + q[along]) / 2
        cell = floor(mid)
        if cell == mid:
            raise NotTransverse("sheared segment runs along a square side")
        sq = cyl.squares[cell % w]
        shift = cell - cell % w
        if along == 0:
            p2, q2 = (p[0] - shift, p[1]), (q[0] - shift, q[1])
        else:
            p2, q2 = (p[0], p[1] - shift), (q[0], q[1] - shift)
        _, lp = from_chart(c, cyl, p2, sq)
        _, lq = from_chart(c, cyl, q2, sq)
        out.append(Segment(sq, lp, lq))
    return out


def apply_twist(c: SquareComplex, p: Polyline, curve: str, power: int) -> TwistImage:
    """Image of ``p`` under the affine twist ``tau_curve^power``."""
    if power == 0:
        raise WordError("ZERO_POWER", "twist power must be nonzero")
    cyl = c.cylinder(curve)
    alpha = cyl.family == "alpha"
    w = cyl.width
    shear = power * w if alpha else -power * w
    segs = []
    sq_sum = ZERO
    net = ZERO
    for seg in p.segments:
        if seg.square not in cyl.offsets:
            segs.append(seg)
            continue
        a = chart_point(c, cyl, seg.square, seg.p0)
        b = chart_point(c, cyl, seg.square, seg.p1)
        if alpha:
            ta, tb = a[1], b[1]
            a2, b2 = (a[0] + shear * ta, ta), (b[0] + shear * tb, tb)
        else:
            ta, tb = a[0], b[0]
            a2, b2 = (ta, a[1] + shear * ta), (tb, b[1] + shear * tb)
        sq_sum += tb * tb - ta * ta
        net += tb - ta
        segs.extend(_clip(c, cyl, a2, b2, 0 if alpha else 1))
    swept = Q(power * w) * sq_sum / 2 / c.n_squares
    image = check_polyline(c, Polyline(tuple(segs)))
    return TwistImage(image, swept, int(net))


def _check_budget(p, max_segments):
    if max_segments is not None and len(p.segments) > max_segments:
        raise WordError("SEGMENT_BUDGET", f"image has {len(p.segments)} segments, budget {max_segments}")


def apply_word(c: SquareComplex, p: Polyline, w: TwistWord, max_segments: int | None = None) -> WordImage:
    """Apply the letters right to left, accumulating swept areas.

    ``max_segments`` aborts with ``SEGMENT_BUDGET`` once an intermediate image
    grows past that many segments.
    """
    total = ZERO
    tracks = []
    for name, k in reversed(w.letters):
        p, swept, net = apply_twist(c, p, name, k)
        _check_budget(p, max_segments)
        total += swept
        tracks.append((name, k, net))
    return WordImage(p, total, tuple(tracks))


def apply_word_cycle(c: SquareComplex, cycle, w: TwistWord, max_segments: int | None = None):
    """:func:`apply_word` on every curve of a 1-cycle; sweeps weighted by multiplicity."""
    images = []
    total = ZERO
    tracks = []
    for pl, m in as_cycle(cycle):
        img = apply_word(c, pl, w, max_segments)
        images.append((img.polyline, m))
        total += m * img.total_swept
        tracks.extend((name, k, m * net) for name, k, net in img.tracks)
    return tuple(images), total, tuple(tracks)


# -- affine blocks and the pseudo-Anosov certificate --------------------------

@dataclass(frozen=True)
class Block:
    family: str
    letters: tuple
    shears: tuple  # per cylinder of the family, in cylinder order
    uniform: bool

    @property
    def shear(self):
        return self.shears[0] if self.uniform else None

    @property
    def matrix(self):
        if not self.uniform:
            return None
        s = self.shear
        return [[1, s], [0, 1]] if self.family == "alpha" else [[1, 0], [s, 1]]


def affine_blocks(c: SquareComplex, w: TwistWord) -> list:
    """Group ``w`` into maximal runs of one family and read off their shears.

    Alpha shears are ``k * n``; beta shears are ``-k * m``, so that inverse beta
    twists shear positively.  A block is uniform when every cylinder of its
    family (untwisted ones counting 0) gets the same shear.
    """
    check_word(c, w)
    fam_of = {n: "alpha" for n in c.alpha_names}
    fam_of.update({n: "beta" for n in c.beta_names})
    runs = []
    for name, k in w.letters:
        fam = fam_of[name]
        if runs and runs[-1][0] == fam:
            runs[-1][1].append((name, k))
        else:
            runs.append((fam, [(name, k)]))
    blocks = []
    for fam, letters in runs:
        cyls = c.cylinders_by_family[fam]
        powers = {cyl.name: 0 for cyl in cyls}
        for name, k in letters:
            powers[name] += k
        sign = 1 if fam == "alpha" else -1
        shears = tuple(sign * powers[cyl.name] * cyl.width for cyl in cyls)
        blocks.append(Block(fam, tuple(letters), shears, len(set(shears)) == 1))
    return blocks


@dataclass(frozen=True)
class QuadraticNumber:
    """``rational + coeff * sqrt(radicand)`` with rational parts."""

    rational: Fraction
    coeff: Fraction
    radicand: int

    def __float__(self):
        return float(self.rational) + float(self.coeff) * math.sqrt(self.radicand)

    def __str__(self):
        return f"{self.rational} + ({self.coeff})*sqrt({self.radicand})"


@dataclass(frozen=True)
class PAResult:
    verdict: str  # "pseudoAnosov" | "not-affine-certifiable" | "parabolic-or-periodic"
    blocks: tuple
    matrix: tuple | None = None
    trace: int | None = None
    charpoly: tuple | None = None  # coefficients of x^2 + c1 x + c0, as (1, c1, c0)
    dilatation: QuadraticNumber | None = None
    dilatation_approx: float | None = None
    unstable_slope: QuadraticNumber | None = None
    stable_slope: QuadraticNumber | None = None

    @property
    def is_pseudo_anosov(self):
        return self.verdict == "pseudoAnosov"


def _mat2mul(a, b):
    return [[a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]]]


def dilatation_approx(trace: int, digits: int = 30) -> float:
    """Larger root of ``x^2 - |trace| x + 1`` via an integer square root.

    The integer part is exact to ``10**-digits`` before the final rounding to
    a float, which costs at most one ulp.
    """
    t = abs(trace)
    if t <= 2:
        return 1.0
    scale = 10 ** digits
    r = math.isqrt((t * t - 4) * scale * scale)
    return float(Fraction(t * scale + r, 2 * scale))


def squarefree_split(n: int):
    """``n = s**2 * r`` with ``r`` squarefree; returns ``(s, r)``."""
    s, r, p = 1, n, 2
    while p * p <= r:
        while r % (p * p) == 0:
            r //= p * p
            s *= p
        p += 1
    return s, r


def _slope(a, b, trace, sign, root, radicand):
    # eigenvector (b, mu - a) of [[a, b], [c, d]] for mu = (trace + sign*root*sqrt(r)) / 2
    return QuadraticNumber(Fraction(trace - 2 * a, 2 * b), Fraction(sign * root, 2 * b), radicand)


def pa_certificate(c: SquareComplex, w: TwistWord) -> PAResult:
    blocks = tuple(affine_blocks(c, w))
    if not all(b.uniform for b in blocks):
        return PAResult("not-affine-certifiable", blocks)
    m = [[1, 0], [0, 1]]
    for b in blocks:
        m = _mat2mul(m, b.matrix)
    tr = m[0][0] + m[1][1]
    d = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    charpoly = (1, -tr, d)
    mt = tuple(map(tuple, m))
    if abs(tr) <= 2:
        return PAResult("parabolic-or-periodic", blocks, mt, tr, charpoly)
    root, radicand = squarefree_split(tr * tr - 4)
    big = 1 if tr > 0 else -1
    lam = QuadraticNumber(Fraction(abs(tr), 2), Fraction(root, 2), radicand)
    return PAResult(
        "pseudoAnosov", blocks, mt, tr, charpoly, lam, dilatation_approx(tr),
        _slope(m[0][0], m[0][1], tr, big, root, radicand),
        _slope(m[0][0], m[0][1], tr, -big, root, radicand),
    )

