"""Integral first homology of a square-tiled surface.

The graph ``alpha | beta`` (one vertex per square, one edge per glued pair of
sides crossed by a strand) carries the whole of ``H_1`` because its
complementary regions are disks.  Its fundamental cycles with respect to a
spanning tree are routed as polylines in general position; a class is then
recorded by its vector of intersection numbers with those cycles.  The vectors
of all classes form a lattice isomorphic to ``H_1(S; Z)``; a Hermite basis of
that lattice gives integral coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from .curves import (
    Polyline, Traversal, as_cycle, core, crossing_number, crossing_points, polyline_from_traversal,
)
from .errors import HomologyError, NotTransverse
from .lattice import det, hermite, identity, integer_kernel, matmul, solve_in_lattice
from .rational import Q
from .surface import SquareComplex, genus

MAX_RETRIES = 6


def graph_edges(c: SquareComplex):
    """Directed strand edges ``(u, exit side of u, v)`` of ``alpha | beta``."""
    an, _, bn, _ = c._succ
    edges = []
    for s in range(c.n_squares):
        edges.append((s, "E", an[s]))
        edges.append((s, "N" if c.flips[s] == 1 else "S", bn[s]))
    return edges


def fundamental_cycles(c: SquareComplex):
    """Closed walks, one per chord of a BFS spanning tree rooted at square 0.

    Each walk is a list of ``(square, exit side)``.
    """
    edges = graph_edges(c)
    adj = {s: [] for s in range(c.n_squares)}
    for k, (u, side, v) in enumerate(edges):
        adj[u].append((k, v))
        adj[v].append((k, u))
    parent = {0: None}
    order = [0]
    tree = set()
    for s in order:
        for k, t in adj[s]:
            if t not in parent:
                parent[t] = (k, s)
                tree.add(k)
                order.append(t)

    def step(frm, k):
        u, side, v = edges[k]
        if frm == u:
            return (u, side), v
        # walk the edge backwards: leave v through the side glued to u's exit
        return (v, c.gluing[u, side][1]), u

    def to_root(s):
        path = [s]
        while parent[s] is not None:
            s = parent[s][1]
            path.append(s)
        return path

    walks = []
    for k, (u, side, v) in enumerate(edges):
        if k in tree:
            continue
        pu, pv = to_root(u), to_root(v)
        common = set(pu) & set(pv)
        lca = next(s for s in pv if s in common)
        walk = [(u, side)]
        cur = v
        while cur != lca:
            mv, cur = step(cur, parent[cur][0])
            walk.append(mv)
        down = pu[: pu.index(lca)]
        for s in reversed(down):
            mv, nxt = step(cur, parent[s][0])
            walk.append(mv)
            cur = nxt
        assert cur == u
        walks.append(walk)
    return walks


def route_cycles(c: SquareComplex, walks, level=0, denominator=None):
    """Traversals for the walks, the k-th one crossing every exit side at ``t_k``.

    ``t_k = (k+1)/(2M+3)`` keeps every parameter and its mirror ``1 - t_k``
    distinct from each other and from 1/2, where the cylinder cores run.
    Retry ``level`` r >= 1 shifts ``t_k`` by ``(k+1)/(d * 2^(r-1))`` with
    ``d = 64 M N`` unless overridden.
    """
    m = len(walks)
    d = denominator or 64 * m * c.n_squares
    out = []
    for k, walk in enumerate(walks):
        t = Q(k + 1, 2 * m + 3)
        if level:
            t += Q(k + 1, d * 2 ** (level - 1))
        steps = []
        for i, (sq, exit_side) in enumerate(walk):
            psq, pside = walk[i - 1]
            entry = c.gluing[psq, pside][1]
            steps.append((sq, entry, exit_side, t))
        out.append(Traversal(tuple(steps), f"g{k}"))
    return out


@dataclass(frozen=True, eq=False)
class HomologyFrame:
    complex: SquareComplex
    walks: tuple
    cycles: tuple
    pairing: tuple
    basis: tuple
    transform: tuple
    form: tuple
    denominator: int | None = None
    _alternates: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def cycles_at(self, level):
        if level == 0:
            return self.cycles
        if level not in self._alternates:
            trs = route_cycles(self.complex, self.walks, level, self.denominator)
            self._alternates[level] = tuple(polyline_from_traversal(self.complex, t) for t in trs)
        return self._alternates[level]

    def pairing_vector(self, p):
        """Intersection numbers of ``p`` with the spanning cycles, retrying with
        perturbed routings until everything is transverse."""
        for level in range(MAX_RETRIES + 1):
            try:
                return [crossing_number(p, g) for g in self.cycles_at(level)]
            except NotTransverse:
                continue
        raise NotTransverse("still degenerate after perturbing the spanning cycles")

    def coords(self, v):
        cv = solve_in_lattice(self.basis, v)
        if cv is None:
            raise HomologyError("RANK_MISMATCH", "pairing vector outside the homology lattice")
        return tuple(cv)

    def class_of(self, p) -> tuple:
        return self.coords(self.pairing_vector(p))

    def lift(self, cls):
        """Multiplicities on the spanning cycles of a cycle in class ``cls``."""
        out = [0] * len(self.cycles)
        for ck, row in zip(cls, self.transform):
            if ck:
                for i, x in enumerate(row):
                    out[i] += ck * x
        return out

    def representative(self, cls):
        """A 1-cycle (spanning cycles with multiplicity) in class ``cls``."""
        return tuple((g, m) for g, m in zip(self.cycles, self.lift(cls)) if m)

    def pair(self, x, y) -> int:
        """Algebraic intersection of two classes given in coordinates."""
        return sum(xi * self.form[i][j] * yj for i, xi in enumerate(x) if xi for j, yj in enumerate(y) if yj)

    @cached_property
    def core_classes(self) -> dict:
        c = self.complex
        return {
            cyl.name: self.class_of(core(c, cyl))
            for fam in ("alpha", "beta") for cyl in c.cylinders_by_family[fam]
        }


def build_frame(c: SquareComplex, denominator=None) -> HomologyFrame:
    g = genus(c)
    walks = fundamental_cycles(c)
    trs = route_cycles(c, walks, 0, denominator)
    cycles = tuple(polyline_from_traversal(c, t) for t in trs)
    n = len(cycles)
    pairing = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            x = crossing_number(cycles[i], cycles[j])
            pairing[i][j] = x
            pairing[j][i] = -x
    h, u, r = hermite(pairing)
    if r != 2 * g:
        raise HomologyError("RANK_MISMATCH", f"pairing has rank {r}, expected {2 * g}")
    basis = [h[i] for i in range(r)]
    transform = [u[i] for i in range(r)]
    # <x_k, x_l> = sum_i U_li <x_k, g_i> = (B U^T)_kl
    form = matmul(basis, [list(col) for col in zip(*transform)])
    if abs(det(form)) != 1:
        raise HomologyError("RANK_MISMATCH", "intersection form is not unimodular")
    return HomologyFrame(
        c, tuple(tuple(w) for w in walks), cycles, tuple(map(tuple, pairing)),
        tuple(map(tuple, basis)), tuple(map(tuple, transform)), tuple(map(tuple, form)), denominator,
    )


def class_of(f: HomologyFrame, p) -> tuple:
    return f.class_of(p)


def is_nullhomologous(f: HomologyFrame, p) -> bool:
    return not any(f.class_of(p))


def is_bounding_pair(f: HomologyFrame, p: Polyline, q: Polyline, same_isotopy_class=False) -> bool:
    """Disjoint, non-isotopic, homologous (as unoriented curves), non-separating.

    Isotopy between disjoint homologous curves is not decided here; callers
    comparing parallel copies pass ``same_isotopy_class=True``.
    """
    if same_isotopy_class:
        return False
    cp, cq = f.class_of(p), f.class_of(q)
    if not any(cp):
        return False
    if cp != cq and cp != tuple(-x for x in cq):
        return False
    return crossing_number(p, q) == 0 and crossing_points(p, q) == 0


def transvection(f: HomologyFrame, core_class, power):
    """Matrix of ``x -> x + power * <core, x> * core`` on column coordinates."""
    n = f.rank
    row = [sum(core_class[i] * f.form[i][j] for i in range(n)) for j in range(n)]
    m = identity(n)
    for i in range(n):
        if core_class[i]:
            for j in range(n):
                m[i][j] += power * core_class[i] * row[j]
    return m


def twist_action(f: HomologyFrame, w) -> list:
    """Action of a twist word on ``H_1`` (rightmost letter acts first)."""
    m = identity(f.rank)
    for name, power in w.letters:
        m = matmul(m, transvection(f, f.core_classes[name], power))
    return m


def apply_matrix(m, x):
    return tuple(sum(a * b for a, b in zip(row, x)) for row in m)


def invariant_sublattice(m) -> list:
    """Saturated basis of ``ker(m - id)``."""
    n = len(m)
    return integer_kernel([[m[i][j] - (i == j) for j in range(n)] for i in range(n)])


def is_torelli(m) -> bool:
    return m == identity(len(m))
