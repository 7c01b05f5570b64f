"""Combinatorial link diagrams.

Encoding
--------
A crossing lists four edge labels counterclockwise.  Slots 0 and 2 carry the
under-strand, slots 1 and 3 the over-strand.  Every label occurs exactly
twice.  A *dart* ``(c, s)`` leaves crossing ``c`` through slot ``s``; the
corner ``(c, s)`` is the wedge between slots ``s`` and ``s + 1``, to the left
of dart ``s``.  Faces are the orbits of ``(c, s) -> (c', s' - 1)`` where
``(c', s')`` is the far end of the edge leaving through ``(c, s)``.

The checkerboard coloring is anchored so that corner ``(0, 0)`` is black.
For an alternating diagram every corner ``(c, 0)`` is then black.

Tangles carry four boundary labels in the order NW, NE, SE, SW.
"""

from __future__ import annotations

import json
import math
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from ._linalg import bareiss_det
from .plangraph import PlanarMultigraph, spanning_tree_count
from .tangles import conway_of, tangle_fraction

__all__ = [
    "LinkDiagram",
    "Tangle",
    "DiagramError",
    "MethodDisagreement",
    "BudgetExceeded",
    "NotAKnot",
    "STATE_BUDGET",
    "crossing_tangle",
    "twist_tangle",
    "rational_tangle",
    "tangle_sum",
    "rotate",
    "mirror_tangle",
    "numerator_closure",
    "denominator_closure",
    "compile_rational",
    "compile_tsum",
    "compile_dsquare",
    "checkerboard_graph",
    "goeritz_det",
    "monocyclic_state_count",
    "state_tree_bijection_check",
    "det",
    "det_report",
    "is_alternating",
    "component_count",
    "is_knot",
    "crossing_number",
    "connected_sum",
    "mirror",
    "flip",
    "unknot",
]

STATE_BUDGET = 24

Crossing = tuple[int, int, int, int]


class DiagramError(ValueError):
    """Malformed or unsuitable diagram."""


class NotAKnot(DiagramError):
    pass


class BudgetExceeded(DiagramError):
    pass


class MethodDisagreement(RuntimeError):
    def __init__(self, values: dict[str, int]):
        self.values = dict(values)
        super().__init__(f"determinant methods disagree: {self.values}")


# ---------------------------------------------------------------------------
# gluing


def _assemble(
    crossings: Sequence[Crossing],
    glues: Iterable[tuple[int, int]],
    boundary: Sequence[int],
    loops: int,
) -> tuple[tuple[Crossing, ...], tuple[int, ...], int]:
    """Identify glued labels, count closed crossingless circles, relabel 0..E-1."""
    parent: dict[int, int] = {}

    def find(x: int) -> int:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    glues = list(glues)
    for a, b in glues:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    used = {find(l) for c in crossings for l in c} | {find(l) for l in boundary}
    orphan = {find(l) for g in glues for l in g} - used
    relabel: dict[int, int] = {}
    for l in [l for c in crossings for l in c] + list(boundary):
        r = find(l)
        if r not in relabel:
            relabel[r] = len(relabel)
    new_cr = tuple(tuple(relabel[find(l)] for l in c) for c in crossings)
    new_bd = tuple(relabel[find(l)] for l in boundary)
    return new_cr, new_bd, loops + len(orphan)


def _shift(crossings: Iterable[Crossing], k: int) -> list[Crossing]:
    return [tuple(l + k for l in c) for c in crossings]


def _width(crossings: Sequence[Crossing], boundary: Sequence[int]) -> int:
    labels = [l for c in crossings for l in c] + list(boundary)
    return max(labels) + 1 if labels else 0


# ---------------------------------------------------------------------------
# tangles


@dataclass(frozen=True)
class Tangle:
    crossings: tuple[Crossing, ...]
    ends: tuple[int, int, int, int]  # NW, NE, SE, SW
    free_loops: int = 0


def crossing_tangle() -> Tangle:
    # under-strand SW-NE, over-strand SE-NW
    return Tangle(((3, 2, 1, 0),), (0, 1, 2, 3))


def _zero_tangle() -> Tangle:
    return Tangle((), (0, 0, 1, 1))


def _infinity_tangle() -> Tangle:
    return Tangle((), (0, 1, 1, 0))


def tangle_sum(t: Tangle, s: Tangle) -> Tangle:
    """Horizontal sum: the east ends of ``t`` meet the west ends of ``s``."""
    k = _width(t.crossings, t.ends)
    s_cr = _shift(s.crossings, k)
    s_ends = tuple(l + k for l in s.ends)
    cr, ends, loops = _assemble(
        list(t.crossings) + s_cr,
        [(t.ends[1], s_ends[0]), (t.ends[2], s_ends[3])],
        (t.ends[0], s_ends[1], s_ends[2], t.ends[3]),
        t.free_loops + s.free_loops,
    )
    return Tangle(cr, ends, loops)


def rotate(t: Tangle) -> Tangle:
    """Quarter turn counterclockwise."""
    nw, ne, se, sw = t.ends
    return Tangle(t.crossings, (ne, se, sw, nw), t.free_loops)


def mirror_tangle(t: Tangle) -> Tangle:
    return Tangle(tuple(_mirror_crossing(c) for c in t.crossings), t.ends, t.free_loops)


def twist_tangle(n: int) -> Tangle:
    """Horizontal twist with ``n`` half-twists; fraction ``n``."""
    if n == 0:
        return _zero_tangle()
    t = crossing_tangle()
    for _ in range(abs(n) - 1):
        t = tangle_sum(t, crossing_tangle())
    return t if n > 0 else mirror_tangle(t)


def _twist_with(t: Tangle, a: int) -> Tangle:
    # fraction F -> a + 1/F
    return tangle_sum(mirror_tangle(rotate(t)), twist_tangle(a))


def rational_tangle(conway: Sequence[int]) -> Tangle:
    """Rational tangle ``(a1 ... an)``, built left to right."""
    conway = [int(a) for a in conway]
    if not conway:
        raise DiagramError("empty Conway notation")
    t = twist_tangle(conway[0])
    for a in conway[1:]:
        t = _twist_with(t, a)
    return t


def _fraction_tangle(p: int, q: int) -> Tangle:
    """Alternating rational tangle with fraction p/q (p, q >= 0)."""
    if p < 0 or q < 0 or (p == 0 and q == 0) or math.gcd(p, q) != 1:
        raise DiagramError(f"({p}, {q}) is not realizable by an alternating rational tangle")
    if q == 0:
        return _infinity_tangle()
    if p == 0:
        return _zero_tangle()
    return rational_tangle(conway_of(p, q))


def _close(t: Tangle, glues) -> "LinkDiagram":
    cr, _, loops = _assemble(t.crossings, glues, (), t.free_loops)
    return LinkDiagram(cr, loops)


def numerator_closure(t: Tangle) -> "LinkDiagram":
    nw, ne, se, sw = t.ends
    return _close(t, [(nw, ne), (sw, se)])


def denominator_closure(t: Tangle) -> "LinkDiagram":
    nw, ne, se, sw = t.ends
    return _close(t, [(nw, sw), (ne, se)])


def _mirror_crossing(c: Crossing) -> Crossing:
    return (c[1], c[2], c[3], c[0])


def _reflect_crossing(c: Crossing) -> Crossing:
    # planar reflection reverses the cyclic order, keeping the under pair
    return (c[0], c[3], c[2], c[1])


# ---------------------------------------------------------------------------
# diagrams


@dataclass(frozen=True)
class LinkDiagram:
    crossings: tuple[Crossing, ...]
    free_loops: int = 0

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(tuple(int(l) for l in c) for c in self.crossings))
        for i, c in enumerate(self.crossings):
            if len(c) != 4:
                raise DiagramError(f"crossing {i}: expected 4 arcs, got {len(c)}")
        if self.free_loops < 0:
            raise DiagramError("free_loops must be nonnegative")
        count: dict[int, list[int]] = defaultdict(list)
        for i, c in enumerate(self.crossings):
            for l in c:
                count[l].append(i)
        for l, where in count.items():
            if len(where) != 2:
                raise DiagramError(f"crossing {where[0]}: arc {l} occurs {len(where)} times, expected 2")
        if self.crossings:
            chi = len(self.crossings) - 2 * len(self.crossings) + len(self.faces)
            if chi != 2 * self._graph_components:
                bad = self._first_nonplanar_crossing()
                raise DiagramError(f"crossing {bad}: rotation data is not planar (V - E + F = {chi})")

    # -- structure -------------------------------------------------------------

    @property
    def num_crossings(self) -> int:
        return len(self.crossings)

    @cached_property
    def partner(self) -> dict[tuple[int, int], tuple[int, int]]:
        occ: dict[int, list[tuple[int, int]]] = defaultdict(list)
        for c, cr in enumerate(self.crossings):
            for s, l in enumerate(cr):
                occ[l].append((c, s))
        out = {}
        for a, b in occ.values():
            out[a] = b
            out[b] = a
        return out

    @cached_property
    def faces(self) -> list[list[tuple[int, int]]]:
        """Corner lists of the faces, in boundary order."""
        partner = self.partner
        seen = set()
        out = []
        for c in range(len(self.crossings)):
            for s in range(4):
                if (c, s) in seen:
                    continue
                orbit = []
                x = (c, s)
                while x not in seen:
                    seen.add(x)
                    orbit.append(x)
                    c2, s2 = partner[x]
                    x = (c2, (s2 - 1) % 4)
                out.append(orbit)
        return out

    @cached_property
    def face_of(self) -> dict[tuple[int, int], int]:
        return {corner: f for f, orbit in enumerate(self.faces) for corner in orbit}

    @cached_property
    def _graph_components(self) -> int:
        parent = list(range(len(self.crossings)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for (c, _), (c2, _) in self.partner.items():
            parent[find(c)] = find(c2)
        return len({find(c) for c in range(len(self.crossings))})

    def _first_nonplanar_crossing(self) -> int:
        # smallest crossing id of a connected piece whose Euler count is off
        comp: dict[int, int] = {}
        parent = list(range(len(self.crossings)))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for (c, _), (c2, _) in self.partner.items():
            parent[find(c)] = find(c2)
        tally: dict[int, int] = defaultdict(int)
        for c in range(len(self.crossings)):
            comp[c] = find(c)
            tally[comp[c]] -= 1  # V - E = -V
        for orbit in self.faces:
            tally[comp[orbit[0][0]]] += 1
        for c in range(len(self.crossings)):
            if tally[comp[c]] != 2:
                return c
        return 0

    def is_connected(self) -> bool:
        if not self.crossings:
            return self.free_loops <= 1
        return self._graph_components == 1 and self.free_loops == 0

    @cached_property
    def face_colors(self) -> list[int]:
        """0 = black, 1 = white; corner (0, 0) is black."""
        if not self.crossings:
            return []
        nf = len(self.faces)
        adj: list[set[int]] = [set() for _ in range(nf)]
        fo = self.face_of
        for c in range(len(self.crossings)):
            for s in range(4):
                a, b = fo[(c, s)], fo[(c, (s + 1) % 4)]
                adj[a].add(b)
                adj[b].add(a)
        color = [-1] * nf
        roots = [fo[(0, 0)]] + list(range(nf))
        for r in roots:
            if color[r] != -1:
                continue
            color[r] = 0
            stack = [r]
            while stack:
                f = stack.pop()
                for g in adj[f]:
                    if color[g] == -1:
                        color[g] = 1 - color[f]
                        stack.append(g)
                    elif color[g] == color[f]:
                        raise DiagramError("faces admit no checkerboard coloring")
        return color

    def black_even(self, c: int) -> bool:
        """Whether corners (c, 0) and (c, 2) are black."""
        return self.face_colors[self.face_of[(c, 0)]] == 0

    # -- serialization ---------------------------------------------------------

    def to_dict(self) -> dict:
        out = {"crossings": [{"id": i, "arcs": list(c)} for i, c in enumerate(self.crossings)]}
        if self.free_loops:
            out["free_loops"] = self.free_loops
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "LinkDiagram":
        if not isinstance(data, dict) or not isinstance(data.get("crossings"), list):
            raise DiagramError("diagram JSON needs a 'crossings' list")
        entries = []
        for k, entry in enumerate(data["crossings"]):
            cid = entry.get("id", k) if isinstance(entry, dict) else k
            try:
                arcs = [int(a) for a in entry["arcs"]]
                cid = int(cid)
            except (KeyError, TypeError, ValueError) as exc:
                raise DiagramError(f"crossing {cid}: malformed entry") from exc
            if len(arcs) != 4:
                raise DiagramError(f"crossing {cid}: expected 4 arcs, got {len(arcs)}")
            entries.append((cid, tuple(arcs)))
        ids = [cid for cid, _ in entries]
        if len(set(ids)) != len(ids):
            raise DiagramError("duplicate crossing ids")
        entries.sort()
        try:
            return cls(tuple(a for _, a in entries), int(data.get("free_loops", 0)))
        except DiagramError as exc:
            # report the caller's crossing id, not the list position
            msg = str(exc)
            if msg.startswith("crossing "):
                pos, _, rest = msg[len("crossing "):].partition(":")
                if pos.isdigit() and int(pos) < len(entries):
                    raise DiagramError(f"crossing {entries[int(pos)][0]}:{rest}") from None
            raise

    @classmethod
    def from_json(cls, text: str) -> "LinkDiagram":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise DiagramError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    def arcs_array(self) -> np.ndarray:
        return np.asarray(self.crossings, dtype=np.int64).reshape(-1, 4)

    def __repr__(self) -> str:
        extra = f", free_loops={self.free_loops}" if self.free_loops else ""
        return f"LinkDiagram(<{len(self.crossings)} crossings>{extra})"


def unknot() -> LinkDiagram:
    return LinkDiagram((), 1)


def _canonical(crossings: Sequence[Crossing], loops: int = 0) -> LinkDiagram:
    cr, _, loops = _assemble(crossings, [], (), loops)
    return LinkDiagram(cr, loops)


def mirror(d: LinkDiagram) -> LinkDiagram:
    """Mirror image: over and under exchanged at every crossing."""
    return LinkDiagram(tuple(_mirror_crossing(c) for c in d.crossings), d.free_loops)


def flip(d: LinkDiagram) -> LinkDiagram:
    """Half turn about an axis in the projection plane (same link type)."""
    return LinkDiagram(tuple(_mirror_crossing(_reflect_crossing(c)) for c in d.crossings), d.free_loops)


def crossing_number(d: LinkDiagram) -> int:
    """Crossing count of the diagram."""
    return len(d.crossings)


def _strand_orbits(d: LinkDiagram) -> list[list[tuple[int, int]]]:
    # entries (c, s): the strand arrives at c through slot s and leaves via s + 2
    seen = set()
    out = []
    for c in range(len(d.crossings)):
        for s in range(4):
            if (c, s) in seen:
                continue
            orbit = []
            x = (c, s)
            while x not in seen:
                seen.add(x)
                orbit.append(x)
                x = d.partner[(x[0], (x[1] + 2) % 4)]
            out.append(orbit)
    return out


def component_count(d: LinkDiagram) -> int:
    return len(_strand_orbits(d)) // 2 + d.free_loops


def is_knot(d: LinkDiagram) -> bool:
    return component_count(d) == 1


def is_alternating(d: LinkDiagram) -> bool:
    for c in range(len(d.crossings)):
        for s in range(4):
            c2, s2 = d.partner[(c, (s + 2) % 4)]
            if s % 2 == s2 % 2:
                return False
    return True


def connected_sum(d1: LinkDiagram, d2: LinkDiagram) -> LinkDiagram:
    """Band two diagrams together along one edge of each.

    When both summands are alternating the orientation of the second one is
    chosen so that the result alternates as well.
    """
    if not d1.crossings:
        return LinkDiagram(d2.crossings, d2.free_loops + d1.free_loops - 1) if d1.free_loops else d2
    if not d2.crossings:
        return LinkDiagram(d1.crossings, d1.free_loops + d2.free_loops - 1) if d2.free_loops else d1
    want_alt = is_alternating(d1) and is_alternating(d2)
    first = None
    for other in (d2, flip(d2)):
        for swap in (False, True):
            try:
                cand = _band(d1, other, swap)
            except DiagramError:
                continue
            if first is None:
                first = cand
            if not want_alt or is_alternating(cand):
                return cand
    if first is None:
        raise DiagramError("no planar band found")
    return first


def _band(d1: LinkDiagram, d2: LinkDiagram, swap: bool) -> LinkDiagram:
    k = _width(d1.crossings, ())
    cr = [list(c) for c in d1.crossings] + [list(c) for c in _shift(d2.crossings, k)]
    n1 = len(d1.crossings)
    x, y = 0, k  # cut label 0 of each summand
    occ_x = [(c, s) for c in range(n1) for s in range(4) if cr[c][s] == x]
    occ_y = [(c, s) for c in range(n1, len(cr)) for s in range(4) if cr[c][s] == y]
    (a, b), (p, q) = occ_x, (occ_y if not swap else occ_y[::-1])
    cr[p[0]][p[1]] = x  # a -- p
    cr[b[0]][b[1]] = y  # b -- q
    return _canonical([tuple(c) for c in cr], d1.free_loops + d2.free_loops)


# ---------------------------------------------------------------------------
# checkerboard graphs and determinants


def _require_connected(d: LinkDiagram) -> None:
    if not d.is_connected():
        raise DiagramError("diagram is split (not connected)")


def checkerboard_graph(d: LinkDiagram, color: str = "black") -> PlanarMultigraph:
    """Embedded multigraph on the faces of one color, one edge per crossing.

    Edge ``c`` has dart ``2c`` at the face of corner (c, s0) and dart ``2c+1``
    at the face of corner (c, s0 + 2), where s0 is 0 or 1 by color.
    Vertex rotations follow the face boundary order.
    """
    if color not in ("black", "white"):
        raise ValueError(f"color must be 'black' or 'white', got {color!r}")
    _require_connected(d)
    if not d.crossings:
        return PlanarMultigraph(1, (), ((),))
    want = 0 if color == "black" else 1
    colors = d.face_colors
    fo = d.face_of
    vid = {}
    for f, col in enumerate(colors):
        if col == want:
            vid[f] = len(vid)
    edges = []
    first_slot = []
    for c in range(len(d.crossings)):
        s0 = 0 if colors[fo[(c, 0)]] == want else 1
        first_slot.append(s0)
        edges.append((vid[fo[(c, s0)]], vid[fo[(c, s0 + 2)]]))
    rotations: list[list[int]] = [[] for _ in vid]
    for f, orbit in enumerate(d.faces):
        if f not in vid:
            continue
        for c, s in orbit:
            rotations[vid[f]].append(2 * c + (0 if s == first_slot[c] else 1))
    return PlanarMultigraph(len(vid), tuple(edges), tuple(tuple(r) for r in rotations))


def goeritz_det(d: LinkDiagram) -> int:
    """|det| of the Goeritz matrix on white faces with one row and column removed."""
    _require_connected(d)
    if not d.crossings:
        return 1
    colors = d.face_colors
    fo = d.face_of
    white = {f: i for i, f in enumerate(f for f, col in enumerate(colors) if col == 1)}
    n = len(white)
    g = [[0] * n for _ in range(n)]
    for c in range(len(d.crossings)):
        eta = 1 if d.black_even(c) else -1
        s = 1 if d.black_even(c) else 0
        i, j = white[fo[(c, s)]], white[fo[(c, s + 2)]]
        if i == j:
            continue
        g[i][j] -= eta
        g[j][i] -= eta
        g[i][i] += eta
        g[j][j] += eta
    return abs(bareiss_det([row[1:] for row in g[1:]]))


def _check_state_preconditions(d: LinkDiagram) -> None:
    _require_connected(d)
    if len(d.crossings) > STATE_BUDGET:
        raise BudgetExceeded(f"{len(d.crossings)} crossings exceeds the state budget {STATE_BUDGET}")
    if not is_alternating(d):
        raise DiagramError("state counting equals the determinant only for alternating diagrams")


def monocyclic_state_count(d: LinkDiagram, backend: str | None = None) -> int:
    """Number of splice states resolving to one circle (alternating, <= 24 crossings)."""
    _check_state_preconditions(d)
    if not d.crossings:
        return 1
    return _kernels.count_monocyclic(d.arcs_array(), backend)


def _tree_edges(d: LinkDiagram, mask: int) -> list[int]:
    # splice type 0 opens corners 1/3, type 1 opens corners 0/2;
    # an edge enters the tree when its splice merges black corners
    out = []
    for c in range(len(d.crossings)):
        bit = (mask >> c) & 1
        if bit == (1 if d.black_even(c) else 0):
            out.append(c)
    return out


def state_tree_bijection_check(d: LinkDiagram, backend: str | None = None) -> bool:
    """Monocyclic states map bijectively onto spanning trees of the black graph."""
    _check_state_preconditions(d)
    g = checkerboard_graph(d, "black")
    if not d.crossings:
        return True
    masks = _kernels.monocyclic_masks(d.arcs_array(), backend)
    images = set()
    for m in masks.tolist():
        chosen = _tree_edges(d, m)
        if len(chosen) != g.num_vertices - 1:
            return False
        parent = list(range(g.num_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in chosen:
            u, v = g.edges[e]
            ru, rv = find(u), find(v)
            if ru == rv:
                return False
            parent[ru] = rv
        images.add(frozenset(chosen))
    return len(images) == len(masks) == spanning_tree_count(g)


def det_report(d: LinkDiagram, method: str = "all", backend: str | None = None) -> dict[str, int]:
    """Determinant by each requested method.

    ``all`` runs every applicable method: state counting and tree counting
    need an alternating diagram, states also the crossing budget.
    """
    methods = ("goeritz", "states", "trees")
    if method not in methods + ("all",):
        raise ValueError(f"unknown method {method!r}")
    _require_connected(d)
    out: dict[str, int] = {}
    alt = is_alternating(d)
    if method in ("goeritz", "all"):
        out["goeritz"] = goeritz_det(d)
    if method == "states" or (method == "all" and alt and len(d.crossings) <= STATE_BUDGET):
        out["states"] = monocyclic_state_count(d, backend)
    if method == "trees" or (method == "all" and alt):
        if not alt:
            raise DiagramError("tree counting equals the determinant only for alternating diagrams")
        out["trees"] = spanning_tree_count(checkerboard_graph(d, "black"))
    return out


def det(d: LinkDiagram, method: str = "goeritz", backend: str | None = None) -> int:
    values = det_report(d, method, backend)
    if len(set(values.values())) != 1:
        raise MethodDisagreement(values)
    return next(iter(values.values()))


# ---------------------------------------------------------------------------
# compilers


def compile_rational(conway: Sequence[int]) -> LinkDiagram:
    """Numerator closure of the rational tangle ``(a1 ... an)``.

    Nonzero entries of one sign give an alternating diagram with sum |a_i| crossings.
    """
    conway = [int(a) for a in conway]
    if not conway or all(a == 0 for a in conway):
        raise DiagramError("Conway notation must contain a nonzero entry")
    return numerator_closure(rational_tangle(conway))


def _knotted_arc(d: int) -> Tangle:
    """A T(2, d) knot as a two-ended piece; ends stored as (SW, SE) in slots 3 and 2."""
    t = twist_tangle(d)
    cr, ends, loops = _assemble(t.crossings, [(t.ends[0], t.ends[1])], (t.ends[3], t.ends[2]), t.free_loops)
    return Tangle(cr, (-1, -1, ends[1], ends[0]), loops)


def _tie(t: Tangle, arc: Tangle) -> Tangle:
    k = _width(t.crossings, t.ends)
    a_cr = _shift(arc.crossings, k)
    a_sw, a_se = arc.ends[3] + k, arc.ends[2] + k
    cr, ends, loops = _assemble(
        list(t.crossings) + a_cr,
        [(t.ends[1], a_sw)],
        (t.ends[0], a_se, t.ends[2], t.ends[3]),
        t.free_loops + arc.free_loops,
    )
    return Tangle(cr, ends, loops)


def compile_tsum(conway: Sequence[int], d: int = 1) -> LinkDiagram:
    """Numerator closure of T + T', with T' the mirrored transpose of T.

    ``d > 1`` ties a T(2, d) knot into the NE strand of T first, scaling the
    tangle's Krebes pair by d.  The second summand is built structurally
    from the first, so the result is carried to its mirror by a rotation.
    """
    d = int(d)
    if d < 1:
        raise DiagramError(f"connected-sum factor must be >= 1, got {d}")
    base = rational_tangle(conway)
    variants = [base] if d == 1 else [_tie(base, _knotted_arc(d)), _tie(base, _knotted_arc(-d))]
    first = None
    for t in variants:
        k = numerator_closure(tangle_sum(t, mirror_tangle(rotate(t))))
        if first is None:
            first = k
        if is_alternating(k):
            break
    else:
        k = first
    if not is_knot(k):
        raise NotAKnot(f"closure has {component_count(k)} components")
    return k


# three-strand stacks: (crossings, bottom labels, top labels, loops)


def _layer(t: Tangle, left: int) -> tuple[list[Crossing], list[int], list[int], int]:
    k = _width(t.crossings, t.ends)
    nw, ne, se, sw = t.ends
    bottom = [k, k, k]
    top = [k, k, k]
    bottom[left], bottom[left + 1] = sw, se
    top[left], top[left + 1] = nw, ne
    return list(t.crossings), bottom, top, t.free_loops


def _stack(lower, upper):
    cr1, b1, t1, l1 = lower
    k = _width(cr1, b1 + t1)
    cr2 = _shift(upper[0], k)
    b2 = [x + k for x in upper[1]]
    t2 = [x + k for x in upper[2]]
    cr, bd, loops = _assemble(cr1 + cr2, list(zip(t1, b2)), b1 + t2, l1 + upper[3])
    return list(cr), list(bd[:3]), list(bd[3:]), loops


def _reflect_stack(piece):
    cr, b, t, loops = piece
    return [_reflect_crossing(c) for c in cr], b[::-1], t[::-1], loops


def _trace_of_double(piece) -> LinkDiagram:
    lower = piece
    upper = _reflect_stack(piece)
    cr1, b1, t1, l1 = lower
    k = _width(cr1, b1 + t1)
    cr2 = _shift(upper[0], k)
    b2 = [x + k for x in upper[1]]
    t2 = [x + k for x in upper[2]]
    glues = list(zip(t1, b2)) + list(zip(t2, b1))
    cr, _, loops = _assemble(cr1 + cr2, glues, (), l1 + upper[3])
    return LinkDiagram(cr, loops)


def compile_dsquare(
    X: int, Y: int, A: int, B: int, C: int | None = None, D: int | None = None, require_knot: bool = True
) -> LinkDiagram:
    """Trace closure of a three-strand stack glued to its left-right reflection.

    Bottom to top: a tangle with state coefficients (X, Y) on strands 0,1,
    (A, B) on strands 1,2, then (C, D) on strands 0,1 (a single crossing
    when C, D are omitted).  Box handedness is chosen to make the result
    alternating.
    """
    if (C is None) != (D is None):
        raise ValueError("give both C and D or neither")
    boxes = [(X, Y, 0), (A, B, 1), ((1, 1, 0) if C is None else (C, D, 0))]
    tangles = []
    for p, q, left in boxes:
        tangles.append((_fraction_tangle(int(p), int(q)), left))
    first = None
    for flags in iproduct((False, True), repeat=len(tangles)):
        piece = None
        for (t, left), fl in zip(tangles, flags):
            layer = _layer(mirror_tangle(t) if fl else t, left)
            piece = layer if piece is None else _stack(piece, layer)
        diag = _trace_of_double(piece)
        if first is None:
            first = diag
        if is_alternating(diag):
            break
    else:
        diag = first
    if require_knot and not is_knot(diag):
        raise NotAKnot(f"template closure has {component_count(diag)} components")
    return diag


def tangle_of(conway: Sequence[int]):
    """Fraction and diagram-level tangle for a Conway notation."""
    return tangle_fraction(conway), rational_tangle(conway)
