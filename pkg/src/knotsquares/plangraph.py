"""Planar multigraphs as combinatorial maps.

Edge ``i`` owns darts ``2*i`` and ``2*i + 1``; the edge involution is ``d ^ 1``.
A vertex rotation lists its darts counterclockwise.  Faces are the orbits of
``rotation o involution``, and the dual map keeps the darts and the involution
and uses that face permutation as its rotation, so ``dual(dual(G))`` returns
the original rotation exactly.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from ._linalg import bareiss_det
from .numtheory import NotSumOfTwoSquares

__all__ = [
    "PlanarMultigraph",
    "BudgetExceeded",
    "NotSumOfTwoSquares",
    "dual",
    "is_self_dual",
    "maps_isomorphic",
    "spanning_tree_count",
    "has_cut_vertex",
    "realize_selfdual",
    "selfdual_tree_bound_check",
]

SELF_DUAL_EDGE_BUDGET = 120


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class PlanarMultigraph:
    """A connected multigraph, optionally carrying a planar embedding."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]
    rotations: tuple[tuple[int, ...], ...] | None = None
    labels: tuple = field(default=(), compare=False)

    def __post_init__(self):
        for u, v in self.edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise ValueError(f"edge ({u}, {v}) out of range")
        if self.rotations is not None:
            if len(self.rotations) != self.num_vertices:
                raise ValueError("one rotation per vertex required")
            seen = sorted(d for rot in self.rotations for d in rot)
            if seen != list(range(2 * len(self.edges))):
                raise ValueError("rotations must list every dart exactly once")
            for v, rot in enumerate(self.rotations):
                for d in rot:
                    if self.dart_tail(d) != v:
                        raise ValueError(f"dart {d} listed at vertex {v} but belongs to {self.dart_tail(d)}")

    # -- basic structure ----------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def dart_tail(self, d: int) -> int:
        u, v = self.edges[d >> 1]
        return u if d % 2 == 0 else v

    @cached_property
    def sigma(self) -> list[int]:
        if self.rotations is None:
            raise ValueError("graph carries no embedding")
        nxt = [0] * (2 * self.num_edges)
        for rot in self.rotations:
            for i, d in enumerate(rot):
                nxt[d] = rot[(i + 1) % len(rot)]
        return nxt

    @cached_property
    def faces(self) -> list[list[int]]:
        """Dart orbits of ``sigma o involution``."""
        sigma = self.sigma
        phi = [sigma[d ^ 1] for d in range(2 * self.num_edges)]
        seen = [False] * len(phi)
        out = []
        for d in range(len(phi)):
            if seen[d]:
                continue
            orbit = []
            x = d
            while not seen[x]:
                seen[x] = True
                orbit.append(x)
                x = phi[x]
            out.append(orbit)
        if self.num_edges == 0:
            return [[]]
        return out

    @property
    def num_faces(self) -> int:
        return len(self.faces)

    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + self.num_faces

    def is_connected(self) -> bool:
        if self.num_vertices <= 1:
            return True
        return nx.is_connected(self.to_networkx())

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(range(self.num_vertices))
        g.add_edges_from(self.edges)
        return g

    # -- serialization --------------------------------------------------------

    def to_dict(self) -> dict:
        out = {"vertices": self.num_vertices, "edges": [list(e) for e in self.edges]}
        if self.rotations is not None:
            out["rotations"] = [list(r) for r in self.rotations]
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "PlanarMultigraph":
        try:
            nv = int(data["vertices"])
            edges = tuple((int(u), int(v)) for u, v in data["edges"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValueError(f"malformed graph JSON: {exc}") from exc
        rot = data.get("rotations")
        rotations = None if rot is None else tuple(tuple(int(d) for d in r) for r in rot)
        return cls(nv, edges, rotations)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "PlanarMultigraph":
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"PlanarMultigraph(V={self.num_vertices}, E={self.num_edges})"


# ---------------------------------------------------------------------------


def dual(g: PlanarMultigraph) -> PlanarMultigraph:
    """Face-vertex exchanged map; dart ``d`` of the dual crosses dart ``d`` of ``g``."""
    faces = g.faces
    if g.num_edges == 0:
        return PlanarMultigraph(1, (), ((),))
    face_of = {}
    for f, orbit in enumerate(faces):
        for d in orbit:
            face_of[d] = f
    edges = tuple((face_of[2 * i], face_of[2 * i + 1]) for i in range(g.num_edges))
    return PlanarMultigraph(len(faces), edges, tuple(tuple(orbit) for orbit in faces))


def spanning_tree_count(g: PlanarMultigraph) -> int:
    """Number of spanning trees (matrix-tree theorem, exact)."""
    n = g.num_vertices
    if n == 0:
        raise ValueError("empty graph")
    lap = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        if u == v:
            continue  # loops never lie in a tree
        lap[u][u] += 1
        lap[v][v] += 1
        lap[u][v] -= 1
        lap[v][u] -= 1
    return bareiss_det([row[1:] for row in lap[1:]])


def has_cut_vertex(g: PlanarMultigraph) -> bool:
    """Articulation test on the underlying simple graph.

    A loop is its own block, so a vertex carrying a loop and at least one
    other edge also separates the graph in the block sense.
    """
    simple = nx.Graph()
    simple.add_nodes_from(range(g.num_vertices))
    simple.add_edges_from((u, v) for u, v in g.edges if u != v)
    if any(True for _ in nx.articulation_points(simple)):
        return True
    degree = Counter()
    for u, v in g.edges:
        degree[u] += 1
        degree[v] += 1
    for u, v in g.edges:
        if u == v and degree[u] > 2:
            return True
    return False


def _abstract_isomorphic(g: PlanarMultigraph, h: PlanarMultigraph) -> bool:
    if g.num_vertices != h.num_vertices or g.num_edges != h.num_edges:
        return False
    dg = sorted(Counter(x for e in g.edges for x in e).get(v, 0) for v in range(g.num_vertices))
    dh = sorted(Counter(x for e in h.edges for x in e).get(v, 0) for v in range(h.num_vertices))
    if dg != dh:
        return False
    return nx.is_isomorphic(g.to_networkx(), h.to_networkx())


def maps_isomorphic(g: PlanarMultigraph, h: PlanarMultigraph, allow_reflection: bool = True) -> bool:
    """Isomorphism of connected maps (dart bijection commuting with rotation and involution).

    With ``allow_reflection`` an orientation-reversing match also counts.
    """
    if g.num_edges != h.num_edges or g.num_vertices != h.num_vertices:
        return False
    if g.num_edges == 0:
        return True
    candidates = [h.sigma]
    if allow_reflection:
        inv = [0] * len(h.sigma)
        for d, e in enumerate(h.sigma):
            inv[e] = d
        candidates.append(inv)
    for hs in candidates:
        for target in range(2 * h.num_edges):
            if _extend_map_iso(g.sigma, hs, 0, target):
                return True
    return False


def _extend_map_iso(gs: list[int], hs: list[int], d0: int, e0: int) -> bool:
    phi = {d0: e0}
    image = {e0}
    stack = [d0]
    while stack:
        d = stack.pop()
        e = phi[d]
        for dn, en in ((gs[d], hs[e]), (d ^ 1, e ^ 1)):
            if dn in phi:
                if phi[dn] != en:
                    return False
            else:
                if en in image:
                    return False
                phi[dn] = en
                image.add(en)
                stack.append(dn)
    return len(phi) == len(gs)


def is_self_dual(g: PlanarMultigraph, mode: str = "abstract", budget: int = SELF_DUAL_EDGE_BUDGET) -> bool:
    """Whether ``g`` is isomorphic to its dual.

    ``mode="abstract"`` compares the underlying multigraphs; ``mode="map"``
    requires an isomorphism of embedded maps (reflections allowed).
    """
    if g.num_edges > budget:
        raise BudgetExceeded(f"{g.num_edges} edges exceeds the isomorphism budget {budget}")
    d = dual(g)
    if mode == "abstract":
        return _abstract_isomorphic(g, d)
    if mode == "map":
        return maps_isomorphic(g, d)
    raise ValueError(f"unknown mode {mode!r}")


def selfdual_tree_bound_check(g: PlanarMultigraph) -> bool:
    """Spanning-tree lower bound n(n-3) for a self-dual graph with 2n edges."""
    if g.num_edges % 2:
        raise ValueError(f"self-dual bound needs an even edge count, got {g.num_edges}")
    n = g.num_edges // 2
    return spanning_tree_count(g) >= n * (n - 3)


def realize_selfdual(n: int) -> PlanarMultigraph:
    """A planar self-dual graph with exactly ``n`` spanning trees (n odd, a sum of two squares).

    Taken as the black checkerboard graph of the achiral diagram realizing n.
    """
    from . import diagrams, realize

    if n < 1 or n % 2 == 0:
        raise ValueError(f"n must be odd and positive, got {n}")
    cert = realize.realize_achiral(n)
    return diagrams.checkerboard_graph(cert.diagram, "black")


def from_edges(num_vertices: int, edges: Iterable[Sequence[int]]) -> PlanarMultigraph:
    return PlanarMultigraph(num_vertices, tuple((int(u), int(v)) for u, v in edges))
