import random

import networkx as nx
import numpy as np
import pytest

from knotsquares import diagrams as dg
from knotsquares import plangraph as pg
from knotsquares.numtheory import NotSumOfTwoSquares
from knotsquares.plangraph import PlanarMultigraph

C3 = PlanarMultigraph(3, ((0, 1), (1, 2), (2, 0)), ((0, 5), (1, 2), (3, 4)))
LOOP = PlanarMultigraph(1, ((0, 0),), ((0, 1),))


def bond(n):
    # two vertices, n parallel edges
    return PlanarMultigraph(2, tuple((0, 1) for _ in range(n)),
                            (tuple(range(0, 2 * n, 2)), tuple(range(2 * n - 1, 0, -2))))


def random_graphs(seed, count):
    rng = random.Random(seed)
    for _ in range(count):
        cf = [rng.randint(1, 3) for _ in range(rng.randint(1, 5))]
        yield pg_of(cf)


def pg_of(cf):
    return dg.checkerboard_graph(dg.compile_rational(cf), "black")


def kirchhoff_oracle(g):
    """Spanning trees from a floating-point Laplacian determinant, rounded."""
    if g.num_vertices == 1:
        return 1
    m = np.zeros((g.num_vertices, g.num_vertices))
    for u, v in g.edges:
        if u != v:
            m[u, u] += 1
            m[v, v] += 1
            m[u, v] -= 1
            m[v, u] -= 1
    return int(round(abs(np.linalg.det(m[1:, 1:]))))


class TestMaps:
    def test_c3(self):
        assert C3.num_faces == 2 and C3.euler_characteristic() == 2
        d = pg.dual(C3)
        assert (d.num_vertices, d.num_edges) == (2, 3)
        assert all(u != v for u, v in d.edges)

    def test_loop_dual_is_a_bridge(self):
        d = pg.dual(LOOP)
        assert (d.num_vertices, d.num_edges) == (2, 1)
        assert not pg.is_self_dual(LOOP)

    def test_dual_involution(self):
        for g in random_graphs(1, 100):
            dd = pg.dual(pg.dual(g))
            assert dd.rotations == g.rotations
            assert pg.maps_isomorphic(dd, g, allow_reflection=False)

    def test_json(self):
        g = PlanarMultigraph.from_json(C3.to_json())
        assert g.edges == C3.edges and g.rotations == C3.rotations
        with pytest.raises(ValueError):
            PlanarMultigraph.from_dict({"vertices": 2})
        with pytest.raises(ValueError):
            PlanarMultigraph(2, ((0, 1),), ((0,), (0,)))

    def test_no_embedding(self):
        g = pg.from_edges(3, [(0, 1), (1, 2)])
        with pytest.raises(ValueError):
            pg.dual(g)


class TestSpanningTrees:
    def test_examples(self):
        assert pg.spanning_tree_count(C3) == 3
        for n in range(1, 8):
            assert pg.spanning_tree_count(bond(n)) == n
        assert pg.spanning_tree_count(pg_of([2, 2])) == 5
        assert pg.spanning_tree_count(LOOP) == 1

    def test_against_float_oracle(self):
        for g in random_graphs(2, 50):
            assert pg.spanning_tree_count(g) == kirchhoff_oracle(g)

    def test_tree_cotree(self):
        for g in random_graphs(3, 60):
            assert pg.spanning_tree_count(g) == pg.spanning_tree_count(pg.dual(g))

    def test_deletion_contraction(self):
        rng = random.Random(4)
        done = 0
        for g in random_graphs(5, 200):
            simple = nx.MultiGraph(list(g.edges))
            bridges = set(nx.bridges(nx.Graph(simple))) if g.num_vertices > 1 else set()
            choices = [i for i, (u, v) in enumerate(g.edges)
                       if u != v and (u, v) not in bridges and (v, u) not in bridges]
            if not choices:
                continue
            i = rng.choice(choices)
            u, v = g.edges[i]
            rest = [e for j, e in enumerate(g.edges) if j != i]
            deleted = pg.from_edges(g.num_vertices, rest)
            def relabel(x):
                x = u if x == v else x
                return x - (x > v)

            contracted = pg.from_edges(g.num_vertices - 1, [(relabel(a), relabel(b)) for a, b in rest])
            assert pg.spanning_tree_count(g) == (
                pg.spanning_tree_count(deleted) + pg.spanning_tree_count(contracted)
            )
            done += 1
            if done == 50:
                break
        assert done == 50


class TestCutVertex:
    def test_examples(self):
        bowtie = pg.from_edges(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
        assert pg.has_cut_vertex(bowtie)
        assert not pg.has_cut_vertex(C3)
        tt = dg.connected_sum(dg.compile_rational([3]), dg.compile_rational([3]))
        assert any(pg.has_cut_vertex(dg.checkerboard_graph(tt, c)) for c in ("black", "white"))

    def test_loops(self):
        assert not pg.has_cut_vertex(LOOP)
        assert pg.has_cut_vertex(pg.from_edges(2, [(0, 0), (0, 1)]))


class TestSelfDual:
    def test_examples(self):
        assert not pg.is_self_dual(C3)
        g = pg_of([2, 2])
        assert pg.is_self_dual(g) and pg.is_self_dual(g, mode="map")

    def test_budget(self):
        with pytest.raises(pg.BudgetExceeded):
            pg.is_self_dual(bond(10), budget=5)
        with pytest.raises(ValueError):
            pg.is_self_dual(C3, mode="fuzzy")

    def test_abstract_weaker_than_map(self):
        # a map match implies an abstract match
        for g in random_graphs(6, 60):
            if pg.is_self_dual(g, mode="map"):
                assert pg.is_self_dual(g)

    @pytest.mark.parametrize("n, edges", [(5, 4), (29, 8)])
    def test_realize(self, n, edges):
        g = pg.realize_selfdual(n)
        assert g.num_edges == edges
        assert pg.spanning_tree_count(g) == n
        assert pg.is_self_dual(g) and pg.is_self_dual(g, mode="map")
        assert pg.selfdual_tree_bound_check(g)

    def test_realize_fig8_shape(self):
        g = pg.realize_selfdual(5)
        assert (g.num_vertices, g.num_edges) == (3, 4)

    def test_realize_errors(self):
        with pytest.raises(NotSumOfTwoSquares) as info:
            pg.realize_selfdual(77)
        assert info.value.witness == 7
        with pytest.raises(ValueError):
            pg.realize_selfdual(4)

    def test_1105(self):
        g = pg.realize_selfdual(1105)
        assert pg.spanning_tree_count(g) == 1105
        assert g.num_edges % 2 == 0 and pg.selfdual_tree_bound_check(g)

    def test_bound(self):
        assert pg.selfdual_tree_bound_check(pg_of([2, 2]))
        with pytest.raises(ValueError):
            pg.selfdual_tree_bound_check(C3)
        # a 12-edge self-dual instance
        g = dg.checkerboard_graph(dg.compile_rational([3, 3, 3, 3]), "black")
        assert g.num_edges == 12 and pg.is_self_dual(g)
        assert pg.spanning_tree_count(g) >= 18 and pg.selfdual_tree_bound_check(g)
