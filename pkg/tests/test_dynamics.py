#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import math
import unittest

import numpy as np

from mr_attractor.graph import load_edge_list, load_karate, jaccard_init
from mr_attractor.window import WindowPolicy
from mr_attractor.dynamics import (compute_di, compute_ci, compute_similarity, compute_rho,
                                   compute_ei, edge_terms, interaction_terms, sequential_step,
                                   run_sequential, split_neighbors, SequentialAttractor)
from mr_attractor.exceptions import ConfigurationError
from tests.oracles import random_graph, naive_terms


class TestInteractionFunctions(unittest.TestCase):
    """單邊交互作用函數的單元測試。"""

    def test_direct_interaction(self):
        """測試 DI 的直接代入值。"""
        self.assertEqual(compute_di(1.0, 3, 7), 0.0)
        self.assertAlmostEqual(compute_di(0.0, 1, 1), 2 * math.sin(1), places=12)
        self.assertAlmostEqual(compute_di(0.5, 2, 3), 0.399521, places=6)

    def test_common_interaction_triangle(self):
        """測試三角形在距離全為 0 時 CI = sin(1)。"""
        gamma = {0: ((1, 0.0), (2, 0.0)), 1: ((0, 0.0), (2, 0.0)), 2: ((0, 0.0), (1, 0.0))}
        ci = compute_ci(0, 1, 0.0, gamma[0], gamma[1], [2, 2, 2])
        self.assertAlmostEqual(ci, math.sin(1), places=12)

    def test_common_interaction_empty(self):
        """測試沒有共同鄰居時 CI 為 0。"""
        self.assertEqual(compute_ci(0, 1, 0.3, ((1, 0.3),), ((0, 0.3), (2, 0.3)), [1, 2, 1]), 0.0)

    def test_similarity(self):
        """測試 ϑ 的兩個邊界情況與分母為零。"""
        self.assertEqual(compute_similarity(0, 2, ((1, 0.2),), ((3, 0.4),)), 0.0)
        self.assertEqual(compute_similarity(0, 2, ((1, 0.0),), ((1, 0.0),)), 1.0)
        self.assertEqual(compute_similarity(0, 2, ((1, 1.0),), ((1, 1.0),)), 0.0)

    def test_rho(self):
        """測試 ρ 的兩個分支與邊界。"""
        self.assertEqual(compute_rho(0.7, 0.5), 0.7)
        self.assertAlmostEqual(compute_rho(0.3, 0.5), -0.2, places=12)
        self.assertEqual(compute_rho(0.5, 0.5), 0.5)

    def test_exclusive_interaction_path(self):
        """測試路徑 u-v-x 上 EI(u,v) = sin(2/3)/2。"""
        d = 1.0 / 3.0
        gamma = {0: ((1, d),), 1: ((0, d), (2, d)), 2: ((1, d),)}
        ei = compute_ei(0, 1, gamma[0], gamma[1], gamma.__getitem__, 0.5, [1, 2, 1])
        self.assertAlmostEqual(ei, math.sin(2.0 / 3.0) / 2.0, places=12)
        self.assertAlmostEqual(ei, 0.309170, places=6)

    def test_exclusive_neighbors_exclude_endpoints(self):
        """測試排他鄰居不含邊的另一端點。"""
        common, only_u, only_v = split_neighbors(0, 1, ((1, 0.1), (2, 0.2), (3, 0.3)), ((0, 0.1), (2, 0.4)))
        self.assertEqual(common, [(2, 0.2, 0.4)])
        self.assertEqual(only_u, [(3, 0.3)])
        self.assertEqual(only_v, [])

    def test_symmetry(self):
        """測試交換 (u, v) 後三種交互作用不變。"""
        g = random_graph(30, 90, seed=5)
        distances = jaccard_init(g)
        degrees = g.degree
        lookup = {u: g.star(u, distances).neighbors for u in range(g.n)}.__getitem__
        for e, (u, v) in enumerate(g.edges.tolist()):
            d = distances[e]
            self.assertAlmostEqual(compute_di(d, degrees[u], degrees[v]), compute_di(d, degrees[v], degrees[u]),
                                   delta=1e-15)
            self.assertAlmostEqual(compute_ci(u, v, d, lookup(u), lookup(v), degrees),
                                   compute_ci(v, u, d, lookup(v), lookup(u), degrees), delta=1e-15)
            self.assertAlmostEqual(compute_ei(u, v, lookup(u), lookup(v), lookup, 0.5, degrees),
                                   compute_ei(v, u, lookup(v), lookup(u), lookup, 0.5, degrees), delta=1e-12)


class TestOracleEquivalence(unittest.TestCase):
    """與直接實作比較的單元測試。"""

    def check(self, graph, distances, lam):
        expected = naive_terms(graph, distances, lam)
        vectorized = interaction_terms(graph, distances, lam)
        for e, (u, v) in enumerate(graph.edges.tolist()):
            if (u, v) not in expected:
                continue
            di, ci, ei = expected[(u, v)]
            scalar = edge_terms(graph, distances, e, lam)
            self.assertAlmostEqual(scalar.di, di, delta=1e-12)
            self.assertAlmostEqual(scalar.ci, ci, delta=1e-12)
            self.assertAlmostEqual(scalar.ei, ei, delta=1e-12)
            self.assertAlmostEqual(vectorized.di[e], di, delta=1e-12)
            self.assertAlmostEqual(vectorized.ci[e], ci, delta=1e-12)
            self.assertAlmostEqual(vectorized.ei[e], ei, delta=1e-12)

    def test_random_graphs_jaccard(self):
        """測試 Jaccard 初始距離下的隨機圖。"""
        for seed in range(8):
            g = random_graph(40, 120, seed=seed)
            self.check(g, jaccard_init(g), lam=0.5)

    def test_random_distances(self):
        """測試任意距離（包含已收斂的邊）與不同 λ。"""
        rng = np.random.default_rng(7)
        for seed in range(6):
            g = random_graph(30, 100, seed=seed)
            distances = rng.uniform(0, 1, g.m)
            distances[rng.uniform(size=g.m) < 0.2] = 1.0
            distances[rng.uniform(size=g.m) < 0.1] = 0.0
            for lam in (0.0, 0.3, 0.8):
                self.check(g, distances, lam)


class TestSequentialEngine(unittest.TestCase):
    """循序引擎的單元測試。"""

    def setUp(self):
        """測試前的準備工作。"""
        self.karate, _ = load_karate()

    def test_converged_edges_untouched(self):
        """測試三角形已收斂，不做任何更新。"""
        g = load_edge_list(b"0 1\n1 2\n0 2\n")
        distances = jaccard_init(g)
        _, updated, forced = sequential_step(g, distances, 0.5)
        np.testing.assert_array_equal(updated, distances)
        self.assertEqual(forced, 0)
        result = run_sequential(g, 0.5)
        self.assertEqual(result.iterations, 0)
        self.assertTrue(result.converged)

    def test_step_is_synchronous(self):
        """測試每條邊的新距離只由舊快照決定。"""
        g = random_graph(30, 80, seed=2)
        distances = jaccard_init(g)
        terms, updated, _ = sequential_step(g, distances, 0.5)
        live = (distances > 0) & (distances < 1)
        np.testing.assert_allclose(updated[live], np.clip(distances[live] - terms.total[live], 0, 1))
        self.assertTrue(np.all((updated >= 0) & (updated <= 1)))

    def test_edge_visit_order_does_not_matter(self):
        """測試以任意順序逐邊更新（都讀同一份快照）得到相同的距離。"""
        g = random_graph(30, 90, seed=5)
        distances = jaccard_init(g)
        _, distances, _ = sequential_step(g, distances, 0.5)
        _, expected, _ = sequential_step(g, distances, 0.5)
        live = np.flatnonzero((distances > 0) & (distances < 1))
        rng = np.random.default_rng(11)
        for _ in range(5):
            snapshot = distances.copy()
            visited = distances.copy()
            for e in rng.permutation(live).tolist():
                delta = edge_terms(g, snapshot, e, 0.5).total
                visited[e] = min(1.0, max(0.0, snapshot[e] - delta))
            np.testing.assert_array_equal(snapshot, distances)
            np.testing.assert_allclose(visited, expected, rtol=0, atol=1e-12)

    def test_vertex_relabeling_and_line_order(self):
        """測試打亂邊列表順序並重新編號頂點後，每條邊的距離不變。"""
        g = random_graph(40, 130, seed=6)
        rng = np.random.default_rng(3)
        perm = rng.permutation(1000)[:g.n] + 5
        lines = [f"{perm[u]} {perm[v]}" for u, v in g.edges.tolist()]
        shuffled = load_edge_list(("\n".join(rng.permutation(lines)) + "\n").encode())
        d_g, d_s = jaccard_init(g), jaccard_init(shuffled)
        for _ in range(2):
            _, d_g, _ = sequential_step(g, d_g, 0.5)
            _, d_s, _ = sequential_step(shuffled, d_s, 0.5)
        for e, (u, v) in enumerate(g.edges.tolist()):
            a, b = shuffled.internal_id(perm[u]), shuffled.internal_id(perm[v])
            self.assertAlmostEqual(d_s[shuffled.edge_index(min(a, b), max(a, b))], d_g[e], delta=1e-12)

    def test_karate_attractor(self):
        """測試空手道俱樂部網路在 λ=0.5 下約 13 次迭代收斂。"""
        result = run_sequential(self.karate, 0.5)
        self.assertTrue(result.converged)
        self.assertLessEqual(abs(result.iterations - 13), 2)
        self.assertTrue(set(np.unique(result.distances)) <= {0.0, 1.0})
        self.assertEqual(len(result.history), result.iterations)

    def test_karate_windowed(self):
        """測試滑動視窗 [0.5-10] 與 [0.7-10] 的迭代次數。"""
        fast = run_sequential(self.karate, 0.5, WindowPolicy(s=10, tau=0.5))
        slow = run_sequential(self.karate, 0.5, WindowPolicy(s=10, tau=0.7))
        self.assertLessEqual(abs(fast.iterations - 11), 1)
        self.assertLessEqual(abs(slow.iterations - 12), 1)

    def test_non_convergence_is_flagged(self):
        """測試達到 max_iters 時回傳未收斂旗標而非例外。"""
        result = run_sequential(self.karate, 0.5, max_iters=2)
        self.assertFalse(result.converged)
        self.assertEqual(result.iterations, 2)

    def test_invalid_arguments(self):
        """測試參數檢查。"""
        with self.assertRaises(ConfigurationError):
            run_sequential(self.karate, 0.5, max_iters=0)
        with self.assertRaises(ConfigurationError):
            SequentialAttractor(lam=1.5)

    def test_sequential_attractor_class(self):
        """測試 SequentialAttractor 與 run_sequential 一致。"""
        a = SequentialAttractor(lam=0.5).run(self.karate)
        b = run_sequential(self.karate, 0.5)
        np.testing.assert_array_equal(a.distances, b.distances)
        self.assertEqual(a.iterations, b.iterations)


if __name__ == '__main__':
    unittest.main()
