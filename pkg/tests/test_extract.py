#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import os
import shutil
import tempfile
import unittest

import numpy as np
import networkx as nx

from mr_attractor.graph import load_edge_list, load_karate
from mr_attractor.dynamics import run_sequential
from mr_attractor.extract import (extract_communities, save_partition, read_communities)
from mr_attractor.metrics import purity
from mr_attractor.exceptions import NotConvergedError
from tests.oracles import random_graph


class TestExtractCommunities(unittest.TestCase):
    """社群擷取的單元測試。"""

    def setUp(self):
        """測試前的準備工作。"""
        self.graph = load_edge_list(b"0 1\n1 2\n2 3\n3 4\n4 5\n")
        self.tmp = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)

    def test_all_zero(self):
        """測試距離全為 0 時社群就是連通分量。"""
        partition = extract_communities(self.graph, np.zeros(self.graph.m))
        self.assertEqual(partition.communities, [[0, 1, 2, 3, 4, 5]])

    def test_all_one(self):
        """測試距離全為 1 時每個頂點自成一群。"""
        partition = extract_communities(self.graph, np.ones(self.graph.m))
        self.assertEqual(partition.k, 6)
        self.assertEqual(partition.assignment.tolist(), list(range(6)))

    def test_ids_follow_minimum_member(self):
        """測試社群編號依最小成員遞增。"""
        partition = extract_communities(self.graph, np.array([1.0, 0.0, 1.0, 0.0, 0.0]))
        self.assertEqual(partition.communities, [[0], [1, 2], [3, 4, 5]])
        self.assertEqual(partition.sizes(), [1, 2, 3])

    def test_not_converged(self):
        """測試仍有未收斂的邊時丟出 NotConvergedError。"""
        with self.assertRaises(NotConvergedError):
            extract_communities(self.graph, np.array([0.0, 0.5, 1.0, 0.0, 0.0]))

    def test_partition_properties(self):
        """測試輸出為分割，且與 networkx 的連通分量集合相同。"""
        rng = np.random.default_rng(3)
        for seed in range(5):
            g = random_graph(50, 120, seed=seed)
            distances = (rng.uniform(size=g.m) < 0.5).astype(np.float64)
            partition = extract_communities(g, distances)
            members = sorted(u for c in partition.communities for u in c)
            self.assertEqual(members, list(range(g.n)))
            kept = nx.Graph()
            kept.add_nodes_from(range(g.n))
            kept.add_edges_from(tuple(e) for e, d in zip(g.edges.tolist(), distances) if d == 0.0)
            expected = {frozenset(c) for c in nx.connected_components(kept)}
            self.assertEqual({frozenset(c) for c in partition.communities}, expected)

    def test_files(self):
        """測試社群檔與逐頂點檔使用外部編號。"""
        g = load_edge_list(b"10 20\n20 30\n40 50\n")
        partition = extract_communities(g, np.array([0.0, 1.0, 0.0]))
        communities_path, assignment_path = save_partition(partition, self.tmp)
        with open(communities_path, encoding='utf-8') as f:
            self.assertEqual(f.read(), "10 20\n30\n40 50\n")
        with open(assignment_path, encoding='utf-8') as f:
            self.assertEqual(f.read().splitlines(), ["10 0", "20 0", "30 1", "40 2", "50 2"])
        self.assertEqual(read_communities(communities_path), partition.labels())
        self.assertTrue(os.path.exists(assignment_path))

    def test_karate_purity(self):
        """測試空手道俱樂部網路的社群 Purity 為 1。"""
        g, truth = load_karate()
        result = run_sequential(g, 0.5)
        partition = extract_communities(g, result.distances)
        self.assertAlmostEqual(purity(partition, truth), 1.0, places=6)


if __name__ == '__main__':
    unittest.main()
