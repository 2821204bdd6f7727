#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""由收斂後的距離擷取社群。"""

import os
import logging
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .exceptions import NotConvergedError

logger = logging.getLogger(__name__)


@dataclass
class CommunityPartition:
    """不重疊的社群分割。

    Attributes:
        assignment (numpy.ndarray): 內部頂點編號到社群編號的對照。
        communities (list): 每個社群的內部頂點編號（遞增）；社群依最小成員遞增編號。
        external_ids (numpy.ndarray): 內部編號到外部編號的對照。
    """

    assignment: np.ndarray
    communities: list
    external_ids: np.ndarray

    @property
    def k(self):
        """社群數。"""
        return len(self.communities)

    def labels(self):
        """外部頂點編號到社群編號的對照。"""
        return {int(self.external_ids[u]): int(c) for u, c in enumerate(self.assignment)}

    def external_communities(self):
        """以外部頂點編號表示的社群列表。"""
        return [[int(self.external_ids[u]) for u in members] for members in self.communities]

    def sizes(self):
        """每個社群的大小。"""
        return [len(members) for members in self.communities]


def _relabel_by_minimum(labels):
    n = len(labels)
    first_seen = {}
    for u in range(n):
        first_seen.setdefault(int(labels[u]), len(first_seen))
    return np.array([first_seen[int(c)] for c in labels], dtype=np.int64)


def extract_communities(graph, distances):
    """以距離為 0 的邊計算連通分量，作為社群。

    距離為 1 的邊先被移除；沒有任何距離 0 鄰邊的頂點自成一個社群。
    因為頂點依編號遞增掃描，第一次出現的分量拿到較小的編號，
    也就是社群依最小成員遞增排列。

    Args:
        graph (Graph): 輸入圖。
        distances (numpy.ndarray): 收斂後的距離。

    Returns:
        CommunityPartition: 擷取結果。

    Raises:
        NotConvergedError: 仍有距離介於 (0, 1) 的邊時。
    """
    distances = np.asarray(distances, dtype=np.float64)
    pending = np.flatnonzero((distances > 0.0) & (distances < 1.0))
    if len(pending):
        u, v = (int(x) for x in graph.edges[pending[0]])
        raise NotConvergedError(
            f"{len(pending)} edges are not converged, e.g. ({graph.external_id(u)}, {graph.external_id(v)}) "
            f"d={distances[pending[0]]:.6f}"
        )
    kept = graph.edges[distances == 0.0]
    adjacency = sp.csr_matrix(
        (np.ones(len(kept)), (kept[:, 0], kept[:, 1])), shape=(graph.n, graph.n))
    _, labels = connected_components(adjacency, directed=False)
    assignment = _relabel_by_minimum(labels)
    communities = [[] for _ in range(int(assignment.max()) + 1 if graph.n else 0)]
    for u, c in enumerate(assignment.tolist()):
        communities[c].append(u)
    logger.info("Extracted %d communities from %r", len(communities), graph)
    return CommunityPartition(assignment, communities, graph.external_ids)


def write_communities(partition, path):
    """每行一個社群，以空白分隔外部頂點編號。"""
    with open(path, 'w', encoding='utf-8') as f:
        for members in partition.external_communities():
            f.write(' '.join(str(v) for v in members) + '\n')
    return path


def write_assignment(partition, path):
    """每行 "vertex community_id"，依外部編號遞增。"""
    labels = partition.labels()
    with open(path, 'w', encoding='utf-8') as f:
        for vertex in sorted(labels):
            f.write(f"{vertex} {labels[vertex]}\n")
    return path


def read_communities(path):
    """讀取 write_communities 的輸出。

    Returns:
        dict: 外部頂點編號到社群編號（行號，從 0 開始）的對照。
    """
    labels = {}
    with open(path, 'r', encoding='utf-8') as f:
        community = 0
        for raw in f:
            line = raw.strip()
            if not line or line.startswith('#'):
                continue
            for token in line.split():
                labels[int(token)] = community
            community += 1
    return labels


def save_partition(partition, output_dir, prefix='communities'):
    """把社群檔與逐頂點檔寫到 output_dir。

    Returns:
        tuple: (社群檔路徑, 逐頂點檔路徑)。
    """
    os.makedirs(output_dir, exist_ok=True)
    return (
        write_communities(partition, os.path.join(output_dir, f'{prefix}.txt')),
        write_assignment(partition, os.path.join(output_dir, f'{prefix}_assignment.txt')),
    )
