#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""測試用的直接實作：以集合與巢狀迴圈計算交互作用與分群指標。"""

import math
import itertools
from collections import Counter

import networkx as nx

from mr_attractor.graph import Graph


def random_graph(n, m, seed):
    """固定種子的隨機圖，孤立頂點會被丟棄。"""
    return Graph.from_networkx(nx.gnm_random_graph(n, m, seed=seed))


def adjacency(graph):
    return {u: set(graph.neighbors(u)) for u in range(graph.n)}


def distance_lookup(graph, distances):
    table = {}
    for e, (u, v) in enumerate(graph.edges.tolist()):
        table[(u, v)] = table[(v, u)] = float(distances[e])
    return table


def naive_terms(graph, distances, lam):
    """回傳 {(u, v): (DI, CI, EI)}，只含未收斂的邊。"""
    adj = adjacency(graph)
    d = distance_lookup(graph, distances)
    deg = {u: len(adj[u]) for u in adj}

    def theta(x, u):
        numerator = sum((1 - d[x, c]) + (1 - d[u, c]) for c in adj[x] & adj[u])
        denominator = sum(1 - d[x, k] for k in adj[x]) + sum(1 - d[u, k] for k in adj[u])
        return numerator / denominator if denominator else 0.0

    def rho(value):
        return value if value >= lam else value - lam

    terms = {}
    for u, v in graph.edges.tolist():
        duv = d[u, v]
        if not 0 < duv < 1:
            continue
        di = math.sin(1 - duv) / deg[u] + math.sin(1 - duv) / deg[v]
        ci = 0.0
        for c in sorted(adj[u] & adj[v]):
            ci += (1 - d[v, c]) * math.sin(1 - d[u, c]) / deg[u]
            ci += (1 - d[u, c]) * math.sin(1 - d[v, c]) / deg[v]
        ei = 0.0
        for x in sorted(adj[v] - adj[u] - {u}):
            ei += rho(theta(x, u)) * math.sin(1 - d[v, x]) / deg[v]
        for y in sorted(adj[u] - adj[v] - {v}):
            ei += rho(theta(y, v)) * math.sin(1 - d[u, y]) / deg[u]
        terms[(u, v)] = (di, ci, ei)
    return terms


def pair_counts(pred, truth):
    """以所有頂點對直接計數：(同群同類, 同群, 同類, 對數)。"""
    vertices = sorted(pred)
    both = same_pred = same_truth = total = 0
    for a, b in itertools.combinations(vertices, 2):
        p = pred[a] == pred[b]
        t = truth[a] == truth[b]
        both += p and t
        same_pred += p
        same_truth += t
        total += 1
    return both, same_pred, same_truth, total


def naive_ari(pred, truth):
    both, same_pred, same_truth, total = pair_counts(pred, truth)
    expected = same_pred * same_truth / total
    maximum = (same_pred + same_truth) / 2
    if maximum == expected:
        return 1.0
    return (both - expected) / (maximum - expected)


def naive_purity(pred, truth):
    cells = Counter((pred[v], truth[v]) for v in pred)
    best = {}
    for (c, _), count in cells.items():
        best[c] = max(best.get(c, 0), count)
    return sum(best.values()) / len(pred)


def naive_nmi(pred, truth):
    n = len(pred)
    a = Counter(pred.values())
    b = Counter(truth.values())
    cells = Counter((pred[v], truth[v]) for v in pred)
    h_a = -sum(x / n * math.log(x / n) for x in a.values())
    h_b = -sum(x / n * math.log(x / n) for x in b.values())
    mi = sum(c / n * math.log(c * n / (a[i] * b[j])) for (i, j), c in cells.items())
    if h_a + h_b == 0:
        return 1.0
    return 2 * mi / (h_a + h_b)


def naive_modularity(edges, labels):
    m = len(edges)
    degree = Counter()
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    inside = Counter()
    for u, v in edges:
        if labels[u] == labels[v]:
            inside[labels[u]] += 1
    volume = Counter()
    for u, k in degree.items():
        volume[labels[u]] += k
    return sum(inside[c] / m - (volume[c] / (2 * m)) ** 2 for c in set(labels.values()))


def naive_ncut(edges, labels):
    communities = set(labels.values())
    total = 0.0
    for c in communities:
        cut = sum(1 for u, v in edges if (labels[u] == c) != (labels[v] == c))
        volume = sum((labels[u] == c) + (labels[v] == c) for u, v in edges)
        if volume:
            total += cut / volume
    return total / len(communities)
