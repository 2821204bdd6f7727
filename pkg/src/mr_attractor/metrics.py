#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""分群品質指標：有標籤的 Purity/NMI/ARI 與無標籤的 modularity/Ncut。

分群一律以 {頂點: 標籤} 字典表示，標籤可以是任何可雜湊的值。
"""

import json
from collections import defaultdict

import numpy as np
import networkx as nx
from sklearn.metrics import adjusted_rand_score, normalized_mutual_info_score
from sklearn.metrics.cluster import contingency_matrix

from .exceptions import VertexSetMismatchError

LABELED_METRICS = ('purity', 'nmi', 'ari')
UNLABELED_METRICS = ('modularity', 'ncut')


def _as_labels(partition):
    if hasattr(partition, 'labels'):
        return partition.labels()
    return dict(partition)


def align(pred, truth):
    """把兩個分群對齊到相同的頂點順序。

    Args:
        pred (dict | CommunityPartition): 預測分群。
        truth (dict | CommunityPartition): 參考分群。

    Returns:
        tuple: (預測標籤列表, 參考標籤列表)，依頂點遞增。

    Raises:
        VertexSetMismatchError: 兩者的頂點集合不同時。
    """
    pred, truth = _as_labels(pred), _as_labels(truth)
    if pred.keys() != truth.keys():
        raise VertexSetMismatchError(truth.keys() - pred.keys(), pred.keys() - truth.keys())
    vertices = sorted(pred)
    return [str(pred[v]) for v in vertices], [str(truth[v]) for v in vertices]


def contingency(pred, truth):
    """列為預測社群、欄為參考類別的列聯表 n_ij。"""
    labels_pred, labels_true = align(pred, truth)
    return contingency_matrix(labels_pred, labels_true)


def purity(pred, truth):
    """Purity = (1/n) Σ_i max_j n_ij。"""
    table = contingency(pred, truth)
    return float(table.max(axis=1).sum() / table.sum())


def nmi(pred, truth):
    """以算術平均正規化的 NMI = 2·I / (H(pred) + H(truth))，熵取自然對數。"""
    labels_pred, labels_true = align(pred, truth)
    return float(normalized_mutual_info_score(labels_true, labels_pred, average_method='arithmetic'))


def ari(pred, truth):
    """調整過機率的 Rand 指標。"""
    labels_pred, labels_true = align(pred, truth)
    return float(adjusted_rand_score(labels_true, labels_pred))


def _communities(partition):
    groups = defaultdict(set)
    for vertex, label in _as_labels(partition).items():
        groups[label].add(vertex)
    return [groups[label] for label in sorted(groups, key=lambda c: min(groups[c]))]


def _as_networkx(graph):
    return graph if isinstance(graph, nx.Graph) else graph.to_networkx()


def modularity(graph, partition):
    """Newman modularity Σ_c [m_c/m - (d_c/2m)²]。

    Args:
        graph (Graph | networkx.Graph): 以外部編號為頂點的圖。
        partition (dict | CommunityPartition): 涵蓋所有頂點的分群。

    Returns:
        float: modularity。
    """
    return float(nx.community.modularity(_as_networkx(graph), _communities(partition)))


def ncut(graph, partition):
    """平均正規化割 (1/k) Σ_c cut(c, V∖c) / vol(c)；體積為 0 的社群貢獻 0。"""
    g = _as_networkx(graph)
    communities = _communities(partition)
    if not communities:
        return 0.0
    total = 0.0
    for members in communities:
        volume = nx.volume(g, members)
        if volume:
            total += nx.cut_size(g, members) / volume
    return total / len(communities)


def labeled_report(pred, truth):
    """計算 Purity、NMI、ARI 與社群數。"""
    return {
        'purity': purity(pred, truth),
        'nmi': nmi(pred, truth),
        'ari': ari(pred, truth),
        'communities': len(set(_as_labels(pred).values())),
    }


def unlabeled_report(graph, partition):
    """計算 modularity、Ncut 與社群數。"""
    return {
        'modularity': modularity(graph, partition),
        'ncut': ncut(graph, partition),
        'communities': len(set(_as_labels(partition).values())),
    }


def format_report(report, precision=3):
    """把指標字典轉成 "key=value" 的逐行文字。"""
    lines = []
    for key, value in report.items():
        if isinstance(value, (float, np.floating)):
            value = f"{value:.{precision}f}"
        lines.append(f"{key}={value}")
    return '\n'.join(lines)


def report_json(report):
    """以固定鍵順序輸出 JSON 字串。"""
    return json.dumps({k: (float(v) if isinstance(v, np.floating) else v) for k, v in report.items()},
                      indent=2, sort_keys=True)
