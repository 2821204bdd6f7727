#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import io
import os
import logging
from dataclasses import dataclass

import numpy as np
import networkx as nx

from ..exceptions import EdgeListParseError, EmptyGraphError

logger = logging.getLogger(__name__)


@dataclass
class LoadReport:
    """邊列表載入報告。

    Attributes:
        lines (int): 讀取的資料行數（不含註解與空行）。
        self_loops (int): 丟棄的自環數量。
        duplicates (int): 去除的重複邊數量（含反向重複）。
    """

    lines: int = 0
    self_loops: int = 0
    duplicates: int = 0


@dataclass(frozen=True)
class StarGraph:
    """以 center 為中心的星狀圖 Γ(u)。

    Attributes:
        center (int): 中心頂點（內部編號）。
        neighbors (tuple): 依鄰居編號遞增排序的 (neighbor, distance) 配對。
    """

    center: int
    neighbors: tuple

    def ids(self):
        """鄰居編號列表。"""
        return [v for v, _ in self.neighbors]

    def as_dict(self):
        """鄰居到距離的對照。"""
        return dict(self.neighbors)


def merge_common(a, b):
    """以合併掃描找出兩個遞增序列的共同元素位置。

    Args:
        a (Sequence): 遞增排序的第一個序列。
        b (Sequence): 遞增排序的第二個序列。

    Yields:
        tuple: (i, j)，滿足 a[i] == b[j]，依元素遞增輸出。
    """
    i = j = 0
    len_a, len_b = len(a), len(b)
    while i < len_a and j < len_b:
        if a[i] < b[j]:
            i += 1
        elif a[i] > b[j]:
            j += 1
        else:
            yield i, j
            i += 1
            j += 1


class Graph:
    """不可變的無向簡單圖。

    鄰接串列以 CSR 形式存放（indptr/indices），每個頂點的鄰居遞增排序；
    邊以 (u, v), u < v 的標準形式依字典序排列，edge_of 記錄每個 CSR
    位置對應的邊編號，讓距離向量可以直接依邊編號索引。

    Attributes:
        n (int): 頂點數。
        m (int): 邊數。
        indptr (numpy.ndarray): CSR 列指標，長度 n+1。
        indices (numpy.ndarray): CSR 鄰居編號，長度 2m。
        edge_of (numpy.ndarray): 每個 CSR 位置所屬的邊編號，長度 2m。
        degree (numpy.ndarray): 每個頂點的度數。
        edges (numpy.ndarray): 形狀 (m, 2) 的標準邊列表。
        external_ids (numpy.ndarray): 內部編號到外部編號的對照。
        report (LoadReport): 載入報告。
    """

    def __init__(self, edges, external_ids, report=None):
        """以已去重、已排序的標準邊建立圖。請改用 from_edges 或 load_edge_list。"""
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        self.external_ids = np.asarray(external_ids, dtype=np.int64)
        self.n = len(self.external_ids)
        self.m = len(edges)
        self.edges = edges
        self.report = report or LoadReport()
        self._index = {int(e): i for i, e in enumerate(self.external_ids)}

        # 兩個方向各放一次，再依 (來源, 目標) 排序成 CSR
        src = np.concatenate([edges[:, 0], edges[:, 1]])
        dst = np.concatenate([edges[:, 1], edges[:, 0]])
        eid = np.concatenate([np.arange(self.m), np.arange(self.m)])
        order = np.lexsort((dst, src))
        self.indices = dst[order]
        self.edge_of = eid[order]
        self.degree = np.bincount(src, minlength=self.n).astype(np.int64)
        self.indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(self.degree, out=self.indptr[1:])

        self._neighbor_lists = [
            self.indices[self.indptr[u]:self.indptr[u + 1]].tolist() for u in range(self.n)
        ]
        self._edge_lists = [
            self.edge_of[self.indptr[u]:self.indptr[u + 1]].tolist() for u in range(self.n)
        ]

    @classmethod
    def from_edges(cls, pairs):
        """由任意外部編號的邊配對建立圖。

        自環直接丟棄，兩個方向的重複邊只保留一條；外部編號依遞增順序
        對應到 [0, n-1] 的內部編號，因此內部編號保留外部編號的大小順序。

        Args:
            pairs (Iterable): (u, v) 外部編號配對。

        Returns:
            Graph: 建好的圖，附帶 LoadReport。

        Raises:
            EmptyGraphError: 沒有任何有效的邊時。
        """
        report = LoadReport()
        canonical = set()
        for u, v in pairs:
            report.lines += 1
            u, v = int(u), int(v)
            if u == v:
                report.self_loops += 1
                continue
            key = (u, v) if u < v else (v, u)
            if key in canonical:
                report.duplicates += 1
                continue
            canonical.add(key)
        if not canonical:
            raise EmptyGraphError("Edge list contains no edges")

        external = np.array(sorted({x for e in canonical for x in e}), dtype=np.int64)
        remap = {int(x): i for i, x in enumerate(external)}
        internal = sorted((remap[u], remap[v]) for u, v in canonical)
        if report.self_loops or report.duplicates:
            logger.info("Dropped %d self-loops and %d duplicate edges",
                        report.self_loops, report.duplicates)
        return cls(internal, external, report)

    @classmethod
    def from_networkx(cls, nx_graph):
        """由 networkx 圖建立，頂點必須是非負整數。"""
        return cls.from_edges(nx_graph.edges())

    def neighbors(self, u):
        """回傳頂點 u 遞增排序的鄰居列表 Φ(u)。"""
        return self._neighbor_lists[u]

    def incident_edges(self, u):
        """回傳與 Φ(u) 對齊的邊編號列表。"""
        return self._edge_lists[u]

    def edge_index(self, u, v):
        """回傳邊 (u, v) 的編號，邊不存在時丟出 KeyError。"""
        row = self._neighbor_lists[u]
        pos = int(np.searchsorted(row, v))
        if pos < len(row) and row[pos] == v:
            return self._edge_lists[u][pos]
        raise KeyError((u, v))

    def has_edge(self, u, v):
        """邊 (u, v) 是否存在。"""
        try:
            self.edge_index(u, v)
        except KeyError:
            return False
        return True

    def star(self, u, distances):
        """依目前距離建立頂點 u 的星狀圖。

        Args:
            u (int): 中心頂點。
            distances (numpy.ndarray): 依邊編號排列的距離。

        Returns:
            StarGraph: u 的星狀圖。
        """
        return StarGraph(
            center=u,
            neighbors=tuple(
                (v, float(distances[e])) for v, e in zip(self._neighbor_lists[u], self._edge_lists[u])
            ),
        )

    def internal_id(self, external):
        """外部編號轉內部編號。"""
        return self._index[int(external)]

    def external_id(self, internal):
        """內部編號轉外部編號。"""
        return int(self.external_ids[internal])

    def to_networkx(self):
        """轉成以外部編號為節點的 networkx 圖。"""
        g = nx.Graph()
        g.add_nodes_from(int(x) for x in self.external_ids)
        g.add_edges_from((int(self.external_ids[u]), int(self.external_ids[v])) for u, v in self.edges)
        return g

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def _open_text(source):
    """把路徑、位元組或串流轉成逐行的文字串流。

    路徑與位元組串流一次讀完再解碼，解碼失敗時回報整個輸入中的位元組位置。

    Raises:
        EdgeListParseError: 輸入不是合法的 UTF-8 時。
    """
    if isinstance(source, io.TextIOBase):
        return source
    if isinstance(source, (str, os.PathLike)):
        with open(source, 'rb') as f:
            data = f.read()
    elif isinstance(source, (bytes, bytearray)):
        data = bytes(source)
    else:
        data = source.read()
    try:
        return io.StringIO(data.decode('utf-8'))
    except UnicodeDecodeError as exc:
        raise EdgeListParseError(None, data[exc.start:exc.end], offset=exc.start) from None


def _iter_pairs(lines):
    """逐行解析 'u v'，忽略空行與 '#' 開頭的註解行。"""
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise EdgeListParseError(line_no, line)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise EdgeListParseError(line_no, line) from None
        if u < 0 or v < 0:
            raise EdgeListParseError(line_no, line)
        yield u, v


def load_edge_list(source):
    """讀取邊列表。

    每行一條邊 "u v"，分隔符號為任意空白；'#' 開頭的行視為註解。

    Args:
        source (str | os.PathLike | bytes | file): 檔案路徑、位元組內容或串流。

    Returns:
        Graph: 載入的圖，graph.report 記錄丟棄的自環與重複邊。

    Raises:
        EdgeListParseError: 出現非整數欄位時附帶行號；不是合法的 UTF-8 時附帶位元組位置。
        EmptyGraphError: 沒有任何邊時。
    """
    graph = Graph.from_edges(_iter_pairs(_open_text(source)))
    logger.info("Loaded %r (%d lines)", graph, graph.report.lines)
    return graph


def load_ground_truth(source, graph=None):
    """讀取真實社群標籤檔 "vertex label"。

    Args:
        source (str | os.PathLike | bytes | file): 標籤檔。
        graph (Graph, optional): 提供時只保留圖中存在的頂點並記錄警告。

    Returns:
        dict: 外部頂點編號到標籤字串的對照。

    Raises:
        EdgeListParseError: 格式錯誤或不是合法的 UTF-8 時。
    """
    labels = {}
    for line_no, raw in enumerate(_open_text(source), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise EdgeListParseError(line_no, line)
        try:
            vertex = int(tokens[0])
        except ValueError:
            raise EdgeListParseError(line_no, line) from None
        labels[vertex] = tokens[1]
    if graph is not None:
        known = {int(x) for x in graph.external_ids}
        unknown = set(labels) - known
        if unknown:
            logger.warning("Ignoring %d ground-truth vertices absent from the graph", len(unknown))
            labels = {v: c for v, c in labels.items() if v in known}
    return labels


def jaccard_init(graph):
    """初始化每條邊的 Jaccard 距離。

    d(u,v) = 1 - |N(u)∩N(v)| / |N(u)∪N(v)|，其中 N(u) = Φ(u) ∪ {u}。
    因為 (u,v) 相鄰，N(u)∩N(v) = CN(u,v) ∪ {u, v}，只需合併掃描兩個
    排序好的鄰居串列計算共同鄰居數，複雜度 O(deg(u)+deg(v))。

    Args:
        graph (Graph): 輸入圖。

    Returns:
        numpy.ndarray: 依邊編號排列的距離，dtype float64。
    """
    distances = np.empty(graph.m, dtype=np.float64)
    for e, (u, v) in enumerate(graph.edges.tolist()):
        common = sum(1 for _ in merge_common(graph.neighbors(u), graph.neighbors(v)))
        inter = common + 2
        union = int(graph.degree[u]) + int(graph.degree[v]) - common
        distances[e] = 1.0 - inter / union
    return distances


def graph_stats(graph):
    """計算資料集統計：|V|、|E|、平均度數與平均群聚係數。"""
    return {
        'vertices': graph.n,
        'edges': graph.m,
        'avg_degree': round(2.0 * graph.m / graph.n, 3),
        'avg_clustering': round(nx.average_clustering(graph.to_networkx()), 3),
    }
