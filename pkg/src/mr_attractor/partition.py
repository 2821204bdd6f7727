#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""DecGP 圖分割：雜湊分割、子圖三元組列舉與主邊交互作用的縮放計算。"""

import enum
import itertools
from collections import Counter
from typing import NamedTuple

from .dynamics import (split_neighbors, compute_di, ci_term, ei_term,
                       compute_similarity, compute_rho)
from .exceptions import ConfigurationError, PipelineIntegrityError


class SubgraphKey(NamedTuple):
    """子圖 G_ijk 的鍵，滿足 i < j < k。"""

    i: int
    j: int
    k: int


class EdgeClass(enum.Enum):
    """邊相對於某個子圖的分類：內/外邊 × 主/尾邊。"""

    INNER_MAIN = 'inner-main'
    INNER_REAR = 'inner-rear'
    OUTER_MAIN = 'outer-main'
    OUTER_REAR = 'outer-rear'

    @property
    def is_main(self):
        """是否為主邊。"""
        return self in (EdgeClass.INNER_MAIN, EdgeClass.OUTER_MAIN)


def modulo_hash(u, p):
    """預設的分割函數 P(u) = u mod p。"""
    return u % p


class PartitionScheme:
    """雜湊分割設定。

    Attributes:
        p (int): 分割數，至少為 3。
        hash_fn (Callable): (vertex, p) -> [0, p-1]，預設為 u mod p。
    """

    def __init__(self, p, hash_fn=modulo_hash):
        """初始化分割設定。

        Args:
            p (int): 分割數。
            hash_fn (Callable, optional): 頂點雜湊函數。預設為 u mod p。

        Raises:
            ConfigurationError: p < 3 時。
        """
        if p < 3:
            raise ConfigurationError(f"DecGP needs at least 3 partitions, got p={p}")
        self.p = p
        self.hash_fn = hash_fn

    def __call__(self, u):
        return self.hash_fn(u, self.p)

    @property
    def inner_multiplicity(self):
        """內邊出現的子圖數 (p-1)(p-2)/2。"""
        return (self.p - 1) * (self.p - 2) // 2

    @property
    def outer_multiplicity(self):
        """外邊出現的子圖數 p-2。"""
        return self.p - 2

    def all_keys(self):
        """所有 C(p, 3) 個子圖鍵，依字典序排列。"""
        return [SubgraphKey(*t) for t in itertools.combinations(range(self.p), 3)]


def find_subgraphs(u, v, scheme):
    """找出包含邊 (u,v) 的所有子圖 G_ijk，複雜度 O(p²)。

    Args:
        u (int): 邊的一端。
        v (int): 邊的另一端。
        scheme (PartitionScheme): 分割設定。

    Returns:
        set: SubgraphKey 集合；內邊有 (p-1)(p-2)/2 個，外邊有 p-2 個。
    """
    p = scheme.p
    pu, pv = scheme(u), scheme(v)
    keys = set()
    if pu == pv:
        for a in range(p):
            if a == pu:
                continue
            for b in range(a + 1, p):
                if b != pu:
                    keys.add(SubgraphKey(*sorted((a, b, pu))))
    else:
        for a in range(p):
            if a != pu and a != pv:
                keys.add(SubgraphKey(*sorted((a, pu, pv))))
    return keys


def _scale(parts, p):
    distinct = len(set(parts))
    if distinct == 1:
        return 2.0 / ((p - 1) * (p - 2))
    if distinct == 2:
        return 1.0 / (p - 2)
    return 1.0


def scale_edge(u, v, scheme):
    """DI 的縮放係數：內邊 2/((p-1)(p-2))，外邊 1/(p-2)。"""
    return _scale((scheme(u), scheme(v)), scheme.p)


def scale_triangle(u, v, c, scheme):
    """三角形 △(u,v,c) 的 CI 縮放係數，等於其出現子圖數的倒數。"""
    return _scale((scheme(u), scheme(v), scheme(c)), scheme.p)


def scale_wedge(u, v, x, scheme):
    """楔形 ∧(u,v,x) 的 EI 縮放係數，與三角形相同由三個端點的分割決定。"""
    return _scale((scheme(u), scheme(v), scheme(x)), scheme.p)


def classify_edge(u, v, key, scheme):
    """判斷邊 (u,v) 在子圖 key 中的分類。"""
    pu, pv = scheme(u), scheme(v)
    main = pu in key and pv in key
    if pu == pv:
        return EdgeClass.INNER_MAIN if main else EdgeClass.INNER_REAR
    return EdgeClass.OUTER_MAIN if main else EdgeClass.OUTER_REAR


def main_edges(key, stars, scheme):
    """由送達子圖的星狀圖重建主邊集合 S_M。

    Returns:
        list: 依 (u, v) 遞增排序的 (u, v, d(u,v))，u < v。
    """
    members = set(key)
    found = []
    for star in stars:
        u = star.center
        if scheme(u) not in members:
            continue
        for v, d in star.neighbors:
            if u < v and scheme(v) in members:
                found.append((u, v, d))
    found.sort()
    return found


def reduce_subgraph(key, stars, scheme, lam):
    """在子圖 G_ijk 中計算每條未收斂主邊的縮放部分交互作用 S_I。

    共同鄰居與排他鄰居只取分割落在 {i,j,k} 的頂點；ϑ 使用完整的星狀圖
    （包含尾邊）。度數取自星狀圖長度。

    Args:
        key (SubgraphKey): 子圖鍵。
        stars (Iterable): 送達此鍵的 StarGraph。
        scheme (PartitionScheme): 分割設定。
        lam (float): 凝聚參數 λ。

    Returns:
        list: ((u, v), S_I) 配對，依邊遞增排序。

    Raises:
        PipelineIntegrityError: 需要的星狀圖沒有送達此子圖時。
    """
    stars = list(stars)
    members = set(key)
    gamma = {star.center: star.neighbors for star in stars}

    def lookup(w):
        try:
            return gamma[w]
        except KeyError:
            raise PipelineIntegrityError(f"Star of vertex {w} was not routed to subgraph {tuple(key)}") from None

    output = []
    for u, v, d in main_edges(key, stars, scheme):
        if not 0.0 < d < 1.0:
            continue
        gamma_u, gamma_v = lookup(u), lookup(v)
        deg_u, deg_v = len(gamma_u), len(gamma_v)
        common, exclusive_u, exclusive_v = split_neighbors(u, v, gamma_u, gamma_v)

        s_i = compute_di(d, deg_u, deg_v) * scale_edge(u, v, scheme)
        for c, d_uc, d_vc in common:
            if scheme(c) in members:
                s_i += ci_term(d_uc, d_vc, deg_u, deg_v) * scale_triangle(u, v, c, scheme)
        for x, d_vx in exclusive_v:
            if scheme(x) in members:
                rho = compute_rho(compute_similarity(x, u, lookup(x), gamma_u), lam)
                s_i += ei_term(rho, d_vx, deg_v) * scale_wedge(u, v, x, scheme)
        for y, d_uy in exclusive_u:
            if scheme(y) in members:
                rho = compute_rho(compute_similarity(y, v, lookup(y), gamma_v), lam)
                s_i += ei_term(rho, d_uy, deg_u) * scale_wedge(v, u, y, scheme)
        output.append(((u, v), s_i))
    return output


def expected_emissions(graph, scheme, distances=None):
    """每次迭代 S_I 記錄的確切數量。

    Σ_{未收斂內邊} (p-1)(p-2)/2 + Σ_{未收斂外邊} (p-2)；未提供距離時計入所有邊。
    """
    total = 0
    for e, (u, v) in enumerate(graph.edges.tolist()):
        if distances is not None and not 0.0 < distances[e] < 1.0:
            continue
        if scheme(u) == scheme(v):
            total += scheme.inner_multiplicity
        else:
            total += scheme.outer_multiplicity
    return total


def partition_stats(graph, scheme, distances=None):
    """統計每個子圖的主邊數量與 S_I 記錄總數。

    Args:
        graph (Graph): 輸入圖。
        scheme (PartitionScheme): 分割設定。
        distances (numpy.ndarray, optional): 目前距離；提供時只計未收斂邊的記錄。

    Returns:
        dict: subgraphs（鍵到主邊數）、inner_edges、outer_edges、emissions、
        expected_emissions 與 O(mp) 估計值 mp。
    """
    counts = Counter()
    inner = outer = 0
    emissions = 0
    for e, (u, v) in enumerate(graph.edges.tolist()):
        keys = find_subgraphs(u, v, scheme)
        for key in keys:
            counts[key] += 1
        if scheme(u) == scheme(v):
            inner += 1
        else:
            outer += 1
        if distances is None or 0.0 < distances[e] < 1.0:
            emissions += len(keys)
    return {
        'p': scheme.p,
        'subgraphs': {key: counts[key] for key in sorted(counts)},
        'inner_edges': inner,
        'outer_edges': outer,
        'emissions': emissions,
        'expected_emissions': expected_emissions(graph, scheme, distances),
        'mp': graph.m * scheme.p,
    }
