#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""不分割（循序、精確）的 Attractor 動態距離計算。

單邊函數（compute_di、compute_ci、compute_ei ...）直接在排序好的星狀圖
Γ(u) 上做合併掃描，分割管線的 reducer 也重用它們；sequential_step 則以
scipy.sparse 一次算完所有邊，作為主節點與循序模式的引擎。
"""

import math
import logging
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .exceptions import ConfigurationError
from .graph import jaccard_init
from .window import WindowPolicy, Decision, update_distance

logger = logging.getLogger(__name__)

DEFAULT_MAX_ITERS = 1000


@dataclass
class InteractionTerms:
    """一條邊（或一組邊）的三種動態交互作用。

    Attributes:
        di: 直接交互作用 DI。
        ci: 共同鄰居交互作用 CI。
        ei: 排他鄰居交互作用 EI。
    """

    di: object
    ci: object
    ei: object

    @property
    def total(self):
        """Δ = DI + CI + EI。"""
        return self.di + self.ci + self.ei


@dataclass(frozen=True)
class CohesionParams:
    """凝聚參數 λ。"""

    lam: float = 0.5

    def __post_init__(self):
        if not 0.0 <= self.lam <= 1.0:
            raise ConfigurationError(f"lambda must be in [0, 1], got {self.lam}")


def split_neighbors(u, v, gamma_u, gamma_v):
    """以合併掃描把 Γ(u)、Γ(v) 分成共同鄰居與兩側的排他鄰居。

    排他鄰居不含邊的另一個端點：EN(v) = Φ(v) - CN(u,v) - {u}。

    Args:
        u (int): 邊的一端。
        v (int): 邊的另一端。
        gamma_u (Sequence): 排序好的 (neighbor, distance) 配對。
        gamma_v (Sequence): 排序好的 (neighbor, distance) 配對。

    Returns:
        tuple: (common, exclusive_u, exclusive_v)。common 為 (c, d(u,c), d(v,c))，
        exclusive_u 為 (y, d(u,y))，exclusive_v 為 (x, d(v,x))，皆依編號遞增。
    """
    common, exclusive_u, exclusive_v = [], [], []
    i = j = 0
    len_u, len_v = len(gamma_u), len(gamma_v)
    while i < len_u or j < len_v:
        a = gamma_u[i][0] if i < len_u else None
        b = gamma_v[j][0] if j < len_v else None
        if b is None or (a is not None and a < b):
            if a != v:
                exclusive_u.append(gamma_u[i])
            i += 1
        elif a is None or b < a:
            if b != u:
                exclusive_v.append(gamma_v[j])
            j += 1
        else:
            common.append((a, gamma_u[i][1], gamma_v[j][1]))
            i += 1
            j += 1
    return common, exclusive_u, exclusive_v


def compute_di(d, deg_u, deg_v):
    """直接交互作用 DI = sin(1-d)/deg(u) + sin(1-d)/deg(v)，正弦以弧度計。"""
    s = math.sin(1.0 - d)
    return s / deg_u + s / deg_v


def ci_term(d_uc, d_vc, deg_u, deg_v):
    """單一共同鄰居 c 對 CI(u,v) 的貢獻。"""
    return (1.0 - d_vc) * math.sin(1.0 - d_uc) / deg_u + (1.0 - d_uc) * math.sin(1.0 - d_vc) / deg_v


def compute_ci(u, v, d_uv, gamma_u, gamma_v, degrees):
    """共同鄰居交互作用 CI(u,v)，依共同鄰居編號遞增加總。

    Args:
        u (int): 邊的一端。
        v (int): 邊的另一端。
        d_uv (float): 邊 (u,v) 的距離（CI 本身不用，保留與 DI 相同的介面）。
        gamma_u (Sequence): Γ(u)。
        gamma_v (Sequence): Γ(v)。
        degrees (Sequence): 頂點度數。

    Returns:
        float: CI(u,v)。
    """
    common, _, _ = split_neighbors(u, v, gamma_u, gamma_v)
    deg_u, deg_v = degrees[u], degrees[v]
    total = 0.0
    for _, d_uc, d_vc in common:
        total += ci_term(d_uc, d_vc, deg_u, deg_v)
    return total


def compute_similarity(x, u, gamma_x, gamma_u):
    """不相連頂點 x 與 u 的相似度 ϑ(x,u)。

    分母為零（所有鄰邊距離都是 1）時回傳 0。

    Args:
        x (int): 頂點 x。
        u (int): 頂點 u，與 x 不相鄰。
        gamma_x (Sequence): Γ(x)。
        gamma_u (Sequence): Γ(u)。

    Returns:
        float: ϑ(x,u)。
    """
    numerator = 0.0
    i = j = 0
    while i < len(gamma_x) and j < len(gamma_u):
        a, b = gamma_x[i][0], gamma_u[j][0]
        if a < b:
            i += 1
        elif a > b:
            j += 1
        else:
            numerator += (1.0 - gamma_x[i][1]) + (1.0 - gamma_u[j][1])
            i += 1
            j += 1
    denominator = sum(1.0 - d for _, d in gamma_x) + sum(1.0 - d for _, d in gamma_u)
    if denominator == 0:
        return 0.0
    return numerator / denominator


def compute_rho(theta, lam):
    """排他鄰居的影響 ρ：ϑ ≥ λ 時為 ϑ，否則為 ϑ - λ。"""
    return theta if theta >= lam else theta - lam


def ei_term(rho, d_vx, deg_v):
    """單一排他鄰居 x（屬於 v）對 EI(u,v) 的貢獻。"""
    return rho * math.sin(1.0 - d_vx) / deg_v


def compute_ei(u, v, gamma_u, gamma_v, star_lookup, lam, degrees):
    """排他鄰居交互作用 EI(u,v)。

    先加總 v 的排他鄰居 x，再加總 u 的排他鄰居 y，兩者皆依編號遞增。

    Args:
        u (int): 邊的一端。
        v (int): 邊的另一端。
        gamma_u (Sequence): Γ(u)。
        gamma_v (Sequence): Γ(v)。
        star_lookup (Callable): 輸入頂點編號，回傳其 Γ。
        lam (float): 凝聚參數 λ。
        degrees (Sequence): 頂點度數。

    Returns:
        float: EI(u,v)。
    """
    _, exclusive_u, exclusive_v = split_neighbors(u, v, gamma_u, gamma_v)
    deg_u, deg_v = degrees[u], degrees[v]
    total = 0.0
    for x, d_vx in exclusive_v:
        rho = compute_rho(compute_similarity(x, u, star_lookup(x), gamma_u), lam)
        total += ei_term(rho, d_vx, deg_v)
    for y, d_uy in exclusive_u:
        rho = compute_rho(compute_similarity(y, v, star_lookup(y), gamma_v), lam)
        total += ei_term(rho, d_uy, deg_u)
    return total


def edge_terms(graph, distances, e, lam):
    """以單邊函數計算邊 e 的 InteractionTerms（參考實作）。"""
    u, v = (int(x) for x in graph.edges[e])
    stars = {}

    def lookup(w):
        if w not in stars:
            stars[w] = graph.star(w, distances).neighbors
        return stars[w]

    d = float(distances[e])
    degrees = graph.degree
    return InteractionTerms(
        di=compute_di(d, degrees[u], degrees[v]),
        ci=compute_ci(u, v, d, lookup(u), lookup(v), degrees),
        ei=compute_ei(u, v, lookup(u), lookup(v), lookup, lam, degrees),
    )


def _values_at(matrix, rows, cols):
    if len(rows) == 0:
        return np.zeros(0)
    return np.asarray(matrix[rows, cols], dtype=np.float64).ravel()


def interaction_terms(graph, distances, lam):
    """一次計算所有邊的 DI、CI、EI（稀疏矩陣形式）。

    令 W = 1-d、S = sin(1-d)（皆只在邊上有值），A 為鄰接矩陣：
    CI(u,v) = (SW)[u,v]/deg(u) + (SW)[v,u]/deg(v)；
    兩步可達且不相鄰的 (x,u) 上 ϑ = (WA + AW)[x,u] / (強度(x) + 強度(u))，
    再組成 ρ 矩陣 R，EI(u,v) = (RS)[u,v]/deg(v) + (RS)[v,u]/deg(u)。

    Args:
        graph (Graph): 輸入圖。
        distances (numpy.ndarray): 第 t 次迭代的距離快照。
        lam (float): 凝聚參數 λ。

    Returns:
        InteractionTerms: 每個欄位都是長度 m 的 numpy 陣列。
    """
    n = graph.n
    shape = (n, n)
    closeness = 1.0 - distances[graph.edge_of]
    A = sp.csr_matrix((np.ones(len(graph.indices)), graph.indices, graph.indptr), shape=shape)
    W = sp.csr_matrix((closeness, graph.indices, graph.indptr), shape=shape)
    S = sp.csr_matrix((np.sin(closeness), graph.indices, graph.indptr), shape=shape)

    eu, ev = graph.edges[:, 0], graph.edges[:, 1]
    deg = graph.degree.astype(np.float64)
    sine = np.sin(1.0 - distances)
    di = sine / deg[eu] + sine / deg[ev]

    SW = (S @ W).tocsr()
    ci = _values_at(SW, eu, ev) / deg[eu] + _values_at(SW, ev, eu) / deg[ev]

    # 兩步可達但不相鄰的頂點對，也就是所有楔形的兩端
    reach = (A @ A).tocsr()
    two_hop = (reach - reach.multiply(A)).tocsr()
    two_hop.setdiag(0)
    two_hop.eliminate_zeros()
    pairs = two_hop.tocoo()
    rows, cols = pairs.row, pairs.col

    numerator = _values_at((W @ A + A @ W).tocsr(), rows, cols)
    strength = np.asarray(W.sum(axis=1)).ravel()
    denominator = strength[rows] + strength[cols]
    theta = np.divide(numerator, denominator, out=np.zeros_like(numerator), where=denominator > 0)
    rho = np.where(theta >= lam, theta, theta - lam)
    R = sp.csr_matrix((rho, (rows, cols)), shape=shape)

    RS = (R @ S).tocsr()
    ei = _values_at(RS, eu, ev) / deg[ev] + _values_at(RS, ev, eu) / deg[eu]
    return InteractionTerms(di=di, ci=ci, ei=ei)


def live_mask(distances):
    """未收斂（0 < d < 1）的邊。"""
    return (distances > 0.0) & (distances < 1.0)


def sequential_step(graph, distances, lam, windows=None, policy=None, t=0):
    """執行一次同步更新。

    所有 Δ 都由第 t 次的快照計算；只更新 0 < d < 1 的邊，已收斂的邊不變。
    提供 windows 與啟用的 policy 時，對每條更新的邊套用滑動視窗。

    Args:
        graph (Graph): 輸入圖。
        distances (numpy.ndarray): 第 t 次迭代的距離。
        lam (float): 凝聚參數 λ。
        windows (dict, optional): 邊編號到 SlidingWindow 的對照，會就地更新。
        policy (WindowPolicy, optional): 視窗策略，預設停用。
        t (int, optional): 目前的迭代編號。預設為0。

    Returns:
        tuple: (InteractionTerms, 新距離陣列, 被視窗強制收斂的邊數)。
    """
    policy = policy or WindowPolicy()
    windows = {} if windows is None else windows
    terms = interaction_terms(graph, distances, lam)
    delta = terms.total
    live = np.flatnonzero(live_mask(distances))
    new_distances = distances.copy()
    forced = 0
    if policy.enabled:
        for e in live.tolist():
            window = windows.setdefault(e, policy.new_window())
            new_distances[e], decision = update_distance(
                float(distances[e]), float(delta[e]), window, policy, t)
            if decision is not Decision.NO_DECISION:
                forced += 1
    else:
        new_distances[live] = np.clip(distances[live] - delta[live], 0.0, 1.0)
    return terms, new_distances, forced


@dataclass
class IterationStat:
    """單次迭代的統計。

    Attributes:
        iteration (int): 迭代編號（從 1 開始）。
        live_edges (int): 本次迭代開始時未收斂的邊數。
        converged (int): 本次迭代收斂的邊數。
        forced (int): 其中由滑動視窗強制收斂的邊數。
        stage (str): 'sequential'、'mr' 或 'master'。
    """

    iteration: int
    live_edges: int
    converged: int
    forced: int = 0
    stage: str = 'sequential'


@dataclass
class SequentialResult:
    """循序引擎的結果。

    Attributes:
        distances (numpy.ndarray): 最終距離。
        iterations (int): 本次呼叫執行的迭代數。
        converged (bool): 所有邊是否都已收斂。
        history (list): IterationStat 列表。
        windows (dict): 邊編號到 SlidingWindow 的對照。
    """

    distances: np.ndarray
    iterations: int
    converged: bool
    history: list = field(default_factory=list)
    windows: dict = field(default_factory=dict)


def run_sequential(graph, lam, policy=None, max_iters=DEFAULT_MAX_ITERS, distances=None,
                   windows=None, start_iteration=0, stage='sequential'):
    """反覆執行 sequential_step 直到所有邊收斂或達到 max_iters。

    迭代編號 t 是全域的：主節點接手分割管線時傳入 start_iteration 與
    既有的視窗，視窗位置才會與先前的迭代對齊。

    Args:
        graph (Graph): 輸入圖。
        lam (float): 凝聚參數 λ。
        policy (WindowPolicy, optional): 視窗策略，預設停用（原始 Attractor）。
        max_iters (int, optional): 全域迭代上限。預設為1000。
        distances (numpy.ndarray, optional): 起始距離，預設為 Jaccard 距離。
        windows (dict, optional): 既有視窗。
        start_iteration (int, optional): 起始的全域迭代編號。預設為0。
        stage (str, optional): 寫入歷史紀錄的階段名稱。

    Returns:
        SequentialResult: 最終距離與迭代資訊；未收斂時 converged 為 False。
    """
    if max_iters < 1:
        raise ConfigurationError(f"max_iters must be >= 1, got {max_iters}")
    policy = policy or WindowPolicy()
    CohesionParams(lam)
    distances = jaccard_init(graph) if distances is None else np.array(distances, dtype=np.float64)
    windows = {} if windows is None else windows
    history = []
    t = start_iteration
    live = int(np.count_nonzero(live_mask(distances)))
    while live and t < max_iters:
        _, distances, forced = sequential_step(graph, distances, lam, windows, policy, t)
        remaining = int(np.count_nonzero(live_mask(distances)))
        history.append(IterationStat(t + 1, live, live - remaining, forced, stage))
        logger.debug("iteration %d: %d live -> %d live (%d forced)", t + 1, live, remaining, forced)
        live = remaining
        t += 1
    if live:
        logger.warning("Not converged after %d iterations: %d edges still live", t, live)
    return SequentialResult(distances, t - start_iteration, live == 0, history, windows)


class SequentialAttractor:
    """循序 Attractor（可選擇滑動視窗）。

    Attributes:
        lam (float): 凝聚參數 λ。
        policy (WindowPolicy): 視窗策略。
        max_iters (int): 迭代上限。
    """

    def __init__(self, lam=0.5, policy=None, max_iters=DEFAULT_MAX_ITERS):
        """初始化循序引擎。

        Args:
            lam (float, optional): 凝聚參數 λ。預設為0.5。
            policy (WindowPolicy, optional): 視窗策略。預設停用。
            max_iters (int, optional): 迭代上限。預設為1000。
        """
        self.lam = CohesionParams(lam).lam
        self.policy = policy or WindowPolicy()
        self.max_iters = max_iters

    def run(self, graph, distances=None):
        """執行到收斂並回傳 SequentialResult。"""
        return run_sequential(graph, self.lam, self.policy, self.max_iters, distances)
