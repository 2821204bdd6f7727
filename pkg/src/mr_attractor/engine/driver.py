#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""MRAttractor 驅動程式：MR1（星狀圖）、MR2（DecGP 交互作用）、
MR3（距離與滑動視窗更新）的迴圈，以及主節點循序收尾。"""

import time
import logging
import functools
from dataclasses import dataclass, field

import numpy as np

from ..graph import StarGraph, jaccard_init
from ..dynamics import run_sequential, live_mask, IterationStat
from ..partition import PartitionScheme, find_subgraphs, reduce_subgraph
from ..window import Decision, update_distance
from ..exceptions import PipelineIntegrityError
from .harness import MapReduceHarness, Record, RecordKind
from .checkpoint import save_checkpoint, load_checkpoint

logger = logging.getLogger(__name__)


@dataclass
class EdgeState:
    """單一邊在迭代之間的狀態。

    Attributes:
        key (tuple): 標準邊 (u, v)，u < v。
        distance (float): 目前距離。
        window (SlidingWindow | None): 滑動視窗；停用時為 None。
    """

    key: tuple
    distance: float
    window: object = None

    @property
    def converged(self):
        """距離恰為 0 或 1。"""
        return self.distance == 0.0 or self.distance == 1.0


@dataclass
class PhaseTimings:
    """單次迭代各階段耗時（秒）。"""

    iteration: int
    mr1: float = 0.0
    mr2: float = 0.0
    mr3: float = 0.0
    master: float = 0.0


@dataclass
class MRResult:
    """MRAttractor 的執行結果。

    Attributes:
        distances (numpy.ndarray): 依邊編號排列的最終距離。
        iterations (int): 總迭代數（MR 加主節點）。
        mr_iterations (int): 分割管線執行的迭代數。
        master_iterations (int): 主節點循序執行的迭代數。
        converged (bool): 所有邊是否都已收斂。
        history (list): IterationStat 列表。
        timings (list): PhaseTimings 列表。
        emissions (list): 每次 MR 迭代的 S_I 記錄數。
    """

    distances: np.ndarray
    iterations: int
    mr_iterations: int
    master_iterations: int
    converged: bool
    history: list = field(default_factory=list)
    timings: list = field(default_factory=list)
    emissions: list = field(default_factory=list)


# MR1 ------------------------------------------------------------------------

def _mr1_map(record):
    u, v = record.key
    d = record.value
    return [(u, (v, d)), (v, (u, d))]


def _mr1_reduce(u, values):
    yield StarGraph(center=u, neighbors=tuple(sorted(values)))


def mr1_star_graphs(harness, edge_records):
    """MR1：把每條邊送到兩個端點，依鄰居編號排序後輸出星狀圖。

    Args:
        harness (MapReduceHarness): 執行器。
        edge_records (Iterable): DISTANCE 記錄，包含已收斂的邊。

    Returns:
        list: 依中心遞增排列的 StarGraph。
    """
    return harness.run_phase(edge_records, _mr1_map, _mr1_reduce, phase='MR1')


# MR2 ------------------------------------------------------------------------

def _mr2_map(star, scheme):
    keys = set()
    for v, _ in star.neighbors:
        keys |= find_subgraphs(star.center, v, scheme)
    return [(key, star) for key in sorted(keys)]


def _mr2_reduce(key, stars, scheme, lam):
    for edge, s_i in reduce_subgraph(key, stars, scheme, lam):
        yield Record(edge, RecordKind.PARTIAL, (tuple(key), s_i))


def mr2_interactions(harness, stars, scheme, lam):
    """MR2（DecGP）：把星狀圖送到所有相關子圖，在子圖內計算縮放後的 S_I。

    Returns:
        list: PARTIAL 記錄，value 為 (子圖鍵, S_I)。
    """
    return harness.run_phase(
        stars,
        functools.partial(_mr2_map, scheme=scheme),
        functools.partial(_mr2_reduce, scheme=scheme, lam=lam),
        phase='MR2',
    )


def aggregate_partials(partials):
    """依子圖鍵遞增的固定順序把同一條邊的 S_I 加總成 Δ。"""
    grouped = {}
    for record in partials:
        grouped.setdefault(record.key, []).append(record.value)
    return {edge: sum(s for _, s in sorted(values)) for edge, values in grouped.items()}


# MR3 ------------------------------------------------------------------------

def _mr3_map(record):
    return [(record.key, record)]


def _mr3_reduce(edge, records, policy, t):
    d_t = None
    window = None
    partials = []
    for record in records:
        if record.kind is RecordKind.DISTANCE:
            d_t = record.value
        elif record.kind is RecordKind.WINDOW:
            window = record.value
        elif record.kind is RecordKind.PARTIAL:
            partials.append(record.value)
    if d_t is None:
        raise PipelineIntegrityError(f"Edge {edge} received S_I partials but no distance record")
    if d_t == 0.0 or d_t == 1.0:
        return
    if not partials:
        raise PipelineIntegrityError(f"Live edge {edge} received no S_I partials")
    delta = sum(s for _, s in sorted(partials))
    if policy.enabled:
        window = window.copy() if window is not None else policy.new_window()
    d_next, decision = update_distance(d_t, delta, window, policy, t)
    yield Record(edge, RecordKind.STATE, (EdgeState(edge, d_next, window), decision is not Decision.NO_DECISION))


def mr3_update(harness, partials, states, policy, t):
    """MR3：加總 S_I、更新距離與滑動視窗。

    Args:
        harness (MapReduceHarness): 執行器。
        partials (list): MR2 輸出的 PARTIAL 記錄。
        states (dict): 未收斂邊的 EdgeState。
        policy (WindowPolicy): 視窗策略。
        t (int): 目前的迭代編號。

    Returns:
        list: (EdgeState, 是否被視窗強制收斂)，依邊遞增排列。
    """
    records = list(partials)
    for key, state in states.items():
        records.append(Record(key, RecordKind.DISTANCE, state.distance))
        if state.window is not None:
            records.append(Record(key, RecordKind.WINDOW, state.window))
    output = harness.run_phase(
        records, _mr3_map, functools.partial(_mr3_reduce, policy=policy, t=t), phase='MR3')
    return [record.value for record in output]


# 驅動迴圈 ---------------------------------------------------------------------

def _distance_records(graph, distances):
    return [Record((u, v), RecordKind.DISTANCE, float(distances[e]))
            for e, (u, v) in enumerate(graph.edges.tolist())]


def mr_deltas(graph, distances, scheme, lam, harness=None):
    """只執行 MR1 與 MR2，回傳每條未收斂邊的 Δ 與 S_I 記錄數。"""
    harness = harness or MapReduceHarness()
    stars = mr1_star_graphs(harness, _distance_records(graph, distances))
    partials = mr2_interactions(harness, stars, scheme, lam)
    return aggregate_partials(partials), len(partials)


class MRAttractor:
    """分割式 Attractor 驅動程式。

    Attributes:
        config (RunConfig): 執行參數。
        scheme (PartitionScheme): 雜湊分割。
        policy (WindowPolicy): 滑動視窗策略。
    """

    def __init__(self, config):
        """初始化驅動程式。

        Args:
            config (RunConfig): 已通過 validate 的執行參數。
        """
        self.config = config
        self.scheme = PartitionScheme(config.partitions)
        self.policy = config.window_policy()

    def run(self, graph, checkpoint_path=None, resume=False):
        """執行 MR 迴圈，直到未收斂邊少於 γ 後交給主節點。

        Args:
            graph (Graph): 輸入圖。
            checkpoint_path (str, optional): 每次 MR 迭代後寫入的檢查點。
            resume (bool, optional): 是否從 checkpoint_path 繼續。

        Returns:
            MRResult: 執行結果。
        """
        config = self.config
        edge_keys = [tuple(e) for e in graph.edges.tolist()]
        index = {key: e for e, key in enumerate(edge_keys)}

        t = 0
        if resume and checkpoint_path:
            t, distances, windows = load_checkpoint(checkpoint_path, graph, config)
            logger.info("Resuming from iteration %d", t)
        else:
            distances = jaccard_init(graph)
            windows = {}
        live = {}
        for e in np.flatnonzero(live_mask(distances)).tolist():
            window = windows.get(e)
            if window is None and self.policy.enabled:
                window = self.policy.new_window()
            live[edge_keys[e]] = EdgeState(edge_keys[e], float(distances[e]), window)

        history, timings, emissions = [], [], []
        mr_iterations = master_iterations = 0
        with MapReduceHarness(config.workers, config.effective_reducers(), config.spill_threshold) as harness:
            while live and t < config.max_iters:
                if len(live) < config.gamma:
                    logger.info("%d live edges < gamma=%d, switching to master node at iteration %d",
                                len(live), config.gamma, t)
                    windows = {index[key]: state.window for key, state in live.items()
                               if state.window is not None}
                    tic = time.perf_counter()
                    result = run_sequential(graph, config.lam, self.policy, config.max_iters,
                                            distances, windows, start_iteration=t, stage='master')
                    timings.append(PhaseTimings(t + 1, master=time.perf_counter() - tic))
                    distances = result.distances
                    history.extend(result.history)
                    master_iterations = result.iterations
                    t += result.iterations
                    live = {edge_keys[e]: None for e in np.flatnonzero(live_mask(distances)).tolist()}
                    break

                timing = PhaseTimings(t + 1)
                tic = time.perf_counter()
                stars = mr1_star_graphs(harness, _distance_records(graph, distances))
                timing.mr1 = time.perf_counter() - tic

                tic = time.perf_counter()
                partials = mr2_interactions(harness, stars, self.scheme, config.lam)
                timing.mr2 = time.perf_counter() - tic

                tic = time.perf_counter()
                updated = mr3_update(harness, partials, live, self.policy, t)
                timing.mr3 = time.perf_counter() - tic

                live_before = len(live)
                forced = 0
                for state, was_forced in updated:
                    distances[index[state.key]] = state.distance
                    forced += int(was_forced)
                    if state.converged:
                        live.pop(state.key, None)
                    else:
                        live[state.key] = state
                history.append(IterationStat(t + 1, live_before, live_before - len(live), forced, 'mr'))
                timings.append(timing)
                emissions.append(len(partials))
                mr_iterations += 1
                t += 1
                logger.info("MR iteration %d: %d live edges, %d S_I records (%.3fs/%.3fs/%.3fs)",
                            t, len(live), len(partials), timing.mr1, timing.mr2, timing.mr3)
                if checkpoint_path:
                    save_checkpoint(checkpoint_path, graph, t, distances,
                                    {index[k]: s.window for k, s in live.items() if s.window is not None},
                                    config)

        if live:
            logger.warning("Not converged after %d iterations: %d edges still live", t, len(live))
        return MRResult(distances, t, mr_iterations, master_iterations, not live,
                        history, timings, emissions)


def run_mrattractor(graph, config, checkpoint_path=None, resume=False):
    """執行 MRAttractor；p < 3 時改用循序引擎。

    Returns:
        MRResult: 執行結果。
    """
    if config.partitions < 3:
        logger.warning("p=%d < 3, falling back to the sequential engine", config.partitions)
        tic = time.perf_counter()
        result = run_sequential(graph, config.lam, config.window_policy(), config.max_iters, stage='master')
        return MRResult(result.distances, result.iterations, 0, result.iterations, result.converged,
                        result.history, [PhaseTimings(1, master=time.perf_counter() - tic)], [])
    config.validate()
    return MRAttractor(config).run(graph, checkpoint_path, resume)
