#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import os
import json
import logging
import hashlib

import numpy as np

from ..window import SlidingWindow
from ..exceptions import PipelineIntegrityError

logger = logging.getLogger(__name__)

CHECKPOINT_VERSION = 1

# 改變這些參數會改變迭代結果，繼續執行時必須與檢查點一致
RESUME_FIELDS = ('lam', 'window', 'tau', 'partitions', 'mode')


def graph_fingerprint(graph):
    """以標準邊列表計算圖的 SHA-1 指紋。"""
    return hashlib.sha1(graph.edges.astype('<i8').tobytes()).hexdigest()


def save_checkpoint(path, graph, iteration, distances, windows, config):
    """把 MR 迭代的狀態寫成 JSON 檢查點。

    先寫入暫存檔再改名，中途中斷不會留下半個檔案。

    Args:
        path (str): 檢查點路徑。
        graph (Graph): 輸入圖。
        iteration (int): 已完成的全域迭代數。
        distances (numpy.ndarray): 依邊編號排列的距離。
        windows (dict): 邊編號到 SlidingWindow 的對照。
        config (RunConfig): 執行參數。
    """
    edges = graph.edges
    data = {
        'version': CHECKPOINT_VERSION,
        'graph': graph_fingerprint(graph),
        'iteration': int(iteration),
        'config': config.to_dict(),
        'distances': [float(d) for d in distances],
        'windows': [windows[e].to_text(tuple(int(x) for x in edges[e])) for e in sorted(windows)],
    }
    tmp_path = f'{path}.tmp'
    with open(tmp_path, 'w', encoding='utf-8') as f:
        json.dump(data, f)
    os.replace(tmp_path, path)
    logger.debug("Checkpoint saved to %s at iteration %d", path, iteration)


def load_checkpoint(path, graph, config=None):
    """讀取 save_checkpoint 寫入的檢查點。

    Args:
        path (str): 檢查點路徑。
        graph (Graph): 必須與寫入時相同的輸入圖。
        config (RunConfig, optional): 提供時檢查 λ、s、τ、p 與模式是否與寫入時相同。

    Returns:
        tuple: (迭代數, 距離陣列, 邊編號到 SlidingWindow 的對照)。

    Raises:
        PipelineIntegrityError: 版本不符、圖不同或執行參數不一致時。
    """
    with open(path, 'r', encoding='utf-8') as f:
        data = json.load(f)
    if data.get('version') != CHECKPOINT_VERSION:
        raise PipelineIntegrityError(f"Unsupported checkpoint version {data.get('version')!r}")
    if data['graph'] != graph_fingerprint(graph):
        raise PipelineIntegrityError(f"Checkpoint {path} was written for a different graph")
    if config is not None:
        stored = data.get('config', {})
        current = config.to_dict()
        changed = [name for name in RESUME_FIELDS if stored.get(name) != current[name]]
        if changed:
            details = ', '.join(f"{name}={stored.get(name)!r} (now {current[name]!r})" for name in changed)
            raise PipelineIntegrityError(f"Checkpoint {path} was written with different settings: {details}")
    distances = np.array(data['distances'], dtype=np.float64)
    windows = {}
    for line in data['windows']:
        (u, v), window = SlidingWindow.from_text(line)
        windows[graph.edge_index(u, v)] = window
    logger.info("Loaded checkpoint %s (iteration %d, %d windows)", path, data['iteration'], len(windows))
    return data['iteration'], distances, windows
