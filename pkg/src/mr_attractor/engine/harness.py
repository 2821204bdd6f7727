#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import os
import enum
import pickle
import hashlib
import logging
import tempfile
import multiprocessing
from collections import defaultdict
from typing import NamedTuple, Any

from ..exceptions import PhaseError

logger = logging.getLogger(__name__)


class RecordKind(enum.Enum):
    """階段之間交換的記錄種類。"""

    DISTANCE = 'distance'
    WINDOW = 'window'
    PARTIAL = 'partial'
    STAR = 'star'
    STATE = 'state'


class Record(NamedTuple):
    """鍵值記錄，kind 讓 reducer 分辨 value 的型別。"""

    key: Any
    kind: RecordKind
    value: Any


def partition_function(key, num_reducers):
    """以 MD5 雜湊決定 key 所屬的 reducer，與行程無關。"""
    digest = hashlib.md5(repr(key).encode('utf-8')).hexdigest()
    return int(digest, 16) % num_reducers


class _Bucket:
    """單一 reducer 的 shuffle 緩衝區，超過門檻時寫入暫存檔。"""

    def __init__(self, spill_threshold):
        self.spill_threshold = spill_threshold
        self.buffer = []
        self.spill_path = None
        self.spilled = 0

    def add(self, key, value):
        """加入一筆記錄，超過門檻時寫入暫存檔。"""
        self.buffer.append((key, value))
        if self.spill_threshold and len(self.buffer) >= self.spill_threshold:
            self._spill()

    def _spill(self):
        if self.spill_path is None:
            fd, self.spill_path = tempfile.mkstemp(prefix='mr_attractor_shuffle_', suffix='.pkl')
            os.close(fd)
        with open(self.spill_path, 'ab') as f:
            pickle.dump(self.buffer, f, protocol=pickle.HIGHEST_PROTOCOL)
        self.spilled += len(self.buffer)
        self.buffer = []

    def drain(self):
        """依加入順序讀回所有配對，並以鍵分組、鍵遞增排序。"""
        pairs = []
        if self.spill_path is not None:
            with open(self.spill_path, 'rb') as f:
                while True:
                    try:
                        pairs.extend(pickle.load(f))
                    except EOFError:
                        break
            os.remove(self.spill_path)
            self.spill_path = None
        pairs.extend(self.buffer)
        self.buffer = []
        groups = defaultdict(list)
        for key, value in pairs:
            groups[key].append(value)
        return sorted(groups.items(), key=lambda item: item[0])


def _map_chunk(task):
    map_fn, chunk = task
    emitted = []
    for record in chunk:
        emitted.extend(map_fn(record))
    return emitted


def _reduce_groups(task):
    phase, reduce_fn, groups = task
    output = []
    for key, values in groups:
        try:
            output.append((key, list(reduce_fn(key, values))))
        except Exception as exc:
            raise PhaseError(phase, key, exc) from exc
    return output


class MapReduceHarness:
    """行程內的 map-shuffle-reduce 執行器。

    map 輸出依鍵的雜湊分到 reducer 桶，每個桶內鍵遞增排序後交給 reduce；
    最後所有輸出再依鍵排序合併，因此結果與工作程序數量無關。

    Attributes:
        workers (int): 工作程序數量，1 表示在目前行程內執行。
        reducer_count (int): reducer 桶數量。
        spill_threshold (int): 單一桶超過此記錄數時寫入暫存檔，0 表示不寫。
    """

    def __init__(self, workers=1, reducer_count=1, spill_threshold=0):
        """初始化執行器。

        Args:
            workers (int, optional): 工作程序數量。預設為1。
            reducer_count (int, optional): reducer 桶數量。預設為1。
            spill_threshold (int, optional): 暫存檔門檻。預設為0。
        """
        self.workers = max(1, int(workers))
        self.reducer_count = max(1, int(reducer_count))
        self.spill_threshold = spill_threshold
        self._pool = None

    def __enter__(self):
        if self.workers > 1 and self._pool is None:
            self._pool = multiprocessing.Pool(self.workers)
        return self

    def __exit__(self, exc_type, exc, tb):
        self.close()

    def close(self):
        """關閉工作程序池。"""
        if self._pool is not None:
            self._pool.close()
            self._pool.join()
            self._pool = None

    def _chunks(self, records):
        records = list(records)
        if not records:
            return []
        count = min(len(records), self.workers * 4)
        size = -(-len(records) // count)
        return [records[i:i + size] for i in range(0, len(records), size)]

    def run_phase(self, records, map_fn, reduce_fn, phase='phase'):
        """執行一個 map-shuffle-reduce 階段。

        Args:
            records (Iterable): 輸入記錄。
            map_fn (Callable): record -> 可迭代的 (key, value)；多行程時必須可被 pickle。
            reduce_fn (Callable): (key, values) -> 可迭代的輸出記錄。
            phase (str, optional): 階段名稱，用於錯誤訊息與日誌。

        Returns:
            list: 依鍵遞增排列的所有 reduce 輸出。

        Raises:
            PhaseError: reduce_fn 在某個鍵上丟出例外時。
        """
        chunks = self._chunks(records)
        if self._pool is not None:
            mapped = self._pool.map(_map_chunk, [(map_fn, chunk) for chunk in chunks])
        else:
            mapped = [_map_chunk((map_fn, chunk)) for chunk in chunks]

        buckets = [_Bucket(self.spill_threshold) for _ in range(self.reducer_count)]
        emitted = 0
        for chunk_output in mapped:
            for key, value in chunk_output:
                buckets[partition_function(key, self.reducer_count)].add(key, value)
                emitted += 1
        spilled = sum(b.spilled for b in buckets)
        tasks = [(phase, reduce_fn, bucket.drain()) for bucket in buckets]
        logger.debug("%s: %d records emitted, %d spilled, %d reducers", phase, emitted, spilled, len(tasks))

        if self._pool is not None:
            reduced = self._pool.map(_reduce_groups, tasks)
        else:
            reduced = [_reduce_groups(task) for task in tasks]
        merged = sorted((item for bucket in reduced for item in bucket), key=lambda item: item[0])
        return [out for _, outputs in merged for out in outputs]


def run_phase(records, map_fn, reduce_fn, workers=1, reducer_count=None, phase='phase'):
    """以暫時建立的 MapReduceHarness 執行單一階段。"""
    reducer_count = reducer_count or workers
    with MapReduceHarness(workers, reducer_count) as harness:
        return harness.run_phase(records, map_fn, reduce_fn, phase)
