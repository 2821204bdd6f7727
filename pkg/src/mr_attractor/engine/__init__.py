"""分割式執行引擎。

此模組提供 MRAttractor 的執行功能，包括：
- 決定性的 map-shuffle-reduce 執行器
- MR1/MR2/MR3 迭代與主節點循序收尾
- 檢查點的儲存與續跑
"""

import time
import logging

from .harness import MapReduceHarness, Record, RecordKind, partition_function, run_phase
from .driver import (EdgeState, PhaseTimings, MRResult, MRAttractor, mr1_star_graphs,
                     mr2_interactions, aggregate_partials, mr3_update, mr_deltas, run_mrattractor)
from .checkpoint import save_checkpoint, load_checkpoint
from ..dynamics import run_sequential

logger = logging.getLogger(__name__)


def detect(graph, config, checkpoint_path=None, resume=False):
    """依 config.mode 執行社群偵測，回傳 MRResult。

    sequential 與 windowed 模式直接使用循序引擎；partitioned 模式使用
    MR 迴圈並在未收斂邊少於 γ 時交給主節點。
    """
    config.validate()
    if config.mode == 'partitioned':
        return run_mrattractor(graph, config, checkpoint_path, resume)
    logger.info("Running %s mode on %r", config.mode, graph)
    tic = time.perf_counter()
    result = run_sequential(graph, config.lam, config.window_policy(), config.max_iters)
    timings = [PhaseTimings(1, master=time.perf_counter() - tic)]
    return MRResult(result.distances, result.iterations, 0, result.iterations, result.converged,
                    result.history, timings, [])


__all__ = ['MapReduceHarness', 'Record', 'RecordKind', 'partition_function', 'run_phase',
           'EdgeState', 'PhaseTimings', 'MRResult', 'MRAttractor', 'mr1_star_graphs',
           'mr2_interactions', 'aggregate_partials', 'mr3_update', 'mr_deltas',
           'run_mrattractor', 'save_checkpoint', 'load_checkpoint', 'detect']
