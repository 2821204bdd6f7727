#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from dataclasses import dataclass, asdict, fields

from .exceptions import ConfigurationError
from .window import WindowPolicy

MODES = ('sequential', 'windowed', 'partitioned')


@dataclass
class RunConfig:
    """MRAttractor 的執行參數。

    預設值沿用小型網路實驗的設定：λ=0.5、滑動視窗 s=15、τ=0.5、
    γ=10000。p 預設為 20；最大的測試網路上 p≈14 的效能最好。

    Attributes:
        lam (float): 凝聚參數 λ，介於 [0, 1]。
        window (int): 滑動視窗大小 s，0 表示停用。
        tau (float): 滑動視窗門檻 τ，介於 [0, 1]。
        gamma (int): 未收斂邊數量低於此值時改由主節點循序計算。
        partitions (int): 雜湊分割數 p，分割模式下必須 ≥ 3。
        reducer_count (int): shuffle 之後的 reducer 數量。
        workers (int): 工作程序數量。
        max_iters (int): 最大迭代次數。
        mode (str): 'sequential'、'windowed' 或 'partitioned'。
        seed (int): 保留的隨機種子。
        spill_threshold (int): 單一 reducer 桶超過此記錄數時寫入暫存檔，0 表示不寫。
    """

    lam: float = 0.5
    window: int = 15
    tau: float = 0.5
    gamma: int = 10000
    partitions: int = 20
    reducer_count: int = 30
    workers: int = 1
    max_iters: int = 1000
    mode: str = 'windowed'
    seed: int = 0
    spill_threshold: int = 0

    def validate(self):
        """檢查參數範圍。

        Returns:
            RunConfig: 自身，方便串接呼叫。

        Raises:
            ConfigurationError: 任一參數超出範圍時。
        """
        if self.mode not in MODES:
            raise ConfigurationError(f"Unsupported mode {self.mode!r}. Supported modes: {list(MODES)}")
        if not 0.0 <= self.lam <= 1.0:
            raise ConfigurationError(f"lambda must be in [0, 1], got {self.lam}")
        if not 0.0 <= self.tau <= 1.0:
            raise ConfigurationError(f"tau must be in [0, 1], got {self.tau}")
        if self.window < 0:
            raise ConfigurationError(f"window size must be >= 0, got {self.window}")
        if self.gamma < 0:
            raise ConfigurationError(f"gamma must be >= 0, got {self.gamma}")
        if self.reducer_count < 1:
            raise ConfigurationError(f"reducer_count must be >= 1, got {self.reducer_count}")
        if self.workers < 1:
            raise ConfigurationError(f"workers must be >= 1, got {self.workers}")
        if self.max_iters < 1:
            raise ConfigurationError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.mode == 'partitioned' and self.partitions < 3:
            raise ConfigurationError(f"partitioned mode needs at least 3 partitions, got {self.partitions}")
        return self

    def window_policy(self):
        """取得本次執行的滑動視窗策略；sequential 模式一律停用視窗。"""
        if self.mode == 'sequential':
            return WindowPolicy(s=0, tau=self.tau)
        return WindowPolicy(s=self.window, tau=self.tau)

    def effective_reducers(self):
        """reducer 數量不超過可用的工作程序數。"""
        return max(1, min(self.reducer_count, self.workers))

    def to_dict(self):
        """轉成可寫入 JSON 的字典。"""
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        """由 to_dict 的輸出建立，忽略未知的欄位。"""
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in known})
