#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import enum
from dataclasses import dataclass, field

import numpy as np

from .exceptions import ConfigurationError

INCREASED = 1
DECREASED = -1
EMPTY = 0


class Decision(enum.Enum):
    """滑動視窗的判定結果。"""

    NO_DECISION = 0
    FORCE_ZERO = 1
    FORCE_ONE = 2


@dataclass(frozen=True)
class WindowPolicy:
    """滑動視窗策略。

    Attributes:
        s (int): 視窗大小，0 表示停用。
        tau (float): 門檻 τ，介於 [0, 1]。
    """

    s: int = 0
    tau: float = 0.5

    def __post_init__(self):
        if self.s < 0:
            raise ConfigurationError(f"window size must be >= 0, got {self.s}")
        if not 0.0 <= self.tau <= 1.0:
            raise ConfigurationError(f"tau must be in [0, 1], got {self.tau}")

    @property
    def enabled(self):
        """s > 0 時啟用。"""
        return self.s > 0

    @property
    def label(self):
        """結果表格使用的標記，例如 "[0.5-10]"；停用時為 "Attractor"。"""
        return f"[{self.tau:g}-{self.s}]" if self.enabled else "Attractor"

    def new_window(self):
        """建立空的滑動視窗。"""
        return SlidingWindow(self.s)


@dataclass
class SlidingWindow:
    """單一邊的滑動視窗，保留最近 s 次距離增減狀態。

    第 t+1 次迭代的狀態寫在位置 (t+1) mod s。

    Attributes:
        s (int): 視窗大小。
        statuses (numpy.ndarray): 長度 s 的環狀緩衝區，元素為 -1、+1 或 0（空）。
        observed (int): 至今記錄過的狀態總數。
    """

    s: int
    statuses: np.ndarray = field(default=None)
    observed: int = 0

    def __post_init__(self):
        if self.statuses is None:
            self.statuses = np.zeros(self.s, dtype=np.int8)

    def record(self, increased, t):
        """記錄第 t+1 次迭代的增減狀態。

        只有距離真的變大才記為 +1，其餘（包含完全相等）記為 -1。

        Args:
            increased (bool): d^{t+1} > d^t 是否成立。
            t (int): 目前的迭代編號（從 0 開始）。

        Returns:
            SlidingWindow: 自身。
        """
        if self.s:
            self.statuses[(t + 1) % self.s] = INCREASED if increased else DECREASED
        self.observed += 1
        return self

    def decide(self, policy, t):
        """依最新狀態與多數門檻判定是否強制收斂。

        Args:
            policy (WindowPolicy): 視窗策略。
            t (int): 目前的迭代編號。

        Returns:
            Decision: FORCE_ZERO、FORCE_ONE 或 NO_DECISION。
        """
        s = policy.s
        if not policy.enabled or s != self.s:
            return Decision.NO_DECISION
        if t + 1 < s or self.observed < s:
            return Decision.NO_DECISION
        last = self.statuses[(t + 1) % s]
        threshold = policy.tau * s
        if last == INCREASED and np.count_nonzero(self.statuses == INCREASED) >= threshold:
            return Decision.FORCE_ONE
        if last == DECREASED and np.count_nonzero(self.statuses == DECREASED) >= threshold:
            return Decision.FORCE_ZERO
        return Decision.NO_DECISION

    def copy(self):
        """深拷貝，不共用狀態陣列。"""
        return SlidingWindow(self.s, self.statuses.copy(), self.observed)

    def to_text(self, key):
        """序列化成 "u v status_0 ... status_{s-1} observed"。"""
        u, v = key
        tokens = [u, v, *(int(x) for x in self.statuses), self.observed]
        return ' '.join(str(token) for token in tokens)

    @classmethod
    def from_text(cls, line):
        """解析 to_text 的輸出。

        Returns:
            tuple: ((u, v), SlidingWindow)。
        """
        tokens = [int(x) for x in line.split()]
        u, v, observed = tokens[0], tokens[1], tokens[-1]
        statuses = np.array(tokens[2:-1], dtype=np.int8)
        return (u, v), cls(len(statuses), statuses, observed)

    def __eq__(self, other):
        if not isinstance(other, SlidingWindow):
            return NotImplemented
        return (self.s == other.s and self.observed == other.observed
                and np.array_equal(self.statuses, other.statuses))


def record(window, increased, t):
    """記錄狀態，同 SlidingWindow.record。"""
    return window.record(increased, t)


def decide(window, policy, t):
    """判定強制收斂，同 SlidingWindow.decide。"""
    return window.decide(policy, t)


def update_distance(d_t, delta, window, policy, t):
    """以交互作用總和更新單一邊的距離，並套用滑動視窗與截斷。

    Δ 為 0 時距離不變、也不記錄狀態；否則 d^{t+1} = d^t - Δ，記錄增減
    狀態後若視窗判定成立則以 0 或 1 覆寫，最後截斷到 [0, 1]。

    Args:
        d_t (float): 第 t 次迭代的距離，必須介於 (0, 1)。
        delta (float): DI + CI + EI。
        window (SlidingWindow | None): 該邊的視窗；policy 停用時可為 None。
        policy (WindowPolicy): 視窗策略。
        t (int): 目前的迭代編號。

    Returns:
        tuple: (新距離, Decision)。
    """
    if delta == 0:
        return d_t, Decision.NO_DECISION
    d_next = d_t - delta
    decision = Decision.NO_DECISION
    if policy.enabled:
        window.record(d_next > d_t, t)
        decision = window.decide(policy, t)
        if decision is Decision.FORCE_ONE:
            d_next = 1.0
        elif decision is Decision.FORCE_ZERO:
            d_next = 0.0
    if d_next >= 1.0:
        d_next = 1.0
    if d_next <= 0.0:
        d_next = 0.0
    return d_next, decision
