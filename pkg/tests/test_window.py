#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import unittest

import numpy as np

from mr_attractor.window import (WindowPolicy, SlidingWindow, Decision, INCREASED, DECREASED,
                                 EMPTY, record, decide, update_distance)
from mr_attractor.exceptions import ConfigurationError


class TestSlidingWindow(unittest.TestCase):
    """滑動視窗的單元測試。"""

    def setUp(self):
        """測試前的準備工作。"""
        self.policy = WindowPolicy(s=10, tau=0.5)

    def fill(self, statuses, s=10):
        window = SlidingWindow(s)
        for t, increased in enumerate(statuses):
            window.record(increased, t)
        return window, len(statuses) - 1

    def test_record_first_status(self):
        """測試空視窗記錄一次減少。"""
        window = record(SlidingWindow(4), False, 0)
        self.assertEqual(window.statuses.tolist(), [EMPTY, DECREASED, EMPTY, EMPTY])
        self.assertEqual(window.observed, 1)

    def test_record_wraps_around(self):
        """測試第 4 個狀態覆寫位置 4 mod 3。"""
        window, _ = self.fill([True, True, True, False], s=3)
        self.assertEqual(window.statuses.tolist(), [INCREASED, DECREASED, INCREASED])

    def test_force_zero(self):
        """測試 s=10、τ=0.6 時 6 個 -1 且最新為 -1 強制為 0。"""
        window, t = self.fill([True] * 4 + [False] * 6)
        self.assertIs(decide(window, WindowPolicy(s=10, tau=0.6), t), Decision.FORCE_ZERO)

    def test_force_one(self):
        """測試全部為 +1 時強制為 1。"""
        window, t = self.fill([True] * 10)
        self.assertIs(window.decide(self.policy, t), Decision.FORCE_ONE)

    def test_not_full(self):
        """測試視窗未滿時不判定。"""
        window, t = self.fill([False] * 9)
        self.assertIs(window.decide(self.policy, t), Decision.NO_DECISION)

    def test_latest_trend_must_agree(self):
        """測試多數為 -1 但最新為 +1 時不判定。"""
        window, t = self.fill([False] * 7 + [True] * 3)
        self.assertIs(window.decide(WindowPolicy(s=10, tau=0.6), t), Decision.NO_DECISION)

    def test_disabled_policy(self):
        """測試停用的策略永遠不判定。"""
        window, t = self.fill([True] * 10)
        self.assertIs(window.decide(WindowPolicy(), t), Decision.NO_DECISION)
        self.assertFalse(WindowPolicy().enabled)
        self.assertEqual(WindowPolicy().label, 'Attractor')
        self.assertEqual(self.policy.label, '[0.5-10]')

    def test_policy_validation(self):
        """測試 τ 與 s 的範圍檢查。"""
        with self.assertRaises(ConfigurationError):
            WindowPolicy(s=10, tau=1.5)
        with self.assertRaises(ConfigurationError):
            WindowPolicy(s=-1)

    def test_text_roundtrip(self):
        """測試文字交接格式保留完整狀態。"""
        window, _ = self.fill([True, False, False])
        key, restored = SlidingWindow.from_text(window.to_text((3, 8)))
        self.assertEqual(key, (3, 8))
        self.assertEqual(restored, window)

    def test_copy_is_independent(self):
        """測試 copy 不共用狀態陣列。"""
        window, _ = self.fill([True])
        clone = window.copy()
        clone.record(False, 1)
        self.assertNotEqual(clone, window)


    def test_decide_matches_direct_count(self):
        """測試隨機 ±1 序列與隨機 s、τ 下的判定與直接計數一致。"""
        rng = np.random.default_rng(7)
        for _ in range(300):
            s = int(rng.integers(1, 13))
            policy = WindowPolicy(s=s, tau=float(rng.choice([0.0, 0.3, 0.5, 0.6, 0.7, 1.0])))
            start = int(rng.integers(0, 2)) * int(rng.integers(0, 20))
            window = policy.new_window()
            history = []
            for step in range(int(rng.integers(1, 3 * s + 2))):
                t = start + step
                increased = bool(rng.integers(0, 2))
                window.record(increased, t)
                history.append(INCREASED if increased else DECREASED)
                decision = window.decide(policy, t)
                if len(history) < s or t + 1 < s:
                    self.assertIs(decision, Decision.NO_DECISION)
                    continue
                recent = history[-s:]
                ups, downs = recent.count(INCREASED), recent.count(DECREASED)
                if history[-1] == INCREASED and ups >= policy.tau * s:
                    expected = Decision.FORCE_ONE
                elif history[-1] == DECREASED and downs >= policy.tau * s:
                    expected = Decision.FORCE_ZERO
                else:
                    expected = Decision.NO_DECISION
                self.assertIs(decision, expected)
                if decision is Decision.FORCE_ZERO:
                    self.assertEqual(history[-1], DECREASED)
                if decision is Decision.FORCE_ONE:
                    self.assertEqual(history[-1], INCREASED)


class TestUpdateDistance(unittest.TestCase):
    """單邊距離更新的單元測試。"""

    def test_clamp_to_zero(self):
        """測試 d - Δ < 0 時截斷為 0。"""
        d, decision = update_distance(0.2, 0.5, None, WindowPolicy(), 0)
        self.assertEqual(d, 0.0)
        self.assertIs(decision, Decision.NO_DECISION)

    def test_clamp_to_one(self):
        """測試 d - Δ > 1 時截斷為 1。"""
        d, _ = update_distance(0.8, -0.5, None, WindowPolicy(), 0)
        self.assertEqual(d, 1.0)

    def test_zero_delta_keeps_distance(self):
        """測試 Δ=0 時距離不變且不記錄狀態。"""
        policy = WindowPolicy(s=3, tau=0.5)
        window = policy.new_window()
        d, _ = update_distance(0.4, 0.0, window, policy, 0)
        self.assertEqual(d, 0.4)
        self.assertEqual(window.observed, 0)

    def test_window_overrides_value(self):
        """測試視窗判定為 0 時無視計算出的距離。"""
        policy = WindowPolicy(s=3, tau=0.5)
        window = policy.new_window()
        window.record(False, 0)
        window.record(False, 1)
        d, decision = update_distance(0.9, 0.01, window, policy, 2)
        self.assertEqual(d, 0.0)
        self.assertIs(decision, Decision.FORCE_ZERO)
        self.assertTrue(np.all(window.statuses == DECREASED))


if __name__ == '__main__':
    unittest.main()
