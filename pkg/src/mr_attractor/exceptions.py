#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""MRAttractor 的例外類別。"""


class MRAttractorError(Exception):
    """所有 MRAttractor 例外的基底類別。"""


class EdgeListParseError(MRAttractorError, ValueError):
    """邊列表格式錯誤。

    Attributes:
        line_no (int | None): 發生錯誤的行號（從 1 開始）；無法解碼時為 None。
        offset (int | None): 無法以 UTF-8 解碼的位元組位置。
    """

    def __init__(self, line_no, line, offset=None):
        self.line_no = line_no
        self.line = line
        self.offset = offset
        if offset is not None:
            message = f"Input is not valid UTF-8 at byte offset {offset}"
        else:
            message = f"Malformed edge at line {line_no}: {line!r}"
        super().__init__(message)


class EmptyGraphError(MRAttractorError, ValueError):
    """輸入不含任何邊。"""


class ConfigurationError(MRAttractorError, ValueError):
    """執行參數不合法。"""


class PipelineIntegrityError(MRAttractorError, RuntimeError):
    """階段之間的記錄不一致（缺少距離記錄、星狀圖未送達等）。"""


class NotConvergedError(MRAttractorError, ValueError):
    """仍有未收斂的邊距離。"""


class VertexSetMismatchError(MRAttractorError, ValueError):
    """兩個分群的頂點集合不同。

    Attributes:
        missing (set): 只出現在參考分群的頂點。
        extra (set): 只出現在預測分群的頂點。
    """

    def __init__(self, missing, extra):
        self.missing = set(missing)
        self.extra = set(extra)
        super().__init__(
            f"Vertex sets differ: missing={sorted(self.missing)[:20]} "
            f"extra={sorted(self.extra)[:20]}"
        )


class PhaseError(MRAttractorError, RuntimeError):
    """reduce 函數在某個 key 上失敗。

    Attributes:
        key: 出錯的 reduce key。
    """

    def __init__(self, phase, key, cause):
        self.phase = phase
        self.key = key
        self.cause = cause
        super().__init__(f"Phase {phase} failed on key {key!r}: {cause}")

    def __reduce__(self):
        return (self.__class__, (self.phase, self.key, self.cause))
