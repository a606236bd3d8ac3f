# coding=utf-8
"""
可复现随机数流

使用 numpy 的 Philox4x64 计数器型生成器：key = (stream_id << 64) | base_seed，
counter 从 0 开始。相同 (base_seed, stream_id) 在任何平台上产生相同的 64 位序列。

stream_id 由 (base_seed, 用途标签, 试验编号) 经 SHA-256 取前 8 字节（大端）派生。
"""

import hashlib
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from randmatch.utils.validators import validate_seed

MASK64 = (1 << 64) - 1

# 用途标签
PURPOSE_GRAPH = "graph"
PURPOSE_SPECIAL = "special"
PURPOSE_PAIRS = "pairs"
PURPOSE_ORIENT = "orient"


def derive_stream_id(base_seed: int, purpose: str, index: int = 0) -> int:
    """
    派生子流编号

    Examples:
        >>> derive_stream_id(1, "graph", 0) == derive_stream_id(1, "graph", 0)
        True
        >>> derive_stream_id(1, "graph", 0) != derive_stream_id(1, "graph", 1)
        True
    """
    key = f"{int(base_seed) & MASK64}:{purpose}:{int(index)}"
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass(frozen=True)
class RngStream:
    """
    随机数流

    作为值在任务之间复制；每个副本各自从计数器 0 开始。
    """

    base_seed: int                      # 64 位基础种子
    stream_id: int = 0                  # 64 位流编号
    _generator: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        base_seed = validate_seed(self.base_seed, "base_seed")
        stream_id = validate_seed(self.stream_id, "stream_id")
        object.__setattr__(self, "base_seed", base_seed)
        object.__setattr__(self, "stream_id", stream_id)
        bit_generator = np.random.Philox(key=(stream_id << 64) | base_seed)
        object.__setattr__(self, "_generator", np.random.Generator(bit_generator))

    @classmethod
    def for_purpose(cls, base_seed: int, purpose: str, index: int = 0) -> "RngStream":
        """按 (base_seed, 用途, 编号) 构造流"""
        return cls(base_seed, derive_stream_id(base_seed, purpose, index))

    def child(self, purpose: str, index: int = 0) -> "RngStream":
        """从当前流派生子流（与父流互不干扰）"""
        return RngStream(self.base_seed, derive_stream_id(self.stream_id, purpose, index))

    def uniform(self, size: Optional[int] = None) -> Union[float, np.ndarray]:
        """[0, 1) 上的均匀分布（53 位精度）"""
        if size is None:
            return float(self._generator.random())
        return self._generator.random(size)

    def uniform_open_left(self, size: Optional[int] = None) -> Union[float, np.ndarray]:
        """(0, 1] 上的均匀分布，即 1 - U[0, 1)"""
        if size is None:
            return 1.0 - float(self._generator.random())
        return 1.0 - self._generator.random(size)

    def integers(self, low: int, high: int, size: Optional[int] = None) -> Union[int, np.ndarray]:
        """[low, high) 上的均匀整数"""
        if size is None:
            return int(self._generator.integers(low, high))
        return self._generator.integers(low, high, size=size)

    def permutation(self, n: int) -> np.ndarray:
        """0..n-1 的随机置换"""
        return self._generator.permutation(n)
