# coding=utf-8
"""
结果存储抽象基类和数据模型

定义统一的结果存储接口，所有存储后端都需要实现这些方法
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from randmatch.montecarlo.spec import ExperimentResult, TrialRecord

# 结果文件格式
FORMAT_JSONL = "jsonl"
FORMAT_CSV = "csv"
FORMATS = (FORMAT_JSONL, FORMAT_CSV)

# JSONL 记录类型
RECORD_HEADER = "header"
RECORD_TRIAL = "trial"
RECORD_SUMMARY = "summary"


@dataclass
class ProvenanceHeader:
    """
    结果文件的来源信息

    config 为完全解析后的配置；重新运行同一 config 得到的文件
    除 generated_at 外逐字节相同。
    """

    artifact: str                                       # 产物名称
    version: str                                        # 产物版本
    config: Dict[str, Any] = field(default_factory=dict)    # 解析后的配置
    generated_at: str = ""                              # 生成时间（ISO 格式）

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典"""
        return {
            "type": RECORD_HEADER,
            "artifact": self.artifact,
            "version": self.version,
            "config": self.config,
            "generated_at": self.generated_at,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ProvenanceHeader":
        """从字典创建"""
        return cls(
            artifact=data.get("artifact", ""),
            version=data.get("version", ""),
            config=data.get("config", {}),
            generated_at=data.get("generated_at", ""),
        )

    @property
    def experiment(self) -> Optional[Dict[str, Any]]:
        """嵌入的实验描述"""
        return self.config.get("experiment")


class ResultStore(ABC):
    """
    结果存储抽象基类

    所有存储后端都需要实现这些方法，以支持:
    - 保存试验记录（JSONL / CSV）与汇总文档
    - 读回试验记录与汇总文档
    """

    @property
    @abstractmethod
    def backend_name(self) -> str:
        """存储后端名称"""
        pass

    @abstractmethod
    def save_result(
        self,
        result: ExperimentResult,
        header: ProvenanceHeader,
        stem: Optional[str] = None,
        fmt: str = FORMAT_JSONL,
    ) -> Dict[str, Path]:
        """
        保存一次实验的记录与汇总

        Args:
            result: 实验结果
            header: 来源信息
            stem: 文件名主干，默认取实验名称
            fmt: 记录文件格式（jsonl / csv）

        Returns:
            {"records": 记录文件路径, "summary": 汇总文件路径}
        """
        pass

    @abstractmethod
    def load_records(self, path: Path) -> Tuple[ProvenanceHeader, List[TrialRecord]]:
        """
        读取 JSONL 记录文件

        Raises:
            SchemaMismatchError: 文件不符合记录格式
        """
        pass

    @abstractmethod
    def load_summary(self, path: Path) -> Dict[str, Any]:
        """
        读取汇总文档

        Raises:
            SchemaMismatchError: 文件不符合汇总格式
        """
        pass
