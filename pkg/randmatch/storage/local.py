# coding=utf-8
"""
本地结果存储 - JSONL/CSV + 汇总 JSON

文件布局（位于 output_dir 下）：
- <stem>.jsonl         首行 header 记录，之后每行一个 trial 记录
- <stem>.csv           以 "# " 开头的来源注释行，之后为表头与逐试验行
- <stem>.summary.json  来源信息 + Summary + analysis

JSON 一律 sort_keys 输出，保证同一配置重跑时除 generated_at 外逐字节相同。
"""

import csv
import io
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from randmatch.montecarlo.spec import ExperimentResult, TrialRecord
from randmatch.storage.base import (
    FORMAT_CSV,
    FORMAT_JSONL,
    FORMATS,
    RECORD_HEADER,
    RECORD_SUMMARY,
    RECORD_TRIAL,
    ProvenanceHeader,
    ResultStore,
)
from randmatch.utils.errors import InvalidParameterError, SchemaMismatchError

SUMMARY_SUFFIX = ".summary.json"
CSV_FIXED_COLUMNS = ["trial_index", "stream_id", "outcome"]


def dumps(data: Any) -> str:
    """稳定的 JSON 序列化"""
    return json.dumps(data, sort_keys=True, ensure_ascii=False)


def provenance_comments(header: ProvenanceHeader) -> List[str]:
    """CSV / 图文件使用的来源注释（不含 # 前缀）"""
    lines = [
        f"artifact: {header.artifact}",
        f"version: {header.version}",
        f"config: {dumps(header.config)}",
    ]
    if header.generated_at:
        lines.append(f"generated_at: {header.generated_at}")
    return lines


def format_jsonl(header: ProvenanceHeader, records: List[TrialRecord]) -> str:
    lines = [dumps(header.to_dict())]
    for record in records:
        data = record.to_dict()
        data["type"] = RECORD_TRIAL
        lines.append(dumps(data))
    return "\n".join(lines) + "\n"


def format_csv(header: ProvenanceHeader, records: List[TrialRecord]) -> str:
    """
    逐试验 CSV；测量量列为全部记录测量量名的并集（排序），缺失值留空
    """
    buffer = io.StringIO()
    for line in provenance_comments(header):
        buffer.write(f"# {line}\n")
    scalar_names = sorted({name for r in records for name in r.scalars})
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_FIXED_COLUMNS + scalar_names)
    for r in records:
        row = [r.trial_index, r.stream_id, r.outcome]
        row.extend(repr(r.scalars[name]) if name in r.scalars else "" for name in scalar_names)
        writer.writerow(row)
    return buffer.getvalue()


def format_summary(header: ProvenanceHeader, result: ExperimentResult) -> str:
    doc = header.to_dict()
    doc["type"] = RECORD_SUMMARY
    doc["summary"] = result.summary.to_dict()
    doc["analysis"] = result.analysis
    return json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2) + "\n"


class LocalResultStore(ResultStore):
    """
    本地结果存储

    Args:
        output_dir: 输出目录，不存在时自动创建
    """

    def __init__(self, output_dir: str = "output"):
        self.output_dir = Path(output_dir)

    @property
    def backend_name(self) -> str:
        return "local"

    def _path(self, stem: str, suffix: str) -> Path:
        self.output_dir.mkdir(parents=True, exist_ok=True)
        return self.output_dir / f"{stem}{suffix}"

    def save_result(
        self,
        result: ExperimentResult,
        header: ProvenanceHeader,
        stem: Optional[str] = None,
        fmt: str = FORMAT_JSONL,
    ) -> Dict[str, Path]:
        if fmt not in FORMATS:
            raise InvalidParameterError(f"不支持的格式 '{fmt}'", suggestion=f"可选: {', '.join(FORMATS)}")
        stem = stem or result.spec.name

        records_path = self._path(stem, f".{fmt}")
        text = format_jsonl(header, result.records) if fmt == FORMAT_JSONL else format_csv(header, result.records)
        records_path.write_text(text, encoding="utf-8")

        summary_path = self._path(stem, SUMMARY_SUFFIX)
        summary_path.write_text(format_summary(header, result), encoding="utf-8")
        return {"records": records_path, "summary": summary_path}

    def load_records(self, path: Path) -> Tuple[ProvenanceHeader, List[TrialRecord]]:
        path = Path(path)
        header: Optional[ProvenanceHeader] = None
        records: List[TrialRecord] = []
        with open(path, "r", encoding="utf-8") as f:
            for line_no, line in enumerate(f, start=1):
                line = line.strip()
                if not line:
                    continue
                try:
                    data = json.loads(line)
                except json.JSONDecodeError as e:
                    raise SchemaMismatchError(str(path), f"第 {line_no} 行不是合法 JSON: {e.msg}")
                kind = data.get("type") if isinstance(data, dict) else None
                if kind == RECORD_HEADER:
                    if header is not None:
                        raise SchemaMismatchError(str(path), f"第 {line_no} 行出现重复的 header")
                    header = ProvenanceHeader.from_dict(data)
                elif kind == RECORD_TRIAL:
                    if header is None:
                        raise SchemaMismatchError(str(path), "trial 记录出现在 header 之前")
                    try:
                        records.append(TrialRecord.from_dict(data))
                    except (KeyError, TypeError, ValueError) as e:
                        raise SchemaMismatchError(str(path), f"第 {line_no} 行 trial 记录字段无效: {e}")
                else:
                    raise SchemaMismatchError(str(path), f"第 {line_no} 行记录类型未知: {kind!r}")
        if header is None:
            raise SchemaMismatchError(str(path), "缺少 header 记录")
        return header, records

    def load_summary(self, path: Path) -> Dict[str, Any]:
        path = Path(path)
        try:
            with open(path, "r", encoding="utf-8") as f:
                doc = json.load(f)
        except json.JSONDecodeError as e:
            raise SchemaMismatchError(str(path), f"不是合法 JSON: {e.msg}")
        if not isinstance(doc, dict) or doc.get("type") != RECORD_SUMMARY or "summary" not in doc:
            raise SchemaMismatchError(str(path), "不是汇总文档（缺少 type=summary 或 summary 字段）")
        return doc
