# coding=utf-8
"""
绘图数据表

把实验结果整理成整洁的表格（每行一个观测），供外部绘图工具使用，不做渲染。
输入可以是 .summary.json 汇总文档，也可以是 .jsonl 记录文件（此时按嵌入的实验描述重新汇总）。
"""

import csv
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple, Union

from randmatch.montecarlo.estimators import analyze
from randmatch.montecarlo.runner import summarize_experiment
from randmatch.montecarlo.spec import CONCENTRATION, COST_SEQUENCE, MEMBERSHIP, PERFECT_COST, ExperimentSpec
from randmatch.storage.base import ResultStore
from randmatch.storage.local import SUMMARY_SUFFIX, LocalResultStore
from randmatch.utils.errors import InvalidParameterError, RandMatchError, SchemaMismatchError

KIND_CONVERGENCE = "convergence"
KIND_INCREMENTS = "increments"
KIND_CONCENTRATION = "concentration"
KIND_MEMBERSHIP = "membership"

KIND_COLUMNS = {
    KIND_CONVERGENCE: ["n", "p", "p_mean", "p_se", "theory", "rel_dev"],
    KIND_INCREMENTS: ["r", "empirical", "se", "theory", "z"],
    KIND_CONCENTRATION: ["n", "p", "epsilon", "exceedance", "truncated_exceedance", "truncation_differs_frequency"],
    KIND_MEMBERSHIP: ["j", "frequency", "se", "expected"],
}

# 每种表要求的测量量
KIND_QUANTITY = {
    KIND_CONVERGENCE: PERFECT_COST,
    KIND_INCREMENTS: COST_SEQUENCE,
    KIND_CONCENTRATION: CONCENTRATION,
    KIND_MEMBERSHIP: MEMBERSHIP,
}

PLOT_KINDS = tuple(KIND_COLUMNS)


@dataclass
class PlotTable:
    """整洁数据表"""

    kind: str
    columns: List[str]
    rows: List[List[Any]] = field(default_factory=list)

    def to_csv(self, comments: Sequence[str] = ()) -> str:
        """CSV 文本；comments 作为 `# ` 注释行写在表头之前。浮点数用 repr 保留全部精度，None 输出为空"""
        buffer = io.StringIO()
        for line in comments:
            buffer.write(f"# {line}\n")
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow(["" if v is None else (repr(v) if isinstance(v, float) else v) for v in row])
        return buffer.getvalue()


def load_result_document(path: Union[str, Path], store: ResultStore = None) -> Dict[str, Any]:
    """
    读取结果文件，统一成 {config, summary, analysis} 文档

    Raises:
        SchemaMismatchError: 文件类型或内容不符合结果格式
    """
    store = store or LocalResultStore()
    path = Path(path)
    if path.name.endswith(SUMMARY_SUFFIX):
        return store.load_summary(path)
    if path.suffix == ".jsonl":
        header, records = store.load_records(path)
        if not header.experiment:
            raise SchemaMismatchError(str(path), "header 中缺少实验描述")
        try:
            spec = ExperimentSpec.from_dict(header.experiment)
        except RandMatchError as e:
            raise SchemaMismatchError(str(path), f"实验描述无效: {e.message}")
        doc = header.to_dict()
        doc["summary"] = summarize_experiment(spec, records).to_dict()
        doc["analysis"] = analyze(spec, records)
        return doc
    raise SchemaMismatchError(str(path), f"不支持的结果文件类型 '{path.suffix}'，请提供 .jsonl 或 {SUMMARY_SUFFIX}")


def _experiment(path: str, doc: Dict[str, Any], kind: str) -> Dict[str, Any]:
    experiment = doc.get("config", {}).get("experiment")
    if not experiment:
        raise SchemaMismatchError(path, "缺少实验描述")
    expected = KIND_QUANTITY[kind]
    if experiment.get("quantity") != expected:
        raise SchemaMismatchError(
            path, f"{kind} 表需要 {expected} 实验的结果，当前为 {experiment.get('quantity')}"
        )
    return experiment


def _convergence_rows(docs: Sequence[Tuple[str, Dict[str, Any]]]) -> List[List[Any]]:
    rows = []
    for path, doc in docs:
        model = _experiment(path, doc, KIND_CONVERGENCE)["model"]
        summary = doc["summary"]
        comparison = summary.get("comparison") or {}
        rows.append([
            model["n"],
            model["p"],
            summary.get("mean"),
            summary.get("standard_error"),
            comparison.get("theory_value"),
            comparison.get("relative_deviation"),
        ])
    rows.sort(key=lambda row: (row[0], row[1]))
    return rows


def _increment_rows(docs: Sequence[Tuple[str, Dict[str, Any]]]) -> List[List[Any]]:
    rows = []
    for path, doc in docs:
        _experiment(path, doc, KIND_INCREMENTS)
        for row in doc.get("analysis", {}).get("rows", []):
            rows.append([row["r"], row["empirical"], row["standard_error"], row["theory"], row["z_score"]])
    return rows


def _concentration_rows(docs: Sequence[Tuple[str, Dict[str, Any]]]) -> List[List[Any]]:
    rows = []
    for path, doc in docs:
        model = _experiment(path, doc, KIND_CONCENTRATION)["model"]
        analysis = doc.get("analysis", {})
        for row in analysis.get("rows", []):
            rows.append([
                model["n"],
                model["p"],
                row["epsilon"],
                row["exceedance"],
                row["truncated_exceedance"],
                analysis.get("truncation_differs_frequency"),
            ])
    rows.sort(key=lambda row: (row[2], row[0], row[1]))
    return rows


def _membership_rows(docs: Sequence[Tuple[str, Dict[str, Any]]]) -> List[List[Any]]:
    rows = []
    for path, doc in docs:
        _experiment(path, doc, KIND_MEMBERSHIP)
        analysis = doc.get("analysis", {})
        freqs = analysis.get("frequencies", [])
        ses = analysis.get("standard_errors", [])
        for j, freq in enumerate(freqs):
            rows.append([j, freq, ses[j] if j < len(ses) else None, analysis.get("expected")])
    return rows


_ROW_BUILDERS = {
    KIND_CONVERGENCE: _convergence_rows,
    KIND_INCREMENTS: _increment_rows,
    KIND_CONCENTRATION: _concentration_rows,
    KIND_MEMBERSHIP: _membership_rows,
}


def build_plot_table(kind: str, documents: Sequence[Tuple[str, Dict[str, Any]]]) -> PlotTable:
    """
    由 (路径, 结果文档) 列表构造绘图表；空输入得到只有表头的表

    Raises:
        InvalidParameterError: 未知表类型
        SchemaMismatchError: 输入文档的测量量与表类型不符
    """
    if kind not in KIND_COLUMNS:
        raise InvalidParameterError(f"未知绘图表类型 '{kind}'", suggestion=f"可选: {', '.join(PLOT_KINDS)}")
    return PlotTable(kind=kind, columns=list(KIND_COLUMNS[kind]), rows=_ROW_BUILDERS[kind](documents))


def plot_table_from_files(kind: str, paths: Sequence[Union[str, Path]], store: ResultStore = None) -> PlotTable:
    """读取结果文件并构造绘图表"""
    docs = [(str(p), load_result_document(p, store)) for p in paths]
    return build_plot_table(kind, docs)
