# coding=utf-8
"""
randmatch 命令行入口

子命令：
  generate     生成随机图并写出图文件
  solve        求解图文件中的匹配问题
  experiment   运行目录中的实验或配置文件描述的实验
  plotdata     把结果文件整理成绘图数据表
  diagnose     对单个实例做 ab-直径与最大边探测
  theory       输出理论参考值

退出码：0 成功，2 实例不可行，3 解析错误，4 前置条件不满足，1 内部错误。
"""

import argparse
import json
import math
import sys
from pathlib import Path
from typing import Any, Dict, Optional, Sequence

import yaml

from randmatch import __version__, theory
from randmatch.context import AppContext
from randmatch.core import load_config
from randmatch.diagnostics import augmenting_cost_check, max_matching_edge_cost, probe_diameter
from randmatch.graph import (
    GNNP,
    GNP,
    MODELS,
    PURPOSE_GRAPH,
    PURPOSE_PAIRS,
    PURPOSE_SPECIAL,
    ModelSpec,
    RngStream,
    SpecialVertexConfig,
    augment_special_vertex,
    format_graph,
    generate,
    read_graph,
    write_graph,
)
from randmatch.montecarlo import ExperimentSpec, available_experiments, build_experiment, execute
from randmatch.report import PLOT_KINDS, plot_table_from_files
from randmatch.solver import (
    certificate_violations,
    check_certificate,
    solve_sequence,
    solve_with_state,
)
from randmatch.storage import ProvenanceHeader, provenance_comments
from randmatch.storage.local import dumps
from randmatch.utils.errors import (
    ConfigurationError,
    InvalidParameterError,
    NoMatchingError,
    NoPerfectMatchingError,
    OptimalityViolationError,
    RandMatchError,
)
from randmatch.utils.validators import parse_float_list, validate_probability

MODE_ASSIGNMENT = "assignment"
MODE_SEQUENCE = "sequence"
MODE_GENERAL = "general"
SOLVE_MODES = (MODE_ASSIGNMENT, MODE_SEQUENCE, MODE_GENERAL)

EXPERIMENT_FILE_SUFFIXES = (".yaml", ".yml", ".json", ".jsonl")


def _log(message: str, quiet: bool = False) -> None:
    if not quiet:
        print(message, file=sys.stderr)


def _emit(text: str, out: Optional[str]) -> None:
    """写到 --out 指定的文件，未指定时写到标准输出"""
    if out and out != "-":
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def _stamped(doc: Dict[str, Any], header: ProvenanceHeader) -> Dict[str, Any]:
    """在 JSON 结果文档中加入 artifact / version / config / generated_at"""
    stamped = {key: value for key, value in header.to_dict().items() if key != "type"}
    stamped.update(doc)
    return stamped


def _comment_block(header: ProvenanceHeader) -> str:
    return "".join(f"# {line}\n" for line in provenance_comments(header))


class _Parser(argparse.ArgumentParser):
    """用法错误按参数无效处理（退出码 4），避免与“不可行”的 2 冲突"""

    def error(self, message: str):
        raise InvalidParameterError(f"命令行参数错误: {message}", suggestion=f"运行 '{self.prog} -h' 查看用法")


# ==================== generate ====================

def cmd_generate(args: argparse.Namespace, ctx: AppContext) -> int:
    spec = ModelSpec(args.model, args.n, validate_probability(args.p), args.rate)
    seed = ctx.seed
    rng = RngStream.for_purpose(seed, PURPOSE_GRAPH, args.index)
    g = generate(spec, rng)

    config: Dict[str, Any] = {
        "command": "generate",
        "model": spec.to_dict(),
        "seed": seed,
        "index": args.index,
        "stream_id": rng.stream_id,
    }
    if args.special_lambda is not None:
        if not spec.is_bipartite:
            raise InvalidParameterError("特殊顶点只能添加到二部模型")
        special_rng = RngStream.for_purpose(seed, PURPOSE_SPECIAL, args.index)
        g = augment_special_vertex(g, SpecialVertexConfig(args.special_lambda), special_rng)
        config["special_lambda"] = args.special_lambda

    comments = ctx.graph_comments(config)
    if args.out and args.out != "-":
        path = write_graph(g, args.out, comments)
        _log(f"[生成] ✅ {spec.model} n={spec.n} p={spec.p}: {g.edge_count} 条边 -> {path}", args.quiet)
    else:
        sys.stdout.write(format_graph(g, comments))
    return 0


# ==================== solve ====================

def _default_mode(g) -> str:
    return MODE_ASSIGNMENT if g.is_bipartite else MODE_GENERAL


def _solve_document(g, mode: str, r_max: Optional[int]) -> Dict[str, Any]:
    """
    求解并检查证书，返回结果文档

    Raises:
        InvalidParameterError: 模式与图类型不符
        NoMatchingError / NoPerfectMatchingError: 实例不可行
        OddVertexCountError: 一般图顶点数为奇数
    """
    doc: Dict[str, Any] = {"mode": mode}
    if mode in (MODE_ASSIGNMENT, MODE_SEQUENCE):
        if not g.is_bipartite:
            raise InvalidParameterError(f"{mode} 模式需要二部图文件", suggestion="一般图请使用 --mode general")
        if mode == MODE_ASSIGNMENT:
            if g.n_left != g.n_right:
                raise InvalidParameterError(f"assignment 模式要求两侧顶点数相等，当前为 {g.n_left}×{g.n_right}")
            r_max = g.n_left
        try:
            seq = solve_sequence(g, r_max, keep_matchings=True)
        except NoMatchingError as e:
            if mode != MODE_ASSIGNMENT:
                raise
            raise NoPerfectMatchingError(e.r) from e
        matching = seq.final_matching
        violations = check_certificate(g, matching, seq.certificates[-1]) if seq.certificates else []
        if mode == MODE_SEQUENCE:
            doc["costs"] = list(seq.costs)
            doc["increments"] = list(seq.increments)
    else:
        if g.is_bipartite:
            raise InvalidParameterError("general 模式需要一般图文件", suggestion="二部图请使用 --mode assignment")
        state = solve_with_state(g)
        matching = state.matching
        violations = certificate_violations(g, matching, state)

    doc["cost"] = matching.cost
    doc["matching"] = matching.to_dict()
    doc["certificate"] = {"valid": not violations, "violations": violations}
    return doc


def _format_solve_text(doc: Dict[str, Any]) -> str:
    lines = [f"mode: {doc['mode']}"]
    if doc["mode"] == MODE_SEQUENCE:
        for r, (cost, inc) in enumerate(zip(doc["costs"], doc["increments"]), start=1):
            lines.append(f"r={r} cost={cost!r} increment={inc!r}")
    lines.append(f"cost: {doc['cost']!r}")
    lines.append("matching:")
    pairs = doc["matching"]["pairs"]
    for (u, v), w in zip(pairs, doc["matching"]["weights"]):
        lines.append(f"  {u} {v} {w!r}")
    cert = doc["certificate"]
    lines.append("certificate: ok" if cert["valid"] else f"certificate: FAILED ({len(cert['violations'])})")
    lines.extend(f"  {v}" for v in cert["violations"])
    return "\n".join(lines) + "\n"


def cmd_solve(args: argparse.Namespace, ctx: AppContext) -> int:
    g = read_graph(args.graph)
    mode = args.mode or _default_mode(g)
    doc = _solve_document(g, mode, args.rmax)
    header = ctx.command_header("solve", {"graph": str(args.graph), "mode": mode, "rmax": args.rmax})
    if args.json:
        text = dumps(_stamped(doc, header)) + "\n"
    else:
        text = _comment_block(header) + _format_solve_text(doc)
    _emit(text, args.out)
    if not doc["certificate"]["valid"]:
        raise OptimalityViolationError("最优性证书检查失败: " + "; ".join(doc["certificate"]["violations"]))
    _log(f"[求解] ✅ {mode}: cost={doc['cost']!r}", args.quiet)
    return 0


# ==================== experiment ====================

def _flag_params(args: argparse.Namespace) -> Dict[str, Any]:
    params = {
        "r": args.r,
        "r_max": args.r_max,
        "lambda": args.lam,
        "mu_constant": args.mu_constant,
        "threshold_constant": args.threshold_constant,
        "k": args.k,
        "pair_samples": args.pair_samples,
    }
    if args.epsilons is not None:
        params["epsilons"] = parse_float_list(args.epsilons, "epsilons")
    return {key: value for key, value in params.items() if value is not None}


def _load_experiment_document(path: Path, ctx: AppContext) -> Dict[str, Any]:
    """读取实验配置文件或结果文件中嵌入的配置"""
    if not path.exists():
        raise ConfigurationError(f"实验配置文件 {path} 不存在")
    if path.suffix == ".jsonl":
        header, _ = ctx.store.load_records(path)
        return header.config
    try:
        with open(path, "r", encoding="utf-8") as f:
            doc = yaml.safe_load(f) or {}
    except yaml.YAMLError as e:
        raise ConfigurationError(f"实验配置文件 {path} 解析失败: {e}")
    if not isinstance(doc, dict):
        raise ConfigurationError(f"实验配置文件 {path} 顶层必须是映射")
    # 汇总文档：来源信息在 config 下
    if isinstance(doc.get("config"), dict):
        return doc["config"]
    return doc


def _spec_from_document(doc: Dict[str, Any], args: argparse.Namespace) -> ExperimentSpec:
    """由实验描述构造 ExperimentSpec，命令行参数覆盖文件中的值"""
    experiment = doc.get("experiment", doc)
    if not isinstance(experiment, dict):
        raise ConfigurationError("experiment 必须是映射")
    experiment = dict(experiment)
    model = dict(experiment.get("model") or {})
    if args.model is not None:
        model["model"] = args.model
    if args.n is not None:
        model["n"] = args.n
    if args.p is not None:
        model["p"] = args.p
    experiment["model"] = model
    if args.trials is not None:
        experiment["trials"] = args.trials
    if args.seed is not None:
        experiment["base_seed"] = args.seed
    params = dict(experiment.get("params") or {})
    params.update(_flag_params(args))
    experiment["params"] = params
    experiment.setdefault("name", Path(args.target).name.split(".")[0])
    return ExperimentSpec.from_dict(experiment)


def cmd_experiment(args: argparse.Namespace, ctx: AppContext) -> int:
    target = args.target
    path = Path(target)
    if path.suffix in EXPERIMENT_FILE_SUFFIXES:
        doc = _load_experiment_document(path, ctx)
        if args.format is None and doc.get("format"):
            ctx = ctx.with_overrides(format=doc["format"])
        spec = _spec_from_document(doc, args)
    else:
        params = ctx.experiment_params
        params.update(_flag_params(args))
        spec = build_experiment(
            target,
            base_seed=ctx.seed,
            n=args.n,
            p=args.p,
            trials=args.trials,
            model=args.model,
            params=params,
        )

    fmt = ctx.output_format
    _log(f"[实验] 开始 {spec.name}: quantity={spec.quantity} trials={spec.trials} seed={spec.base_seed}", args.quiet)
    result = execute(spec, workers=ctx.workers, quiet=args.quiet, chunk_size=ctx.chunk_size)
    if result.summary.trials_infeasible:
        _log(f"[警告] {result.summary.trials_infeasible}/{result.summary.trials} 次试验不可行，已从均值中排除", args.quiet)

    paths = ctx.store.save_result(result, ctx.experiment_header(spec), stem=args.stem, fmt=fmt)
    _log(f"[实验] ✅ 记录: {paths['records']}", args.quiet)
    _log(f"[实验] ✅ 汇总: {paths['summary']}", args.quiet)
    print(result.theory_line)
    return 0


# ==================== plotdata ====================

def cmd_plotdata(args: argparse.Namespace, ctx: AppContext) -> int:
    table = plot_table_from_files(args.kind, args.files, ctx.store)
    header = ctx.command_header("plotdata", {"kind": args.kind, "inputs": [str(f) for f in args.files]})
    _emit(table.to_csv(provenance_comments(header)), args.out)
    _log(f"[生成] ✅ {args.kind}: {len(table.rows)} 行", args.quiet)
    return 0


# ==================== diagnose ====================

def _diagnose_instance(args: argparse.Namespace, ctx: AppContext):
    """返回 (图, 边概率, 来源描述)"""
    if args.graph:
        g = read_graph(args.graph)
        if g.is_bipartite:
            possible = g.n_left * g.n_right
        else:
            possible = g.n * (g.n - 1) // 2
        p = g.edge_count / possible if possible else 1.0
        return g, p, {"graph": str(args.graph)}
    if args.model is None or args.n is None:
        raise InvalidParameterError("请提供图文件，或同时给出 --model 与 --n")
    spec = ModelSpec(args.model, args.n, validate_probability(1.0 if args.p is None else args.p))
    rng = RngStream.for_purpose(ctx.seed, PURPOSE_GRAPH, args.index)
    return generate(spec, rng), spec.p, {"model": spec.to_dict(), "seed": ctx.seed, "index": args.index}


def cmd_diagnose(args: argparse.Namespace, ctx: AppContext) -> int:
    g, p, source = _diagnose_instance(args, ctx)
    n = g.n_left if g.is_bipartite else g.n
    cfg = ctx.diagnostics_config(n, g.is_bipartite)
    doc: Dict[str, Any] = {"source": source, "diagnostics": cfg.to_dict()}

    if g.is_bipartite:
        r = n - theory.default_cutoff(n) if args.r is None else args.r
        seq = solve_sequence(g, r)
        matching = seq.final_matching
        doc["r"] = r
        if args.check_augmenting and r < g.n_left:
            doc["augmenting_check"] = augmenting_cost_check(g, r, cfg).to_dict()
    else:
        state = solve_with_state(g)
        matching = state.matching
        doc["r"] = len(matching)

    rng = RngStream.for_purpose(ctx.seed, PURPOSE_PAIRS, args.index)
    digraph, report = probe_diameter(g, matching, cfg, rng)
    doc["digraph"] = {"nodes": digraph.node_count, "forward_arcs": digraph.forward_count,
                      "backward_arcs": digraph.backward_count}
    doc["diameter"] = report.to_dict()

    if len(matching):
        max_edge = max_matching_edge_cost(matching)
        scale = math.log(n) / (n * p) if n > 1 and p > 0 else None
        doc["max_edge"] = {
            "cost": max_edge,
            "scaled": max_edge / scale if scale else None,
            "p": p,
        }

    options = {"source": source, "r": args.r, "k": args.k, "pair_samples": args.pair_samples,
               "check_augmenting": args.check_augmenting}
    doc = _stamped(doc, ctx.command_header("diagnose", options))
    _emit(json.dumps(doc, sort_keys=True, ensure_ascii=False, indent=2) + "\n", args.out)
    if report.within_bound is False:
        _log(f"[诊断] ⚠️ 最大跳数 {report.max_hops} 超过上界 k0={report.bound}", args.quiet)
    else:
        _log(f"[诊断] ✅ 最大跳数 {report.max_hops}，上界 k0={report.bound}", args.quiet)
    return 0


# ==================== theory ====================

def cmd_theory(args: argparse.Namespace, ctx: AppContext) -> int:
    params = theory.TheoryParams(n=args.n, r=args.r or 0, p=validate_probability(args.p))
    n, p = params.n, params.p
    values: Dict[str, Any] = {
        "n": n,
        "p": p,
        "m": params.m,
        "zeta2": theory.ZETA2,
        "half_zeta2": theory.HALF_ZETA2,
        "harmonic": theory.harmonic(n),
        "harmonic_asymptotic": theory.harmonic_asymptotic(n),
        "parisi_sum": theory.parisi_sum(n),
        "double_sum": theory.double_sum(n, params.m),
        "general_bound_lower": theory.general_bound_sum(n, params.m),
        "general_bound_upper": theory.general_bound_sum(n, params.m, upper=True),
        "mlim_integral": theory.mlim_integral(args.tolerance),
        "limit_bipartite": theory.limit_value(GNNP, p),
        "limit_general": theory.limit_value(GNP, p),
    }
    if args.r:
        values["r"] = params.r
        values["pnr"] = theory.pnr_theory(n, params.r, p)
        values["expected_increment"] = theory.expected_increment(n, params.r, p)
        if args.lam is not None:
            values["lambda"] = args.lam
            values["pnr_finite_lambda"] = theory.pnr_finite_lambda(n, params.r, p, args.lam)
    options = {"n": args.n, "p": args.p, "r": args.r, "lambda": args.lam, "tolerance": args.tolerance}
    values = _stamped(values, ctx.command_header("theory", options))
    _emit(json.dumps(values, sort_keys=True, ensure_ascii=False, indent=2) + "\n", args.out)
    return 0


# ==================== 参数解析 ====================

def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="配置文件路径（默认 config/config.yaml 或 RANDMATCH_CONFIG）")
    parser.add_argument("--seed", type=int, help="基础种子（覆盖 RANDMATCH_SEED 与配置文件）")
    parser.add_argument("--quiet", action="store_true", help="不输出进度信息")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="randmatch",
        description="randmatch - 随机图最小代价匹配的求解器与蒙特卡洛实验工具",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="退出码: 0 成功, 2 实例不可行, 3 解析错误, 4 前置条件不满足, 1 内部错误",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    pg = sub.add_parser("generate", help="生成随机图")
    _add_common(pg)
    pg.add_argument("--model", choices=MODELS, required=True, help="随机图模型")
    pg.add_argument("--n", type=int, required=True, help="顶点数（二部图为每侧顶点数）")
    pg.add_argument("--p", type=float, default=1.0, help="边概率 (0, 1]，默认 1")
    pg.add_argument("--rate", type=float, default=1.0, help="边权指数分布速率，默认 1")
    pg.add_argument("--index", type=int, default=0, help="流编号中的实例序号，默认 0")
    pg.add_argument("--special-lambda", type=float, dest="special_lambda", help="添加特殊顶点 b_{n+1}，其边权速率为 λ")
    pg.add_argument("--out", help="输出图文件路径，默认标准输出")
    pg.set_defaults(func=cmd_generate)

    ps = sub.add_parser("solve", help="求解图文件")
    _add_common(ps)
    ps.add_argument("graph", help="图文件路径")
    ps.add_argument("--mode", choices=SOLVE_MODES, help="求解模式，默认按图类型选择")
    ps.add_argument("--rmax", type=int, help="sequence 模式的步数，默认 n_left")
    ps.add_argument("--json", action="store_true", help="输出 JSON 文档")
    ps.add_argument("--out", help="输出文件路径，默认标准输出")
    ps.set_defaults(func=cmd_solve)

    pe = sub.add_parser("experiment", help="运行实验")
    _add_common(pe)
    pe.add_argument("target", help=f"目录名称（{', '.join(available_experiments())}）或实验配置文件")
    pe.add_argument("--model", choices=MODELS, help="覆盖随机图模型")
    pe.add_argument("--n", type=int, help="覆盖顶点数")
    pe.add_argument("--p", type=float, help="覆盖边概率")
    pe.add_argument("--trials", type=int, help="覆盖试验次数")
    pe.add_argument("--r", type=int, help="pnr / membership / diameter 的 r")
    pe.add_argument("--r-max", type=int, dest="r_max", help="cost_sequence 的步数")
    pe.add_argument("--lambda", type=float, dest="lam", help="特殊顶点边权速率 λ")
    pe.add_argument("--mu-constant", type=float, dest="mu_constant", help="截断点常数 c，μ = c·log n/(np)")
    pe.add_argument("--threshold-constant", type=float, dest="threshold_constant", help="最大边阈值常数")
    pe.add_argument("--epsilons", help="集中性偏差列表，如 0.1,0.3")
    pe.add_argument("--k", type=int, help="交错有向图每个顶点保留的最便宜边数")
    pe.add_argument("--pair-samples", type=int, dest="pair_samples", help="ab-直径抽样对数")
    pe.add_argument("--workers", type=int, help="并行进程数，0 表示全部 CPU（覆盖 RANDMATCH_WORKERS）")
    pe.add_argument("--format", choices=("jsonl", "csv"), help="记录文件格式")
    pe.add_argument("--out-dir", dest="output_dir", help="输出目录（覆盖 RANDMATCH_OUTPUT_DIR）")
    pe.add_argument("--stem", help="输出文件名主干，默认为实验名称")
    pe.set_defaults(func=cmd_experiment)

    pp = sub.add_parser("plotdata", help="生成绘图数据表")
    _add_common(pp)
    pp.add_argument("kind", choices=PLOT_KINDS, help="表类型")
    pp.add_argument("files", nargs="*", help="结果文件（.jsonl 或 .summary.json）")
    pp.add_argument("--out", help="输出 CSV 路径，默认标准输出")
    pp.set_defaults(func=cmd_plotdata)

    pd = sub.add_parser("diagnose", help="单实例结构诊断")
    _add_common(pd)
    pd.add_argument("graph", nargs="?", help="图文件路径；省略时按 --model/--n/--p 生成")
    pd.add_argument("--model", choices=MODELS, help="生成实例的模型")
    pd.add_argument("--n", type=int, help="生成实例的顶点数")
    pd.add_argument("--p", type=float, help="生成实例的边概率")
    pd.add_argument("--index", type=int, default=0, help="流编号中的实例序号，默认 0")
    pd.add_argument("--r", type=int, help="二部图的匹配步数，默认 n − ⌊n/(log n)²⌋")
    pd.add_argument("--k", type=int, help="每个顶点保留的最便宜边数")
    pd.add_argument("--pair-samples", type=int, dest="pair_samples", help="抽样对数")
    pd.add_argument("--check-augmenting", action="store_true", dest="check_augmenting",
                    help="额外比较 a_{r+1} 的最小交错增广代价与求解器增量")
    pd.add_argument("--out", help="输出 JSON 路径，默认标准输出")
    pd.set_defaults(func=cmd_diagnose)

    pt = sub.add_parser("theory", help="输出理论参考值")
    _add_common(pt)
    pt.add_argument("--n", type=int, required=True, help="顶点数")
    pt.add_argument("--p", type=float, default=1.0, help="边概率，默认 1")
    pt.add_argument("--r", type=int, help="匹配步数（输出 P(n, r) 与增量期望）")
    pt.add_argument("--lambda", type=float, dest="lam", help="有限 λ 下的 P(n, r)")
    pt.add_argument("--tolerance", type=float, default=1e-8, help="π²/12 积分的误差容限")
    pt.add_argument("--out", help="输出 JSON 路径，默认标准输出")
    pt.set_defaults(func=cmd_theory)

    return parser


def _context_for(args: argparse.Namespace) -> AppContext:
    config = load_config(args.config, quiet=args.quiet)
    return AppContext(config).with_overrides(
        seed=args.seed,
        workers=getattr(args, "workers", None),
        output_dir=getattr(args, "output_dir", None),
        format=getattr(args, "format", None),
        k=getattr(args, "k", None),
        pair_samples=getattr(args, "pair_samples", None),
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    """主程序入口，返回退出码"""
    debug_mode = False
    try:
        args = build_parser().parse_args(list(argv) if argv is not None else None)
        ctx = _context_for(args)
        debug_mode = ctx.debug
        return args.func(args, ctx)
    except RandMatchError as e:
        print(f"❌ [{e.code}] {e.message}", file=sys.stderr)
        if e.suggestion:
            print(f"   建议: {e.suggestion}", file=sys.stderr)
        if debug_mode:
            raise
        return e.exit_code
    except OSError as e:
        print(f"❌ 文件读写错误: {e}", file=sys.stderr)
        if debug_mode:
            raise
        return 1
    except Exception as e:
        print(f"❌ 程序运行错误: {e}", file=sys.stderr)
        if debug_mode:
            raise
        return 1


if __name__ == "__main__":
    sys.exit(main())
