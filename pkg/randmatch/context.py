# coding=utf-8
"""
应用上下文模块

封装解析后的配置，提供类型化的配置访问、命令行覆盖、来源信息和结果存储。
"""

from typing import Any, Dict, List, Optional

from randmatch import __version__
from randmatch.diagnostics import DEFAULT_PAIR_SAMPLES, DiagnosticsConfig
from randmatch.montecarlo import ExperimentSpec
from randmatch.storage import FORMATS, LocalResultStore, ProvenanceHeader, provenance_comments
from randmatch.utils.errors import ConfigurationError
from randmatch.utils.time import DEFAULT_TIMEZONE, format_timestamp
from randmatch.utils.validators import validate_count, validate_seed

ARTIFACT_NAME = "randmatch"

# 命令行参数名 -> 配置路径
_OVERRIDE_KEYS = {
    "seed": ("RUN", "SEED"),
    "workers": ("RUN", "WORKERS"),
    "output_dir": ("RUN", "OUTPUT_DIR"),
    "format": ("RUN", "FORMAT"),
    "k": ("DIAGNOSTICS", "K"),
    "pair_samples": ("DIAGNOSTICS", "PAIR_SAMPLES"),
}


class AppContext:
    """
    应用上下文类

    使用示例:
        config = load_config()
        ctx = AppContext(config).with_overrides(seed=7)

        spec = build_experiment("parisi", base_seed=ctx.seed, params=ctx.experiment_params)
        header = ctx.experiment_header(spec)
        ctx.store.save_result(result, header, fmt=ctx.output_format)
    """

    def __init__(self, config: Dict[str, Any]):
        """
        初始化应用上下文

        Args:
            config: load_config() 返回的配置字典
        """
        self.config = config
        self._store: Optional[LocalResultStore] = None

    def with_overrides(self, **flags: Any) -> "AppContext":
        """返回应用了命令行参数的新上下文，值为 None 的参数不覆盖"""
        config = {
            key: dict(value) if isinstance(value, dict) else value
            for key, value in self.config.items()
        }
        for name, value in flags.items():
            if value is None:
                continue
            if name not in _OVERRIDE_KEYS:
                raise ConfigurationError(f"未知的覆盖参数 '{name}'")
            section, key = _OVERRIDE_KEYS[name]
            config.setdefault(section, {})[key] = value
        return AppContext(config)

    def _run(self, key: str, default: Any = None) -> Any:
        return self.config.get("RUN", {}).get(key, default)

    # === 配置访问 ===

    @property
    def timezone(self) -> str:
        """获取配置的时区"""
        return self.config.get("TIMEZONE", DEFAULT_TIMEZONE)

    @property
    def debug(self) -> bool:
        return bool(self.config.get("DEBUG", False))

    @property
    def seed(self) -> int:
        """基础种子"""
        return validate_seed(self._run("SEED", 0), "seed")

    @property
    def workers(self) -> int:
        """并行进程数，0 表示使用全部 CPU"""
        return validate_count(self._run("WORKERS", 1), "workers", minimum=0)

    @property
    def chunk_size(self) -> Optional[int]:
        return self._run("CHUNK_SIZE")

    @property
    def output_dir(self) -> str:
        return str(self._run("OUTPUT_DIR", "output"))

    @property
    def output_format(self) -> str:
        """记录文件格式"""
        fmt = self._run("FORMAT", "jsonl")
        if fmt not in FORMATS:
            raise ConfigurationError(f"不支持的结果格式 '{fmt}'", suggestion=f"可选: {', '.join(FORMATS)}")
        return fmt

    @property
    def experiment_params(self) -> Dict[str, Any]:
        """配置文件中给出的实验参数（未给出的键不出现）"""
        section = self.config.get("EXPERIMENT", {})
        mapping = {
            "LAMBDA": "lambda",
            "MU_CONSTANT": "mu_constant",
            "THRESHOLD_CONSTANT": "threshold_constant",
            "EPSILONS": "epsilons",
        }
        return {param: section[key] for key, param in mapping.items() if section.get(key) is not None}

    def diagnostics_config(self, n: int, bipartite: bool) -> DiagnosticsConfig:
        """按图规模与类型构造诊断配置"""
        section = self.config.get("DIAGNOSTICS", {})
        return DiagnosticsConfig.for_graph(
            n,
            bipartite,
            k=section.get("K"),
            pair_samples=section.get("PAIR_SAMPLES") or DEFAULT_PAIR_SAMPLES,
        )

    # === 来源信息 ===

    def make_header(self, config: Dict[str, Any], timestamp: bool = True) -> ProvenanceHeader:
        """
        构造来源信息

        Args:
            config: 影响输出内容的完整配置
            timestamp: 是否写入 generated_at；图文件不写以保证逐字节可复现
        """
        return ProvenanceHeader(
            artifact=ARTIFACT_NAME,
            version=__version__,
            config=config,
            generated_at=format_timestamp(self.timezone) if timestamp else "",
        )

    def experiment_header(self, spec: ExperimentSpec) -> ProvenanceHeader:
        """实验结果文件的来源信息；并行度不影响结果，因此不写入"""
        return self.make_header({"experiment": spec.to_dict(), "format": self.output_format})

    def graph_comments(self, config: Dict[str, Any]) -> List[str]:
        """图文件的来源注释行"""
        return provenance_comments(self.make_header(config, timestamp=False))

    def command_header(self, command: str, options: Dict[str, Any]) -> ProvenanceHeader:
        """solve / plotdata / diagnose / theory 输出的来源信息"""
        return self.make_header({"command": command, "seed": self.seed, **options})

    # === 存储 ===

    @property
    def store(self) -> LocalResultStore:
        """结果存储（延迟创建）"""
        if self._store is None:
            self._store = LocalResultStore(self.output_dir)
        return self._store
