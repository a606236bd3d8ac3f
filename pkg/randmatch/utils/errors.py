# coding=utf-8
"""
自定义错误类

定义 randmatch 使用的所有异常类型，每个异常携带错误码、建议和 CLI 退出码。
"""

from typing import Optional


class RandMatchError(Exception):
    """randmatch 错误基类"""

    exit_code = 1

    def __init__(self, message: str, code: str = "RANDMATCH_ERROR", suggestion: Optional[str] = None):
        super().__init__(message)
        self.code = code
        self.message = message
        self.suggestion = suggestion

    def to_dict(self) -> dict:
        """转换为字典格式"""
        error_dict = {
            "code": self.code,
            "message": self.message
        }
        if self.suggestion:
            error_dict["suggestion"] = self.suggestion
        return error_dict


class InvalidParameterError(RandMatchError):
    """参数无效错误"""

    exit_code = 4

    def __init__(self, message: str, suggestion: Optional[str] = None):
        super().__init__(
            message=message,
            code="INVALID_PARAMETER",
            suggestion=suggestion or "请检查参数格式是否正确"
        )


class UnknownExperimentError(InvalidParameterError):
    """实验名称不在目录中"""

    def __init__(self, name: str, available: Optional[list] = None):
        super().__init__(
            message=f"未知实验 '{name}'",
            suggestion=f"可用实验: {', '.join(available)}" if available else None,
        )
        self.code = "UNKNOWN_EXPERIMENT"


class ConfigurationError(RandMatchError):
    """配置错误"""

    exit_code = 4

    def __init__(self, message: str, suggestion: Optional[str] = None):
        super().__init__(
            message=message,
            code="CONFIGURATION_ERROR",
            suggestion=suggestion or "请检查配置文件是否正确"
        )


class SizeGuardError(RandMatchError):
    """穷举规模超限"""

    exit_code = 4

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(
            message=f"{what} 规模 {size} 超过穷举上限 {limit}",
            code="SIZE_GUARD",
            suggestion="穷举求解器仅用于小规模校验，请改用精确求解器"
        )
        self.size = size
        self.limit = limit


class OddVertexCountError(RandMatchError):
    """一般图顶点数为奇数，不存在完美匹配"""

    exit_code = 4

    def __init__(self, n: int):
        super().__init__(
            message=f"顶点数 n={n} 为奇数，无法求完美匹配",
            code="ODD_VERTEX_COUNT",
            suggestion="完美匹配要求顶点数为偶数"
        )
        self.n = n


class GraphParseError(RandMatchError):
    """图文件解析错误"""

    exit_code = 3

    def __init__(self, file_path: str, line_no: int, reason: str):
        super().__init__(
            message=f"解析文件 {file_path} 第 {line_no} 行失败: {reason}",
            code="FILE_PARSE_ERROR",
            suggestion="请检查文件格式是否正确（首行 'bipartite <n_left> <n_right>' 或 'general <n>'）"
        )
        self.file_path = file_path
        self.line_no = line_no
        self.reason = reason


class SchemaMismatchError(RandMatchError):
    """结果文件结构不符"""

    exit_code = 3

    def __init__(self, file_path: str, reason: str):
        super().__init__(
            message=f"结果文件 {file_path} 结构不符: {reason}",
            code="SCHEMA_MISMATCH",
            suggestion="请确认输入文件由同一类实验生成"
        )
        self.file_path = file_path


class NoMatchingError(RandMatchError):
    """第 r 步不存在增广路"""

    exit_code = 2

    def __init__(self, r: int, message: Optional[str] = None):
        super().__init__(
            message=message or f"第 r={r} 步不存在匹配（找不到增广路）",
            code="NO_MATCHING",
            suggestion="稀疏随机图在小 n 时可能不存在匹配，试验中应计为 infeasible"
        )
        self.r = r


class NoPerfectMatchingError(NoMatchingError):
    """图中不存在完美匹配"""

    def __init__(self, r: int = 0):
        super().__init__(r, message=f"图中不存在完美匹配（第 r={r} 步失败）" if r else "图中不存在完美匹配")
        self.code = "NO_PERFECT_MATCHING"


class NumericError(RandMatchError):
    """数值计算未收敛"""

    def __init__(self, message: str, suggestion: Optional[str] = None):
        super().__init__(
            message=message,
            code="NUMERIC_ERROR",
            suggestion=suggestion or "请放宽容差或检查被积函数"
        )


class OptimalityViolationError(RandMatchError):
    """检测到负交错环，给定匹配非最优"""

    def __init__(self, message: str):
        super().__init__(
            message=message,
            code="OPTIMALITY_VIOLATION",
            suggestion="请使用求解器输出的最优匹配构建交错有向图"
        )
