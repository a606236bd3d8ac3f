# coding=utf-8
"""
randmatch - 随机图最小代价匹配的求解器与蒙特卡洛实验工具

使用方式:
  python -m randmatch <子命令>     # 模块执行
  randmatch <子命令>               # 安装后执行
"""

__version__ = "1.0.0"

from randmatch.context import AppContext  # noqa: E402

__all__ = ["AppContext", "__version__"]
