# coding=utf-8
"""
匹配求解模块

- bipartite: 二部图增量最短增广路求解（C(n, r) 全序列）
- blossom: 一般图最小代价完美匹配
- oracle: 小规模穷举校验
"""

from randmatch.solver.matching import Matching
from randmatch.solver.bipartite import (
    DualCertificate,
    MatchingSequence,
    IncrementalAssignment,
    solve_sequence,
    solve_assignment,
    check_certificate,
)
from randmatch.solver.blossom import (
    BlossomState,
    solve_with_state,
    solve_perfect_matching,
    certificate_violations,
    verify_certificate,
)
from randmatch.solver.oracle import brute_force_bipartite, brute_force_general

__all__ = [
    "Matching",
    "DualCertificate",
    "MatchingSequence",
    "IncrementalAssignment",
    "solve_sequence",
    "solve_assignment",
    "check_certificate",
    "BlossomState",
    "solve_with_state",
    "solve_perfect_matching",
    "certificate_violations",
    "verify_certificate",
    "brute_force_bipartite",
    "brute_force_general",
]
