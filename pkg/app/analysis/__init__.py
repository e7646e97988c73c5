# /app/analysis/__init__.py
# title: 解析パッケージ
# role: 解析的最適値と協調指標のAPIを公開する。

from .oracles import (
    OracleInput, expected_r1, expected_r2, expected_r2_immediate, optimal_branch, optimal_r, optimal_r_immediate,
)
from .coordination import (
    IcEstimate, episode_return, estimate_ic, instantaneous_coordination,
    mean_instantaneous_coordination, message_action_pairs, mutual_information, pearson,
)
