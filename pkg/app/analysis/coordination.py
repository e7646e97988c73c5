# /app/analysis/coordination.py
# title: 協調指標
# role: エピソードリターン、瞬時協調度 (DLメッセージと次ステップのチャネル行動の相互情報量)、Pearson相関を計算する。

import math
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple

import numpy as np
from scipy import stats

from app.environment.signals import ChannelAction, DownlinkMessage
from app.exceptions import AnalysisError
from app.training.models import EpisodeTrace

NUM_DL = len(DownlinkMessage)
NUM_ACTIONS = len(ChannelAction)


@dataclass
class IcEstimate:
    """瞬時協調度の推定値と、その元になった同時・周辺頻度表 (行: m_t, 列: a_{t+1})。"""
    ue: int
    ic: float
    joint: np.ndarray
    p_message: np.ndarray
    p_action: np.ndarray
    num_pairs: int


def episode_return(trace: EpisodeTrace) -> float:
    """エピソードの報酬和。ステップを記録していないトレースでは集計済みの値を返す。"""
    if trace.steps:
        return float(sum(step.reward for step in trace.steps))
    return trace.total_reward


def message_action_pairs(traces: Iterable[EpisodeTrace], ue: int) -> List[Tuple[int, int]]:
    """全エピソードから UE ue の (m_t, a_{t+1}) の組を集める。"""
    pairs: List[Tuple[int, int]] = []
    for trace in traces:
        steps = trace.steps
        for current, following in zip(steps, steps[1:]):
            pairs.append((int(current.dl_messages[ue]), int(following.channel_actions[ue])))
    return pairs


def mutual_information(joint_counts: np.ndarray) -> float:
    """
    同時頻度表からのプラグイン推定による相互情報量 (nats)。同時確率0の項は0とする。
    """
    total = joint_counts.sum()
    if total <= 0:
        raise AnalysisError("頻度表が空のため相互情報量を計算できません。")
    joint = joint_counts / total
    p_row = joint.sum(axis=1, keepdims=True)
    p_col = joint.sum(axis=0, keepdims=True)
    mask = joint > 0
    ratio = joint[mask] / (p_row @ p_col)[mask]
    return max(float(np.sum(joint[mask] * np.log(ratio))), 0.0)


def estimate_ic(traces: Sequence[EpisodeTrace], ue: int) -> IcEstimate:
    if not traces:
        raise AnalysisError("トレースが空です。")
    pairs = message_action_pairs(traces, ue)
    if not pairs:
        raise AnalysisError(f"UE {ue} について (m_t, a_(t+1)) の組が1つもありません。")
    counts = np.zeros((NUM_DL, NUM_ACTIONS), dtype=np.float64)
    messages, actions = zip(*pairs)
    np.add.at(counts, (np.array(messages), np.array(actions)), 1.0)
    joint = counts / counts.sum()
    return IcEstimate(
        ue=ue,
        ic=mutual_information(counts),
        joint=joint,
        p_message=joint.sum(axis=1),
        p_action=joint.sum(axis=0),
        num_pairs=len(pairs),
    )


def instantaneous_coordination(traces: Sequence[EpisodeTrace], ue: int) -> float:
    """UE ue の瞬時協調度 I(m_t; a_{t+1}) (nats)。全エピソード・全ステップをプールして推定する。"""
    return estimate_ic(traces, ue).ic


def mean_instantaneous_coordination(traces: Sequence[EpisodeTrace]) -> Tuple[float, float]:
    """全UEで平均した瞬時協調度と、その標準誤差。"""
    if not traces:
        raise AnalysisError("トレースが空です。")
    values = np.array([instantaneous_coordination(traces, ue) for ue in range(traces[0].num_ues)])
    std_error = float(stats.sem(values, ddof=1)) if len(values) > 1 else 0.0
    return float(values.mean()), std_error


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Pearson相関係数 cov(x, y) / (σ_x σ_y)。"""
    xs = np.asarray(x, dtype=np.float64)
    ys = np.asarray(y, dtype=np.float64)
    if xs.shape != ys.shape or xs.ndim != 1 or len(xs) < 2:
        raise AnalysisError(f"同じ長さ (2以上) の1次元系列が必要です: {xs.shape}, {ys.shape}")
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    sx = math.sqrt(float(np.dot(dx, dx)))
    sy = math.sqrt(float(np.dot(dy, dy)))
    if sx == 0.0 or sy == 0.0:
        raise AnalysisError("分散が0の系列に対してPearson相関係数は定義されません。")
    return max(-1.0, min(1.0, float(np.dot(dx, dy)) / (sx * sy)))
