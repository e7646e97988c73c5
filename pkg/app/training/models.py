# /app/training/models.py
# title: 学習データモデル
# role: 学習設定 (TrainConfig)、エピソードトレース、セッション・実験結果のデータ構造を定義する。

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple, TypedDict

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.environment.models import EnvConfig
from app.environment.signals import BsObservation, ChannelAction, DownlinkMessage, UeObservation, UplinkMessage
from app.learning.q_tables import QTables


class AgentKind(str, Enum):
    """各UEに配置するエージェントの種類。"""
    LEARNER = "learner"
    EXPERT_UE = "expert"
    HAND_CODED_PI1 = "pi1"
    HAND_CODED_PI2 = "pi2"


class EpisodeMode(str, Enum):
    TRAIN = "train"
    EVAL = "eval"


class TrainConfig(BaseModel):
    """
    学習ハイパーパラメータとセッション構成。
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    alpha: float = Field(default=0.3, gt=0.0, le=1.0, description="学習率 α")
    gamma: float = Field(default=1.0, ge=0.0, le=1.0, description="割引率 γ")
    f_eps: float = Field(default=0.999991, gt=0.0, le=1.0, description="探索減衰係数 F_ε")
    eps_start: float = Field(default=1.0, ge=0.0, le=1.0, description="初期探索率 ε_0")
    eps_floor: float = Field(default=0.01, ge=0.0, le=1.0, description="探索率の下限")
    n_tr: int = Field(default=8192, ge=0, description="学習エピソード数")
    n_eval: int = Field(default=128, ge=1, description="評価エピソード数")
    n_rep: int = Field(default=4, ge=1, description="セッションの繰り返し数")
    memory_len: int = Field(default=1, ge=0, description="学習器のメモリ長 N")
    q_init: float = Field(default=0.0, description="未出現状態の初期Q値")
    seed: Optional[int] = Field(default=None, ge=0, description="マスターシード")
    agent_kind: AgentKind = Field(default=AgentKind.LEARNER, description="UEエージェントの種類")

    @field_validator("q_init")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("q_init は有限値でなければなりません。")
        return value


@dataclass
class StepRecord:
    """1ステップ分の記録。UEごとの (o_t, a_t, n_t, m_t) とBS観測、報酬。"""
    t: int
    ue_observations: Tuple[UeObservation, ...]
    channel_actions: Tuple[ChannelAction, ...]
    ul_messages: Tuple[UplinkMessage, ...]
    dl_messages: Tuple[DownlinkMessage, ...]
    bs_observation: BsObservation
    reward: float


@dataclass
class EpisodeTrace:
    """
    1エピソードのトレース。record_steps=Falseで実行した場合stepsは空で、lengthとtotal_rewardのみを持つ。
    """
    episode_index: int
    mode: EpisodeMode
    seed: int
    config_hash: str
    num_ues: int
    steps: List[StepRecord] = field(default_factory=list)
    length: int = 0
    total_reward: float = 0.0


@dataclass
class SessionResult:
    """N_tr個の学習エピソードとN_eval個の評価エピソードからなる学習セッションの結果。"""
    session_id: int
    seed: int
    learning_curve: List[float]
    epsilons: List[float]
    eval_returns: List[float]
    mean_eval: float
    traces: List[EpisodeTrace]
    q_tables: QTables


class ExperimentSummary(TypedDict):
    """実験結果の集計値。"""
    config_hash: str
    n_rep: int
    mean: float
    std_error: float
    best: float
    session_means: List[float]


@dataclass
class ExperimentResult:
    """N_rep個のセッションの集計。"""
    env_config: EnvConfig
    train_config: TrainConfig
    config_hash: str
    sessions: List[SessionResult]
    mean: float
    std_error: float
    best: float
    eval_env_config: Optional[EnvConfig] = None

    @property
    def best_session(self) -> SessionResult:
        return max(self.sessions, key=lambda session: session.mean_eval)

    def summary(self) -> ExperimentSummary:
        return {
            "config_hash": self.config_hash,
            "n_rep": len(self.sessions),
            "mean": self.mean,
            "std_error": self.std_error,
            "best": self.best,
            "session_means": [session.mean_eval for session in self.sessions],
        }


GridRow = Dict[str, Any]
