# /app/environment/models.py
# title: 環境データモデル
# role: シナリオ設定 (EnvConfig) と、UEごとの送信バッファ・配送状況を保持するエピソード状態を定義する。

from dataclasses import dataclass, field
from enum import Enum
from typing import List, NamedTuple, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.environment.signals import BsObservation, UeObservation


class TrafficMode(str, Enum):
    """SDUトラフィックモデル。"""
    FULL_BUFFER_START = "full"
    EMPTY_BUFFER_START = "empty"


class EnvConfig(BaseModel):
    """
    シナリオ設定。UE数、UEあたりのSDU数、BLER、エピソード長などを保持する。
    """
    model_config = ConfigDict(extra="forbid", frozen=True)

    num_ues: int = Field(..., ge=1, description="UE数 |U|")
    sdus_per_ue: int = Field(..., ge=1, description="UEごとに配送すべきSDU数 P")
    bler: float = Field(default=0.0, ge=0.0, le=1.0, description="ブロック誤り率 b")
    t_max: int = Field(..., ge=1, description="エピソードあたりの最大ステップ数")
    buffer_capacity: Optional[int] = Field(default=None, ge=1, description="送信バッファ容量 L (未指定時はP)")
    traffic_mode: TrafficMode = Field(default=TrafficMode.FULL_BUFFER_START, description="開始時バッファの状態")
    arrival_prob: float = Field(default=0.5, ge=0.0, le=1.0, description="空バッファ開始時の1ステップあたりのSDU到着確率")

    @model_validator(mode="before")
    @classmethod
    def _default_capacity(cls, data):
        if isinstance(data, dict) and data.get("buffer_capacity") is None and "sdus_per_ue" in data:
            data = {**data, "buffer_capacity": data["sdus_per_ue"]}
        return data

    @model_validator(mode="after")
    def _check_capacity(self) -> "EnvConfig":
        if self.buffer_capacity is not None and self.buffer_capacity < self.sdus_per_ue:
            raise ValueError(
                f"buffer_capacity ({self.buffer_capacity}) は sdus_per_ue ({self.sdus_per_ue}) 以上でなければなりません。"
            )
        return self

    @property
    def capacity(self) -> int:
        return self.buffer_capacity if self.buffer_capacity is not None else self.sdus_per_ue

    def with_updates(self, **updates) -> "EnvConfig":
        """
        一部のフィールドを置き換えた設定を検証して返す。
        容量がPから既定で決まっていた場合、Pを変えると容量も追従する。
        """
        values = self.model_dump()
        if "sdus_per_ue" in updates and "buffer_capacity" not in updates and self.buffer_capacity == self.sdus_per_ue:
            values["buffer_capacity"] = None
        return EnvConfig.model_validate({**values, **updates})


@dataclass
class SduRecord:
    """送信バッファ内の1つのSDU。"""
    sdu_index: int
    delivered: bool = False


@dataclass
class EnvState:
    """
    1エピソード分の環境状態。stepによってその場で更新される。
    """
    config: EnvConfig
    t: int = 0
    buffers: List[List[SduRecord]] = field(default_factory=list)
    generated_counts: List[int] = field(default_factory=list)
    delivered_flags: List[List[bool]] = field(default_factory=list)
    done: bool = False

    def observations(self) -> List[UeObservation]:
        return [len(buffer) for buffer in self.buffers]

    def all_delivered_and_cleared(self) -> bool:
        p = self.config.sdus_per_ue
        return all(
            count == p and not buffer and all(flags)
            for count, buffer, flags in zip(self.generated_counts, self.buffers, self.delivered_flags)
        )


class StepOutcome(NamedTuple):
    """stepの戻り値。"""
    reward: float
    ue_observations: List[UeObservation]
    bs_observation: BsObservation
    done: bool
