# /app/agents/hand_coded_agents.py
# title: 手書きの単一UE方策
# role: 解析的最適値と照合するための π(1) (ACK無視) と π(2) (ACK待ち) のチャネルアクセス方策を実装する。

from typing import Optional, Tuple

import numpy as np

from app.agents.base import UeAgent
from app.environment.signals import ChannelAction, DownlinkMessage, UeObservation, UplinkMessage


class FireAndDeleteAgent(UeAgent):
    """
    π(1): 最初の機会に送信し、次のステップで削除する。DLメッセージはすべて無視し、SRも送らない。
    """
    def act(self, rng: np.random.Generator) -> Tuple[ChannelAction, UplinkMessage]:
        if self.observation == 0:
            action = ChannelAction.NOTHING
        elif self.last_action == ChannelAction.TRANSMIT:
            action = ChannelAction.DELETE
        else:
            action = ChannelAction.TRANSMIT
        self.last_action = action
        return action, UplinkMessage.NULL

    def observe(self, dl_message: DownlinkMessage, reward: float, next_observation: UeObservation, done: bool) -> None:
        self.observation = next_observation


class AckAwaitingAgent(UeAgent):
    """
    π(2): ACKを観測するまで毎ステップ再送し、ACK観測後 processing_steps ステップ待ってから削除する。
    processing_steps=1 は解析式 R(2)、0 は expected_r2_immediate に対応する。SRは送らない。
    """
    def __init__(self, processing_steps: int = 1) -> None:
        if processing_steps < 0:
            raise ValueError(f"processing_steps は0以上でなければなりません: {processing_steps}")
        self.processing_steps = processing_steps
        # ACK観測後、削除までに残っている待ちステップ数 (ACK未観測ならNone)
        self.remaining: Optional[int] = None
        super().__init__()

    def on_reset(self) -> None:
        self.remaining = None

    def act(self, rng: np.random.Generator) -> Tuple[ChannelAction, UplinkMessage]:
        if self.observation == 0:
            action = ChannelAction.NOTHING
        elif self.remaining == 0:
            action = ChannelAction.DELETE
            self.remaining = None
        elif self.remaining is not None:
            action = ChannelAction.NOTHING
            self.remaining -= 1
        else:
            action = ChannelAction.TRANSMIT
        self.last_action = action
        return action, UplinkMessage.NULL

    def observe(self, dl_message: DownlinkMessage, reward: float, next_observation: UeObservation, done: bool) -> None:
        if dl_message == DownlinkMessage.ACK:
            self.remaining = self.processing_steps
        self.observation = next_observation
