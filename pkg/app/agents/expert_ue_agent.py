# /app/agents/expert_ue_agent.py
# title: エキスパートUE
# role: BSのシグナリングの意味を完全に知る手書きのUE (チャネルアクセス方策とシグナリング方策) を実装する。

from typing import Tuple

import numpy as np

from app.agents.base import UeAgent
from app.environment.signals import ChannelAction, DownlinkMessage, UeObservation, UplinkMessage


def expert_channel_access(o: UeObservation, m_prev: DownlinkMessage, a_prev: ChannelAction) -> ChannelAction:
    """
    SGを受けた次のステップでのみ送信し、ACKを受けた次のステップでのみ削除する。
    直前に送信していれば古いSGでは再送しない。
    """
    if m_prev == DownlinkMessage.SCHEDULING_GRANT and o > 0 and a_prev != ChannelAction.TRANSMIT:
        return ChannelAction.TRANSMIT
    if m_prev == DownlinkMessage.ACK and o > 0:
        return ChannelAction.DELETE
    return ChannelAction.NOTHING


def expert_signaling(o: UeObservation, m_prev: DownlinkMessage) -> UplinkMessage:
    """
    バッファにデータがあり、前回のDLがNull、またはACKを受けてなお2つ以上のSDUが残る場合にSRを送る。
    """
    if o > 0 and (m_prev == DownlinkMessage.NULL or (o > 1 and m_prev == DownlinkMessage.ACK)):
        return UplinkMessage.SCHEDULING_REQUEST
    return UplinkMessage.NULL


class ExpertUeAgent(UeAgent):
    """
    完全に協調したチャネルアクセスを行うエキスパートUE。
    状態は直前のDLメッセージ m_{t-1} と直前の行動 a_{t-1} のみ。
    """
    def __init__(self) -> None:
        self.last_dl = DownlinkMessage.NULL
        super().__init__()

    def on_reset(self) -> None:
        self.last_dl = DownlinkMessage.NULL

    def act(self, rng: np.random.Generator) -> Tuple[ChannelAction, UplinkMessage]:
        action = expert_channel_access(self.observation, self.last_dl, self.last_action)
        message = expert_signaling(self.observation, self.last_dl)
        self.last_action, self.last_message = action, message
        return action, message

    def observe(self, dl_message: DownlinkMessage, reward: float, next_observation: UeObservation, done: bool) -> None:
        self.last_dl = dl_message
        self.observation = next_observation
