# /app/agents/learner_agent.py
# title: 表形式Q学習 MAC学習器
# role: 共有Qテーブルと内部メモリを用いてチャネルアクセス方策とシグナリング方策を同時に実行・学習する。

from typing import Tuple

import numpy as np

from app.agents.base import UeAgent
from app.environment.signals import ChannelAction, DownlinkMessage, UeObservation, UplinkMessage
from app.learning.memory import MemoryRecord, MemoryWindow, StateKey, encode_state, memory_push
from app.learning.q_tables import QTables, q_update, select_actions


class LearnerAgent(UeAgent):
    """
    MAC学習器。全UEが同じQTablesを参照し (自己対戦)、学習時は各UEの遷移で同じテーブルを更新する
    (集中学習・分散実行)。
    """
    def __init__(
        self,
        q_tables: QTables,
        memory_len: int,
        epsilon: float,
        alpha: float,
        gamma: float,
        learn: bool,
    ):
        self.q_tables = q_tables
        self.memory_len = memory_len
        self.epsilon = epsilon
        self.alpha = alpha
        self.gamma = gamma
        self.learn = learn
        self.memory = MemoryWindow.initial(memory_len)
        self.state: StateKey = ()
        super().__init__()

    def on_reset(self) -> None:
        self.memory = MemoryWindow.initial(self.memory_len)
        self.state = encode_state(self.observation, self.memory)

    def act(self, rng: np.random.Generator) -> Tuple[ChannelAction, UplinkMessage]:
        self.last_action, self.last_message = select_actions(self.q_tables, self.state, self.epsilon, rng)
        return self.last_action, self.last_message

    def observe(self, dl_message: DownlinkMessage, reward: float, next_observation: UeObservation, done: bool) -> None:
        record = MemoryRecord.of(dl_message, self.last_action, self.last_message, self.observation)
        self.memory = memory_push(self.memory, record)
        next_state = encode_state(next_observation, self.memory)
        if self.learn:
            q_update(
                self.q_tables, self.state, self.last_action, self.last_message,
                reward, next_state, self.alpha, self.gamma, terminal=done,
            )
        self.state = next_state
        self.observation = next_observation
