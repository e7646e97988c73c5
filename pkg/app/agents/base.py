# /app/agents/base.py
# title: UE MACエージェント 抽象基底クラス
# role: すべてのUE MACエージェント (学習器・エキスパート・手書き方策) の基本的な構造とインターフェースを定義する。

from typing import Tuple

import numpy as np

from app.environment.signals import ChannelAction, DownlinkMessage, UeObservation, UplinkMessage


class UeAgent:
    """
    UE MACエージェントの抽象基底クラス。
    1ステップは act() → (環境とBSの処理) → observe() の順で進む。
    このクラスの__init__は、サブクラスの属性がすべて設定された後に呼び出されることを想定しています。
    """
    def __init__(self) -> None:
        self.observation: UeObservation = 0
        self.last_action = ChannelAction.NOTHING
        self.last_message = UplinkMessage.NULL

    def reset(self, observation: UeObservation) -> None:
        """
        エピソード開始時の観測を受け取り、エピソード内の状態を初期化する。
        """
        self.observation = observation
        self.last_action = ChannelAction.NOTHING
        self.last_message = UplinkMessage.NULL
        self.on_reset()

    def on_reset(self) -> None:
        """サブクラス固有の初期化。必要な場合にオーバーライドする。"""
        pass

    def act(self, rng: np.random.Generator) -> Tuple[ChannelAction, UplinkMessage]:
        """
        現在の観測と内部状態からチャネル行動とULメッセージを選ぶ。
        このメソッドは、必ずサブクラスでオーバーライド（上書き）されなければなりません。
        """
        raise NotImplementedError("act() must be implemented by all agent subclasses.")

    def observe(self, dl_message: DownlinkMessage, reward: float, next_observation: UeObservation, done: bool) -> None:
        """
        ステップの結果 (BSからのDLメッセージ、報酬、次の観測) を受け取る。
        """
        raise NotImplementedError("observe() must be implemented by all agent subclasses.")
