# /app/learning/q_tables.py
# title: 共有Qテーブル
# role: チャネルアクセス用Q_PとシグナリングQ_Sの2つの疎なQテーブル、同期した二重方策による行動選択、Q学習更新を提供する。

import hashlib
import math
from typing import Dict, Tuple

import numpy as np

from app.environment.signals import ChannelAction, UplinkMessage
from app.exceptions import LearningError
from app.learning.memory import StateKey

NUM_CHANNEL_ACTIONS = len(ChannelAction)
NUM_UL_MESSAGES = len(UplinkMessage)


class QTables:
    """
    全学習器が共有する Q_P / Q_S の組。状態キーごとの値ベクトルを辞書で保持する。
    未出現の状態はdefault_valueで埋めたベクトルとして読み出され、読み出しでは挿入しない。
    """
    def __init__(self, default_value: float = 0.0):
        if not math.isfinite(default_value):
            raise LearningError(f"default_value は有限値でなければなりません: {default_value}")
        self.default_value = float(default_value)
        self.q_p: Dict[StateKey, np.ndarray] = {}
        self.q_s: Dict[StateKey, np.ndarray] = {}
        self.read_only = False
        self._default_p = self._constant(NUM_CHANNEL_ACTIONS)
        self._default_s = self._constant(NUM_UL_MESSAGES)

    def _constant(self, size: int) -> np.ndarray:
        row = np.full(size, self.default_value, dtype=np.float64)
        row.flags.writeable = False
        return row

    def values_p(self, s: StateKey) -> np.ndarray:
        return self.q_p.get(s, self._default_p)

    def values_s(self, s: StateKey) -> np.ndarray:
        return self.q_s.get(s, self._default_s)

    def _row_p(self, s: StateKey) -> np.ndarray:
        row = self.q_p.get(s)
        if row is None:
            row = self.q_p[s] = np.full(NUM_CHANNEL_ACTIONS, self.default_value, dtype=np.float64)
        return row

    def _row_s(self, s: StateKey) -> np.ndarray:
        row = self.q_s.get(s)
        if row is None:
            row = self.q_s[s] = np.full(NUM_UL_MESSAGES, self.default_value, dtype=np.float64)
        return row

    @property
    def num_states(self) -> int:
        return len(self.q_p.keys() | self.q_s.keys())

    def freeze(self) -> "QTables":
        """以降の更新を禁止する。評価モード用。"""
        self.read_only = True
        return self

    def copy(self) -> "QTables":
        clone = QTables(self.default_value)
        clone.q_p = {key: row.copy() for key, row in self.q_p.items()}
        clone.q_s = {key: row.copy() for key, row in self.q_s.items()}
        return clone

    def checksum(self) -> str:
        """テーブル内容のSHA-256。値はビット単位で比較される。"""
        digest = hashlib.sha256(repr(self.default_value).encode())
        for name, table in (("p", self.q_p), ("s", self.q_s)):
            digest.update(name.encode())
            for key in sorted(table):
                digest.update(repr(key).encode())
                digest.update(table[key].tobytes())
        return digest.hexdigest()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QTables):
            return NotImplemented
        return self.checksum() == other.checksum()

    def __repr__(self) -> str:
        return f"QTables(states={self.num_states}, default_value={self.default_value})"


def _epsilon_greedy(values: np.ndarray, epsilon: float, rng: np.random.Generator) -> int:
    if epsilon > 0.0 and rng.random() < epsilon:
        return int(rng.integers(len(values)))
    best = np.flatnonzero(values == values.max())
    if len(best) == 1:
        return int(best[0])
    # 同値の最大はランダムに選ぶ (対称な学習器の結合を避ける)
    return int(best[rng.integers(len(best))])


def select_actions(q: QTables, s: StateKey, epsilon: float, rng: np.random.Generator) -> Tuple[ChannelAction, UplinkMessage]:
    """
    同じ状態キーに条件付けた二つのε-greedy方策から (チャネル行動, ULメッセージ) を選ぶ。
    二つのテーブルは独立に抽選する。
    """
    action = ChannelAction(_epsilon_greedy(q.values_p(s), epsilon, rng))
    message = UplinkMessage(_epsilon_greedy(q.values_s(s), epsilon, rng))
    return action, message


def q_update(
    q: QTables,
    s: StateKey,
    a: ChannelAction,
    n: UplinkMessage,
    r: float,
    s_next: StateKey,
    alpha: float,
    gamma: float,
    terminal: bool,
) -> QTables:
    """
    両テーブルに同じ報酬・遷移でQ学習更新を適用する。終端ではブートストラップ項を0とする。

    Args:
        q (QTables): 更新対象のテーブル。
        s (StateKey): 行動選択時の状態。
        a (ChannelAction): 選択したチャネル行動。
        n (UplinkMessage): 選択したULメッセージ。
        r (float): 報酬。
        s_next (StateKey): 遷移後の状態。
        alpha (float): 学習率 (0, 1]。
        gamma (float): 割引率 [0, 1]。
        terminal (bool): 遷移がエピソードの終端かどうか。

    Returns:
        QTables: 更新後のテーブル (同一オブジェクト)。
    """
    if q.read_only:
        raise LearningError("読み取り専用のQテーブルは更新できません。")
    if not (math.isfinite(r) and math.isfinite(alpha) and math.isfinite(gamma)):
        raise LearningError(f"非有限の更新入力です: r={r}, alpha={alpha}, gamma={gamma}")
    if not 0.0 < alpha <= 1.0 or not 0.0 <= gamma <= 1.0:
        raise LearningError(f"alpha={alpha} または gamma={gamma} が範囲外です。")

    if terminal:
        target_p = target_s = r
    else:
        target_p = r + gamma * float(q.values_p(s_next).max())
        target_s = r + gamma * float(q.values_s(s_next).max())

    row_p = q._row_p(s)
    row_p[a] += alpha * (target_p - row_p[a])
    row_s = q._row_s(s)
    row_s[n] += alpha * (target_s - row_s[n])
    return q
