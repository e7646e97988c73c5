# /app/environment/signals.py
# title: MACシグナリング語彙
# role: チャネルアクセス行動・UL/DLメッセージの離散アルファベットと観測値の意味を定義する。

from enum import IntEnum

# UEの観測: 送信バッファに残っているSDU数 [0, L]
UeObservation = int
# BSの観測: 0 = アイドル, 1..|U| = UE (値-1) からの衝突なし受信, |U|+1 = 衝突
BsObservation = int

BS_IDLE: BsObservation = 0


class ChannelAction(IntEnum):
    """物理層へのチャネルアクセス行動 (A_P)。"""
    NOTHING = 0
    TRANSMIT = 1
    DELETE = 2


class UplinkMessage(IntEnum):
    """UEからBSへのULシグナリングメッセージ (M_UL)。"""
    NULL = 0
    SCHEDULING_REQUEST = 1


class DownlinkMessage(IntEnum):
    """BSからUEへのDLシグナリングメッセージ (M_DL)。"""
    NULL = 0
    SCHEDULING_GRANT = 1
    ACK = 2


def collision_observation(num_ues: int) -> BsObservation:
    """衝突を表すBS観測値 |U|+1 を返す。"""
    return num_ues + 1


def received_from(bs_observation: BsObservation, num_ues: int) -> int | None:
    """
    BS観測値が衝突なし受信を表す場合は送信元UEのインデックスを返し、それ以外はNoneを返す。
    """
    if 1 <= bs_observation <= num_ues:
        return bs_observation - 1
    return None
