# /app/learning/memory.py
# title: 学習器の内部メモリ
# role: 過去Nステップ分の (DLメッセージ, 行動, ULメッセージ, 観測) を保持し、Qテーブルの状態キーを生成する。

from typing import NamedTuple, Tuple

from app.environment.signals import ChannelAction, DownlinkMessage, UeObservation, UplinkMessage

# 状態キー: (o_t, m_{t-N}, a_{t-N}, n_{t-N}, o_{t-N}, ..., m_{t-1}, a_{t-1}, n_{t-1}, o_{t-1})
StateKey = Tuple[int, ...]

RECORD_WIDTH = 4


class MemoryRecord(NamedTuple):
    """1ステップ分のメモリ記録。各フィールドは整数値で保持する。"""
    m: int
    a: int
    n: int
    o: int

    @classmethod
    def of(cls, m: DownlinkMessage, a: ChannelAction, n: UplinkMessage, o: UeObservation) -> "MemoryRecord":
        return cls(int(m), int(a), int(n), int(o))


# エピソード開始時にウィンドウを埋める記録 (Null, Nothing, Null, o=0)
SENTINEL_RECORD = MemoryRecord(0, 0, 0, 0)


class MemoryWindow(NamedTuple):
    """長さ固定NのFIFO。古い記録が先頭。"""
    records: Tuple[MemoryRecord, ...]

    @classmethod
    def initial(cls, length: int) -> "MemoryWindow":
        return cls((SENTINEL_RECORD,) * length)

    def __len__(self) -> int:
        return len(self.records)


def memory_push(h: MemoryWindow, rec: MemoryRecord) -> MemoryWindow:
    """最古の記録を追い出して rec を末尾に追加した新しいウィンドウを返す。"""
    if not h.records:
        return h
    return MemoryWindow(h.records[1:] + (rec,))


def encode_state(observation: UeObservation, h: MemoryWindow) -> StateKey:
    """
    現在の観測とメモリから順序を保存した状態キーを作る。
    Nが固定である限り単射。
    """
    key = [int(observation)]
    for record in h.records:
        key.extend(record)
    return tuple(key)


def decode_state(key: StateKey, memory_len: int) -> Tuple[UeObservation, MemoryWindow]:
    """encode_stateの逆変換。"""
    if len(key) != 1 + RECORD_WIDTH * memory_len:
        raise ValueError(f"状態キーの長さ {len(key)} はメモリ長 {memory_len} と整合しません。")
    records = tuple(
        MemoryRecord(*key[1 + i * RECORD_WIDTH: 1 + (i + 1) * RECORD_WIDTH]) for i in range(memory_len)
    )
    return key[0], MemoryWindow(records)


def state_space_bound(memory_len: int, buffer_capacity: int) -> int:
    """
    実体化され得る状態キー数の上限 (|M_DL|·|A_P|·|M_UL|·(L+1))^N · (L+1)。
    """
    per_record = len(DownlinkMessage) * len(ChannelAction) * len(UplinkMessage) * (buffer_capacity + 1)
    return per_record ** memory_len * (buffer_capacity + 1)
