# /app/persistence/q_snapshot.py
# title: Qテーブルスナップショット
# role: 共有Qテーブルをバージョン付きJSONに保存し、ビット単位で同一のテーブルとしてロードする。

import logging
import os
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field, ValidationError

from app.config import settings
from app.exceptions import LearningError, SnapshotError
from app.learning.q_tables import NUM_CHANNEL_ACTIONS, NUM_UL_MESSAGES, QTables

logger = logging.getLogger(__name__)


class QEntry(BaseModel):
    """1状態分の値ベクトル。値はfloat.hex形式で保存する。"""
    key: List[int]
    values: List[str]


class QTableSnapshot(BaseModel):
    format_version: int = Field(default=settings.SNAPSHOT_FORMAT_VERSION)
    memory_len: int
    config_hash: str
    default_value: str
    q_p: List[QEntry] = Field(default_factory=list)
    q_s: List[QEntry] = Field(default_factory=list)


def _entries(table) -> List[QEntry]:
    return [
        QEntry(key=list(key), values=[float(value).hex() for value in table[key]])
        for key in sorted(table)
    ]


def dump_qtables(q: QTables, memory_len: int, config_hash: str) -> str:
    """QテーブルをスナップショットJSON文字列にする。キーはソートされるため同じテーブルからは同じ文字列ができる。"""
    snapshot = QTableSnapshot(
        memory_len=memory_len,
        config_hash=config_hash,
        default_value=q.default_value.hex(),
        q_p=_entries(q.q_p),
        q_s=_entries(q.q_s),
    )
    return snapshot.model_dump_json(indent=1) + "\n"


def snapshot_qtables(q: QTables, path: str, memory_len: int, config_hash: str) -> None:
    """Qテーブルをファイルに保存する。"""
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dump_qtables(q, memory_len, config_hash))
    logger.info(f"Qテーブル ({q.num_states} 状態) が {path} に保存されました。")


def parse_snapshot(text: str) -> QTableSnapshot:
    try:
        snapshot = QTableSnapshot.model_validate_json(text)
    except ValidationError as e:
        raise SnapshotError(f"Qテーブルスナップショットの解析に失敗しました: {e}") from e
    if snapshot.format_version != settings.SNAPSHOT_FORMAT_VERSION:
        raise SnapshotError(
            f"スナップショットの形式バージョン {snapshot.format_version} は未対応です "
            f"(対応バージョン: {settings.SNAPSHOT_FORMAT_VERSION})。"
        )
    return snapshot


def parse_qtables(text: str, memory_len: Optional[int] = None) -> QTables:
    """
    スナップショット文字列からQテーブルを復元する。memory_lenを指定した場合は保存時の値と照合する。

    Raises:
        SnapshotError: 形式が不正、バージョン不一致、メモリ長の不一致。
    """
    snapshot = parse_snapshot(text)
    if memory_len is not None and snapshot.memory_len != memory_len:
        raise SnapshotError(
            f"メモリ長が一致しません: スナップショットは memory_len={snapshot.memory_len}、"
            f"要求は memory_len={memory_len} です。"
        )
    try:
        q = QTables(default_value=float.fromhex(snapshot.default_value))
        for name, entries, table, width in (
            ("q_p", snapshot.q_p, q.q_p, NUM_CHANNEL_ACTIONS),
            ("q_s", snapshot.q_s, q.q_s, NUM_UL_MESSAGES),
        ):
            for entry in entries:
                if len(entry.values) != width:
                    raise SnapshotError(
                        f"{name} の状態 {entry.key} の値ベクトル長が {len(entry.values)} です (期待値: {width})。"
                    )
                table[tuple(entry.key)] = np.array([float.fromhex(value) for value in entry.values], dtype=np.float64)
    except (ValueError, LearningError) as e:
        raise SnapshotError(f"Qテーブルの値を復元できません: {e}") from e
    return q


def load_qtables(path: str, memory_len: Optional[int] = None) -> QTables:
    """ファイルからQテーブルをロードする。"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except IOError as e:
        raise SnapshotError(f"Qテーブルスナップショット {path} を読み込めません: {e}") from e
    q = parse_qtables(text, memory_len)
    logger.info(f"Qテーブル ({q.num_states} 状態) を {path} からロードしました。")
    return q
