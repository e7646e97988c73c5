# /app/learning/__init__.py
# title: 学習パッケージ
# role: 表形式Q学習器の主要なAPIを公開する。

from .memory import (
    MemoryRecord, MemoryWindow, StateKey, SENTINEL_RECORD,
    memory_push, encode_state, decode_state, state_space_bound,
)
from .q_tables import QTables, select_actions, q_update
