# /app/persistence/exporters.py
# title: 結果エクスポート
# role: 学習曲線・実験表のCSV、エピソードトレースのJSON (往復可能) とメッセージシーケンスチャート形式のテキストを生成する。

import io
from typing import List, Sequence

import pandas as pd
from pydantic import TypeAdapter

from app.environment.signals import ChannelAction, DownlinkMessage, UplinkMessage, received_from
from app.training.models import EpisodeTrace, GridRow, SessionResult

HASH_COMMENT_PREFIX = "# config_hash: "
LEARNING_CURVE_COLUMNS = ["episode", "return", "epsilon", "session_id"]

_trace_adapter = TypeAdapter(EpisodeTrace)


def _csv_with_hash(frame: pd.DataFrame, config_hash: str) -> str:
    buffer = io.StringIO()
    buffer.write(f"{HASH_COMMENT_PREFIX}{config_hash}\n")
    frame.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def read_csv_artifact(text: str) -> pd.DataFrame:
    """export_* で書き出したCSVを読み戻す (ハッシュのコメント行は読み飛ばす)。"""
    return pd.read_csv(io.StringIO(text), comment="#")


def export_learning_curve(results: Sequence[SessionResult], config_hash: str = "") -> str:
    """
    セッションごとの学習曲線を1つのCSVにまとめる。列: episode, return, epsilon, session_id。
    """
    frames: List[pd.DataFrame] = []
    for result in results:
        frames.append(pd.DataFrame({
            "episode": range(1, len(result.learning_curve) + 1),
            "return": result.learning_curve,
            "epsilon": result.epsilons,
            "session_id": result.session_id,
        }, columns=LEARNING_CURVE_COLUMNS))
    frame = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=LEARNING_CURVE_COLUMNS)
    return _csv_with_hash(frame, config_hash)


def export_table(rows: Sequence[GridRow], config_hash: str = "") -> str:
    """グリッドサーチ結果などの行リストをCSVにする。"""
    return _csv_with_hash(pd.DataFrame(list(rows)), config_hash)


def export_trace(trace: EpisodeTrace) -> str:
    """トレースをJSONにする。1ステップ1要素で、UEごとの (o, a, n, m) とBS観測を持つ。"""
    return _trace_adapter.dump_json(trace, indent=2).decode("utf-8")


def parse_trace(text: str) -> EpisodeTrace:
    """export_traceの逆変換。"""
    return _trace_adapter.validate_json(text)


_ACTION_LABELS = {ChannelAction.NOTHING: "-", ChannelAction.TRANSMIT: "TX", ChannelAction.DELETE: "DEL"}
_UL_LABELS = {UplinkMessage.NULL: "-", UplinkMessage.SCHEDULING_REQUEST: "SR"}
_DL_LABELS = {DownlinkMessage.NULL: "-", DownlinkMessage.SCHEDULING_GRANT: "SG", DownlinkMessage.ACK: "ACK"}


def _bs_label(bs_observation: int, num_ues: int) -> str:
    if bs_observation == 0:
        return "idle"
    sender = received_from(bs_observation, num_ues)
    return f"rx UE{sender}" if sender is not None else "collision"


def render_msc(trace: EpisodeTrace) -> str:
    """
    トレースをメッセージシーケンスチャート風のテキスト表にする。
    各行は1ステップで、UEごとに 観測/チャネル行動/ULメッセージ/DLメッセージ を並べる。
    """
    header = ["t"] + [f"UE{u} (o a n | m)" for u in range(trace.num_ues)] + ["BS"]
    lines = [f"{HASH_COMMENT_PREFIX}{trace.config_hash}", " | ".join(header)]
    for step in trace.steps:
        cells = [str(step.t)]
        for u in range(trace.num_ues):
            cells.append(
                f"{step.ue_observations[u]} {_ACTION_LABELS[step.channel_actions[u]]} "
                f"{_UL_LABELS[step.ul_messages[u]]} | {_DL_LABELS[step.dl_messages[u]]}"
            )
        cells.append(_bs_label(step.bs_observation, trace.num_ues))
        lines.append(" | ".join(cells))
    lines.append(f"R = {trace.total_reward:g} ({trace.length} steps)")
    return "\n".join(lines) + "\n"
