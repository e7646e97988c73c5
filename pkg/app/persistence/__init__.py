# /app/persistence/__init__.py
# title: 永続化パッケージ
# role: 設定の読み込み、結果のエクスポート、Qテーブルのスナップショットを提供する。

from .config_loader import parse_config, normalize_key, RunManifest
from .exporters import export_learning_curve, export_table, export_trace, parse_trace, render_msc, read_csv_artifact
from .q_snapshot import dump_qtables, snapshot_qtables, parse_qtables, load_qtables, QTableSnapshot
from .artifact_store import ArtifactStore
