# /app/models/__init__.py
# title: アプリケーションデータモデル
# role: CLIとパイプライン間で受け渡すリクエスト・結果の構造 (TypedDict) を定義する。

from typing import Any, Dict, List, Optional, TypedDict

from app.environment.models import EnvConfig
from app.training.models import TrainConfig


class CommandRequest(TypedDict):
    """
    サブコマンド1回分の入力。CLIフラグと設定ファイルから組み立てられる。
    """
    env_config: EnvConfig
    train_config: TrainConfig
    # 汎化評価・評価時の評価環境 (未指定時は学習環境)
    eval_env_config: Optional[EnvConfig]
    # パラメータ名 → 値のリスト (grid / ic)
    grids: Dict[str, List[Any]]
    snapshot: Optional[str]
    output_dir: str
    workers: Optional[int]
    # oracleサブコマンド用
    blers: List[float]
    t_max_values: List[int]
    simulate: bool


class CommandResult(TypedDict):
    """
    サブコマンドの実行結果。
    """
    command: str
    config_hash: str
    summary: Dict[str, Any]
    artifacts: List[str]
