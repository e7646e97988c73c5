# /app/engine.py
# title: 実験エンジン
# role: サブコマンドに応じて適切なパイプラインを選択し、処理を実行する。

from __future__ import annotations
import logging
import time
from typing import TYPE_CHECKING, Dict

from app.exceptions import ConfigurationError

if TYPE_CHECKING:
    from app.pipelines.base import BasePipeline
    from app.models import CommandRequest, CommandResult

logger = logging.getLogger(__name__)

class ExperimentEngine:
    """
    サブコマンドごとのパイプラインを管理し、実行するコアエンジン。
    """
    def __init__(self, pipelines: Dict[str, BasePipeline]):
        self.pipelines = pipelines

    def run(self, command: str, request: CommandRequest) -> CommandResult:
        """
        指定されたサブコマンドのパイプラインを実行する。

        Args:
            command (str): サブコマンド名 (train, eval, baseline, oracle, ic, generalize, grid, trace)。
            request (CommandRequest): 検証済みの入力。

        Returns:
            CommandResult: パイプラインの実行結果。
        """
        if command not in self.pipelines:
            raise ConfigurationError(
                f"無効なサブコマンドが指定されました: {command} (利用可能: {', '.join(sorted(self.pipelines))})"
            )
        start_time = time.time()
        logger.info(f"パイプライン '{command}' で実行中...")
        result = self.pipelines[command].run(request)
        logger.info(
            f"パイプライン '{command}' 完了 ({(time.time() - start_time):.2f} s)、"
            f"成果物 {len(result['artifacts'])} 件 (config_hash={result['config_hash']})"
        )
        return result
