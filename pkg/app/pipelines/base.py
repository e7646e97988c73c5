# /app/pipelines/base.py
# title: パイプライン基底クラス
# role: すべてのサブコマンドパイプラインが従うべき基本的なインターフェースと共通処理を定義する。

from abc import ABC, abstractmethod
from typing import Any, Callable, Dict, List, Mapping, Optional

from app.config import settings
from app.environment.models import EnvConfig
from app.models import CommandRequest, CommandResult
from app.persistence.artifact_store import ArtifactStore
from app.persistence.config_loader import RunManifest
from app.training.models import TrainConfig


class BasePipeline(ABC):
    """
    すべてのサブコマンドパイプラインの抽象基底クラス。
    成果物の書き込みはこのクラスから作った ArtifactStore を通してのみ行う。
    """
    command: str = ""

    def __init__(self, store_factory: Callable[[str], ArtifactStore]):
        self.store_factory = store_factory

    @abstractmethod
    def run(self, request: CommandRequest) -> CommandResult:
        """
        パイプラインを実行するメソッド。

        Args:
            request (CommandRequest): 検証済みの設定とサブコマンドの入力。

        Returns:
            CommandResult: 集計値と書き出した成果物のパス。
        """
        pass

    def open_store(self, request: CommandRequest) -> ArtifactStore:
        return self.store_factory(request["output_dir"])

    def build_manifest(
        self, env_config: EnvConfig, train_config: TrainConfig,
        eval_env_config: Optional[EnvConfig] = None, extras: Optional[Mapping[str, Any]] = None,
    ) -> RunManifest:
        """結果に影響する入力すべてを含むマニフェストを作る。config_hash はこのマニフェストの値を使う。"""
        return RunManifest.create(self.command, env_config, train_config, eval_env_config, extras)

    def write_manifest(self, store: ArtifactStore, manifest: RunManifest) -> str:
        return store.write_manifest(manifest, settings.ARTIFACT_NAMES["manifest"])

    def result(self, config_hash: str, summary: Dict[str, Any], store: ArtifactStore) -> CommandResult:
        artifacts: List[str] = list(store.written)
        return {"command": self.command, "config_hash": config_hash, "summary": summary, "artifacts": artifacts}
