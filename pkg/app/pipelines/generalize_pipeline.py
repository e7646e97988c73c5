# /app/pipelines/generalize_pipeline.py
# title: 汎化評価パイプライン
# role: 学習環境で学習したテーブルを、パラメータを変えた評価環境で評価する。

import logging

from app.config import settings
from app.exceptions import ConfigurationError
from app.models import CommandRequest, CommandResult
from app.persistence.exporters import export_learning_curve
from app.pipelines.base import BasePipeline
from app.training.generalization import differing_fields, run_generalization

logger = logging.getLogger(__name__)


class GeneralizePipeline(BasePipeline):
    command = "generalize"

    def run(self, request: CommandRequest) -> CommandResult:
        env_config, train_config = request["env_config"], request["train_config"]
        eval_env = request["eval_env_config"]
        if eval_env is None:
            raise ConfigurationError("generalize には --eval-num-ues などで評価環境を指定してください。")

        result = run_generalization(env_config, eval_env, train_config, max_workers=request["workers"])
        summary = dict(result.summary())
        summary["changed"] = {name: list(values) for name, values in differing_fields(env_config, eval_env).items()}

        manifest = self.build_manifest(env_config, train_config, result.eval_env_config)
        store = self.open_store(request)
        self.write_manifest(store, manifest)
        store.write_text(settings.ARTIFACT_NAMES["learning_curve"], export_learning_curve(result.sessions, manifest.config_hash))
        store.write_json(settings.ARTIFACT_NAMES["summary"], summary)
        logger.info(f"汎化評価完了: 変更={list(summary['changed'])}, mean={result.mean:.4f}")
        return self.result(manifest.config_hash, summary, store)
