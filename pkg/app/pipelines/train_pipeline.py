# /app/pipelines/train_pipeline.py
# title: 学習パイプライン
# role: n_rep回の学習セッションを実行し、学習曲線・集計・最良セッションのQテーブルを保存する。

import logging

from app.config import settings
from app.models import CommandRequest, CommandResult
from app.persistence.exporters import export_learning_curve
from app.persistence.q_snapshot import dump_qtables
from app.pipelines.base import BasePipeline
from app.training.models import AgentKind
from app.training.session import run_experiment

logger = logging.getLogger(__name__)


class TrainPipeline(BasePipeline):
    command = "train"

    def run(self, request: CommandRequest) -> CommandResult:
        env_config, train_config = request["env_config"], request["train_config"]
        manifest = self.build_manifest(env_config, train_config)
        digest = manifest.config_hash
        logger.info(f"学習を開始します: agent={train_config.agent_kind.value}, config_hash={digest}")
        result = run_experiment(env_config, train_config, max_workers=request["workers"])

        store = self.open_store(request)
        self.write_manifest(store, manifest)
        store.write_text(settings.ARTIFACT_NAMES["learning_curve"], export_learning_curve(result.sessions, digest))
        summary = dict(result.summary())
        if train_config.agent_kind is AgentKind.LEARNER:
            best = result.best_session
            summary["best_session_id"] = best.session_id
            summary["num_states"] = best.q_tables.num_states
            store.write_text(
                settings.ARTIFACT_NAMES["q_snapshot"],
                dump_qtables(best.q_tables, train_config.memory_len, digest),
            )
        store.write_json(settings.ARTIFACT_NAMES["summary"], summary)
        logger.info(f"学習完了: mean={result.mean:.4f}, std_error={result.std_error:.4f}, best={result.best:.4f}")
        return self.result(digest, summary, store)
