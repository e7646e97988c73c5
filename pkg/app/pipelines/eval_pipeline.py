# /app/pipelines/eval_pipeline.py
# title: 評価パイプライン
# role: 保存済みQテーブルを凍結してロードし、ε=0でn_eval回の評価エピソードを実行する。

import logging

import numpy as np
from scipy import stats

from app.config import settings
from app.exceptions import ConfigurationError
from app.models import CommandRequest, CommandResult
from app.persistence.exporters import export_table
from app.persistence.q_snapshot import load_qtables
from app.pipelines.base import BasePipeline
from app.training.models import AgentKind
from app.training.session import evaluate
from app.utils.seeding import derive_session_seed

logger = logging.getLogger(__name__)


class EvalPipeline(BasePipeline):
    command = "eval"

    def run(self, request: CommandRequest) -> CommandResult:
        train_config = request["train_config"]
        if train_config.seed is None:
            raise ConfigurationError("seed が指定されていません。実験の再現性のため --seed は必須です。")
        if request["snapshot"] is None:
            raise ConfigurationError("eval には --snapshot でQテーブルのスナップショットを指定してください。")
        train_config = train_config.model_copy(update={"agent_kind": AgentKind.LEARNER})
        env_config = request["env_config"]
        eval_env = request["eval_env_config"] or env_config

        q = load_qtables(request["snapshot"], train_config.memory_len).freeze()
        manifest = self.build_manifest(
            env_config, train_config, request["eval_env_config"], extras={"snapshot_checksum": q.checksum()}
        )
        digest = manifest.config_hash
        traces = evaluate(eval_env, train_config, q, derive_session_seed(train_config.seed, 0), digest)

        returns = np.array([trace.total_reward for trace in traces])
        summary = {
            "config_hash": digest,
            "n_eval": len(traces),
            "mean": float(returns.mean()),
            "std_error": float(stats.sem(returns, ddof=1)) if len(returns) > 1 else 0.0,
            "best": float(returns.max()),
            "q_checksum": q.checksum(),
        }
        store = self.open_store(request)
        self.write_manifest(store, manifest)
        rows = [{"episode": trace.episode_index, "return": trace.total_reward, "length": trace.length} for trace in traces]
        store.write_text(settings.ARTIFACT_NAMES["eval_returns"], export_table(rows, digest))
        store.write_json(settings.ARTIFACT_NAMES["summary"], summary)
        logger.info(f"評価完了: mean={summary['mean']:.4f}, std_error={summary['std_error']:.4f}")
        return self.result(digest, summary, store)
