# /app/pipelines/trace_pipeline.py
# title: トレースパイプライン
# role: 評価エピソードのうち最良のものをJSONとメッセージシーケンスチャート形式のテキストで書き出す。

import logging
from typing import Any, Dict

from app.config import settings
from app.exceptions import ConfigurationError
from app.learning.q_tables import QTables
from app.models import CommandRequest, CommandResult
from app.persistence.exporters import export_trace, render_msc
from app.persistence.q_snapshot import load_qtables
from app.pipelines.base import BasePipeline
from app.training.models import AgentKind
from app.training.session import evaluate
from app.utils.seeding import derive_session_seed

logger = logging.getLogger(__name__)


class TracePipeline(BasePipeline):
    command = "trace"

    def run(self, request: CommandRequest) -> CommandResult:
        env_config, train_config = request["env_config"], request["train_config"]
        if train_config.seed is None:
            raise ConfigurationError("seed が指定されていません。実験の再現性のため --seed は必須です。")
        extras: Dict[str, Any] = {}
        if request["snapshot"] is not None:
            train_config = train_config.model_copy(update={"agent_kind": AgentKind.LEARNER})
            q = load_qtables(request["snapshot"], train_config.memory_len)
            extras["snapshot_checksum"] = q.checksum()
        elif train_config.agent_kind is AgentKind.LEARNER:
            raise ConfigurationError("学習器のトレースには --snapshot が必要です (または --agent expert/pi1/pi2)。")
        else:
            q = QTables(default_value=train_config.q_init)

        eval_env = request["eval_env_config"] or env_config
        manifest = self.build_manifest(env_config, train_config, request["eval_env_config"], extras)
        digest = manifest.config_hash
        traces = evaluate(eval_env, train_config, q.freeze(), derive_session_seed(train_config.seed, 0), digest)
        # 同じリターンなら先のエピソード
        best = max(traces, key=lambda trace: (trace.total_reward, -trace.episode_index))
        logger.info(f"エピソード {best.episode_index} (R={best.total_reward:g}) のトレースを書き出します。")

        store = self.open_store(request)
        self.write_manifest(store, manifest)
        store.write_text(settings.ARTIFACT_NAMES["trace_json"], export_trace(best))
        store.write_text(settings.ARTIFACT_NAMES["trace_msc"], render_msc(best))
        summary = {"config_hash": digest, "episode_index": best.episode_index, "return": best.total_reward, "length": best.length}
        return self.result(digest, summary, store)
