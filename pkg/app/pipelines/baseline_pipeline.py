# /app/pipelines/baseline_pipeline.py
# title: ベースラインパイプライン
# role: エキスパートUE・π(1)・π(2) を同じ環境で評価し、スナップショット指定時は学習済み方策のエキスパートに対する利得を報告する。

import logging
from typing import Any, Dict, List, Optional

import numpy as np
from scipy import stats

from app.analysis.oracles import OracleInput, expected_r1, expected_r2
from app.config import settings
from app.environment.models import EnvConfig, TrafficMode
from app.learning.q_tables import QTables
from app.models import CommandRequest, CommandResult
from app.persistence.exporters import export_table
from app.persistence.q_snapshot import load_qtables
from app.pipelines.base import BasePipeline
from app.training.models import AgentKind, GridRow, TrainConfig
from app.training.session import evaluate, run_experiment
from app.utils.seeding import derive_session_seed

logger = logging.getLogger(__name__)

BASELINE_KINDS = (AgentKind.EXPERT_UE, AgentKind.HAND_CODED_PI1, AgentKind.HAND_CODED_PI2)


def _oracle_value(env_config: EnvConfig, kind: AgentKind) -> Optional[float]:
    """単一UE・単一SDU・フルバッファ開始のときのみ解析値がある。"""
    if env_config.num_ues != 1 or env_config.sdus_per_ue != 1 or env_config.traffic_mode is not TrafficMode.FULL_BUFFER_START:
        return None
    inp = OracleInput(b=env_config.bler, t_max=env_config.t_max)
    if kind is AgentKind.HAND_CODED_PI1:
        return expected_r1(inp)
    if kind is AgentKind.HAND_CODED_PI2:
        return expected_r2(inp)
    return None


def _learned_mean(env_config: EnvConfig, train_config: TrainConfig, q: QTables, digest: str) -> Dict[str, float]:
    """スナップショットのテーブルを各セッションシードで評価し、セッション平均を集計する。"""
    means = []
    for rep in range(train_config.n_rep):
        traces = evaluate(env_config, train_config, q, derive_session_seed(train_config.seed, rep), digest)
        means.append(float(np.mean([trace.total_reward for trace in traces])))
    values = np.array(means)
    return {
        "mean": float(values.mean()),
        "std_error": float(stats.sem(values, ddof=1)) if len(values) > 1 else 0.0,
        "best": float(values.max()),
    }


class BaselinePipeline(BasePipeline):
    command = "baseline"

    def run(self, request: CommandRequest) -> CommandResult:
        env_config, train_config = request["env_config"], request["train_config"]
        q: Optional[QTables] = None
        extras: Dict[str, Any] = {}
        if request["snapshot"] is not None:
            q = load_qtables(request["snapshot"], train_config.memory_len).freeze()
            extras["snapshot_checksum"] = q.checksum()
        manifest = self.build_manifest(env_config, train_config, extras=extras)
        digest = manifest.config_hash

        rows: List[GridRow] = []
        for kind in BASELINE_KINDS:
            baseline_config = train_config.model_copy(update={"agent_kind": kind, "n_tr": 0})
            result = run_experiment(env_config, baseline_config, max_workers=request["workers"])
            rows.append({
                "agent": kind.value,
                "mean": result.mean,
                "std_error": result.std_error,
                "best": result.best,
                "oracle": _oracle_value(env_config, kind),
            })
            logger.info(f"ベースライン {kind.value}: mean={result.mean:.4f}")

        summary: Dict[str, Any] = {"rows": rows}
        expert_mean = rows[0]["mean"]
        if q is not None:
            learner_config = train_config.model_copy(update={"agent_kind": AgentKind.LEARNER})
            learned = _learned_mean(env_config, learner_config, q, digest)
            rows.append({"agent": AgentKind.LEARNER.value, **learned, "oracle": None})
            summary["gain_over_expert"] = learned["mean"] - expert_mean
            logger.info(f"学習済み方策のエキスパートに対する利得: {summary['gain_over_expert']:+.4f}")

        summary["config_hash"] = digest
        store = self.open_store(request)
        self.write_manifest(store, manifest)
        store.write_text(settings.ARTIFACT_NAMES["baseline"], export_table(rows, digest))
        store.write_json(settings.ARTIFACT_NAMES["summary"], summary)
        return self.result(digest, summary, store)
