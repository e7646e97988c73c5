# /app/pipelines/ic_pipeline.py
# title: 協調度パイプライン
# role: セッションごとに評価トレースから平均瞬時協調度 (IC) と平均リターンを求め、両者のPearson相関を計算する。

import itertools
import logging
from typing import Any, Dict, List, Mapping, Optional, Sequence

from app.analysis.coordination import mean_instantaneous_coordination, pearson
from app.config import settings
from app.exceptions import AnalysisError
from app.models import CommandRequest, CommandResult
from app.persistence.exporters import export_table
from app.pipelines.base import BasePipeline
from app.training.grid_search import apply_params
from app.training.models import AgentKind, GridRow
from app.training.session import run_experiment

logger = logging.getLogger(__name__)


def _combinations(grids: Mapping[str, Sequence[Any]]) -> List[Dict[str, Any]]:
    names = list(grids)
    return [dict(zip(names, values)) for values in itertools.product(*(grids[name] for name in names))]


class IcPipeline(BasePipeline):
    """
    品質の異なるセッションを集めるため、--grid を指定すると各組み合わせのセッションをまとめて相関を取る。
    """
    command = "ic"

    def run(self, request: CommandRequest) -> CommandResult:
        env_config, train_config = request["env_config"], request["train_config"]
        if train_config.agent_kind is not AgentKind.LEARNER:
            logger.warning(f"agent={train_config.agent_kind.value} のトレースでICを計算します。")

        rows: List[GridRow] = []
        for params in _combinations(request["grids"]) or [{}]:
            env, train = apply_params(env_config, train_config, params)
            result = run_experiment(env, train, max_workers=request["workers"])
            for session in result.sessions:
                try:
                    ic, ic_std_error = mean_instantaneous_coordination(session.traces)
                except AnalysisError as e:
                    logger.warning(f"セッション {session.session_id} ({params}) のICを計算できません: {e}")
                    continue
                rows.append({
                    **params,
                    "session_id": session.session_id,
                    "ic": ic,
                    "ic_std_error": ic_std_error,
                    "mean_return": session.mean_eval,
                    "config_hash": result.config_hash,
                })

        if not rows:
            raise AnalysisError("ICを計算できるセッションがありませんでした。")
        correlation: Optional[float] = None
        try:
            correlation = pearson([row["ic"] for row in rows], [row["mean_return"] for row in rows])
        except AnalysisError as e:
            logger.warning(f"ICとリターンの相関を計算できません: {e}")
        logger.info(f"IC: {len(rows)} セッション, pearson={correlation}")

        manifest = self.build_manifest(
            env_config, train_config, extras={"grids": {name: list(values) for name, values in request["grids"].items()}}
        )
        digest = manifest.config_hash
        summary = {"config_hash": digest, "num_sessions": len(rows), "pearson": correlation}
        store = self.open_store(request)
        self.write_manifest(store, manifest)
        store.write_text(settings.ARTIFACT_NAMES["ic"], export_table(rows, digest))
        store.write_json(settings.ARTIFACT_NAMES["summary"], summary)
        return self.result(digest, summary, store)
