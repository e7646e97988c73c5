# /app/pipelines/oracle_pipeline.py
# title: 解析的最適性能パイプライン
# role: BLERとt_maxの組み合わせごとに R(1)・R(2)・最適値を表にし、指定時はπ(1)/π(2)のモンテカルロ推定と並べる。

import logging
from typing import Any, Dict, List

from app.analysis.oracles import (
    OracleInput, expected_r1, expected_r2, expected_r2_immediate, optimal_branch, optimal_r, optimal_r_immediate,
)
from app.config import settings
from app.environment.models import EnvConfig
from app.exceptions import ConfigurationError
from app.models import CommandRequest, CommandResult
from app.persistence.exporters import export_table
from app.pipelines.base import BasePipeline
from app.training.models import AgentKind, GridRow
from app.training.session import run_experiment

logger = logging.getLogger(__name__)


class OraclePipeline(BasePipeline):
    """
    r2 / r_star は ACK処理に1ステップかかる π(2)、r2_immediate / r_star_immediate は
    ACKを観測したステップで削除する π(2) に対応する。
    """
    command = "oracle"

    def run(self, request: CommandRequest) -> CommandResult:
        train_config = request["train_config"]
        if request["simulate"] and train_config.seed is None:
            raise ConfigurationError("--simulate には --seed が必要です。")
        manifest = self.build_manifest(
            request["env_config"], train_config,
            extras={
                "blers": list(request["blers"]),
                "t_max_values": list(request["t_max_values"]),
                "simulate": request["simulate"],
            },
        )
        digest = manifest.config_hash

        rows: List[GridRow] = []
        for b in request["blers"]:
            for t_max in request["t_max_values"]:
                inp = OracleInput(b=b, t_max=t_max)
                row: Dict[str, Any] = {
                    "bler": b,
                    "t_max": t_max,
                    "r1": expected_r1(inp),
                    "r2": expected_r2(inp),
                    "r_star": optimal_r(inp),
                    "branch": optimal_branch(inp),
                    "r2_immediate": expected_r2_immediate(inp),
                    "r_star_immediate": optimal_r_immediate(inp),
                }
                if request["simulate"]:
                    env_config = EnvConfig(num_ues=1, sdus_per_ue=1, t_max=t_max, bler=b)
                    for kind, column in ((AgentKind.HAND_CODED_PI1, "mc_r1"), (AgentKind.HAND_CODED_PI2, "mc_r2")):
                        result = run_experiment(
                            env_config, train_config.model_copy(update={"agent_kind": kind, "n_tr": 0}),
                            max_workers=request["workers"],
                        )
                        row[column] = result.mean
                        row[f"{column}_std_error"] = result.std_error
                rows.append(row)
        logger.info(f"解析的最適値: {len(rows)} 件 (simulate={request['simulate']})")

        store = self.open_store(request)
        self.write_manifest(store, manifest)
        store.write_text(settings.ARTIFACT_NAMES["oracle"], export_table(rows, digest))
        return self.result(digest, {"config_hash": digest, "rows": rows}, store)
