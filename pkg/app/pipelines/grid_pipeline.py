# /app/pipelines/grid_pipeline.py
# title: グリッドサーチパイプライン
# role: パラメータ集合の直積で実験を行い、性能表を保存する。グリッド未指定時は既定の探索集合を使う。

import logging

from app.config import settings
from app.models import CommandRequest, CommandResult
from app.persistence.exporters import export_table
from app.pipelines.base import BasePipeline
from app.training.grid_search import grid_search

logger = logging.getLogger(__name__)


class GridPipeline(BasePipeline):
    command = "grid"

    def run(self, request: CommandRequest) -> CommandResult:
        env_config, train_config = request["env_config"], request["train_config"]
        grids = {name: list(values) for name, values in (request["grids"] or settings.GRID_SEARCH_SETS).items()}
        manifest = self.build_manifest(env_config, train_config, extras={"grids": grids})
        digest = manifest.config_hash
        logger.info(f"グリッドサーチを開始します: {grids}")
        rows = grid_search(env_config, train_config, grids, max_workers=request["workers"])

        best = max(rows, key=lambda row: row["mean"])
        summary = {"config_hash": digest, "grids": grids, "best": best}
        store = self.open_store(request)
        self.write_manifest(store, manifest)
        store.write_text(settings.ARTIFACT_NAMES["grid"], export_table(rows, digest))
        store.write_json(settings.ARTIFACT_NAMES["summary"], summary)
        logger.info(f"グリッドサーチ完了: {len(rows)} 組み合わせ, best mean={best['mean']:.4f}")
        return self.result(digest, summary, store)
