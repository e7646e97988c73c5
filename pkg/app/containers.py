# /app/containers.py
# title: アプリケーションDIコンテナ
# role: 成果物ストア、サブコマンドごとのパイプライン、実験エンジンを定義し、提供する。

from dependency_injector import containers, providers

from app.engine import ExperimentEngine
from app.persistence.artifact_store import ArtifactStore
from app.pipelines.baseline_pipeline import BaselinePipeline
from app.pipelines.eval_pipeline import EvalPipeline
from app.pipelines.generalize_pipeline import GeneralizePipeline
from app.pipelines.grid_pipeline import GridPipeline
from app.pipelines.ic_pipeline import IcPipeline
from app.pipelines.oracle_pipeline import OraclePipeline
from app.pipelines.trace_pipeline import TracePipeline
from app.pipelines.train_pipeline import TrainPipeline


class Container(containers.DeclarativeContainer):
    """
    アプリケーションの依存関係を管理するコンテナ。
    """
    # --- 永続化 ---
    # 出力ディレクトリはリクエストごとに決まるため、ストアはファクトリとして渡す
    artifact_store: providers.Factory[ArtifactStore] = providers.Factory(ArtifactStore)

    # --- パイプライン ---
    train_pipeline: providers.Factory[TrainPipeline] = providers.Factory(
        TrainPipeline, store_factory=artifact_store.provider
    )
    eval_pipeline: providers.Factory[EvalPipeline] = providers.Factory(
        EvalPipeline, store_factory=artifact_store.provider
    )
    baseline_pipeline: providers.Factory[BaselinePipeline] = providers.Factory(
        BaselinePipeline, store_factory=artifact_store.provider
    )
    oracle_pipeline: providers.Factory[OraclePipeline] = providers.Factory(
        OraclePipeline, store_factory=artifact_store.provider
    )
    ic_pipeline: providers.Factory[IcPipeline] = providers.Factory(
        IcPipeline, store_factory=artifact_store.provider
    )
    generalize_pipeline: providers.Factory[GeneralizePipeline] = providers.Factory(
        GeneralizePipeline, store_factory=artifact_store.provider
    )
    grid_pipeline: providers.Factory[GridPipeline] = providers.Factory(
        GridPipeline, store_factory=artifact_store.provider
    )
    trace_pipeline: providers.Factory[TracePipeline] = providers.Factory(
        TracePipeline, store_factory=artifact_store.provider
    )

    # --- エンジン ---
    engine: providers.Singleton[ExperimentEngine] = providers.Singleton(
        ExperimentEngine,
        pipelines=providers.Dict(
            train=train_pipeline,
            eval=eval_pipeline,
            baseline=baseline_pipeline,
            oracle=oracle_pipeline,
            ic=ic_pipeline,
            generalize=generalize_pipeline,
            grid=grid_pipeline,
            trace=trace_pipeline,
        )
    )
