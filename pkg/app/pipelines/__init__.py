# /app/pipelines/__init__.py
# title: パイプラインパッケージ
# role: サブコマンドごとの実行パイプラインを公開する。

from .base import BasePipeline
from .train_pipeline import TrainPipeline
from .eval_pipeline import EvalPipeline
from .baseline_pipeline import BaselinePipeline
from .oracle_pipeline import OraclePipeline
from .ic_pipeline import IcPipeline
from .generalize_pipeline import GeneralizePipeline
from .grid_pipeline import GridPipeline
from .trace_pipeline import TracePipeline
