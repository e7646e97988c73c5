# /app/training/generalization.py
# title: 汎化評価
# role: 学習環境で学習したテーブルを凍結し、1つのパラメータだけが異なる評価環境で評価する。

import logging
from typing import Dict, Optional

from app.environment.models import EnvConfig
from app.training.models import ExperimentResult, TrainConfig
from app.training.session import run_experiment

logger = logging.getLogger(__name__)


def differing_fields(train_env: EnvConfig, eval_env: EnvConfig) -> Dict[str, tuple]:
    """学習環境と評価環境で値が異なるフィールド {名前: (学習時, 評価時)}。"""
    train_values = train_env.model_dump()
    eval_values = eval_env.model_dump()
    return {
        name: (train_values[name], eval_values[name])
        for name in train_values
        if train_values[name] != eval_values[name]
    }


def run_generalization(
    train_env: EnvConfig,
    eval_env: EnvConfig,
    train_config: TrainConfig,
    *,
    max_workers: Optional[int] = None,
) -> ExperimentResult:
    """
    train_envで学習し、eval_envで評価する。評価時のUE数が学習時より多くても、
    同じ共有方策を全UEに配置して評価する。未出現の状態は既定値とランダムなタイブレークで解決される。
    """
    changed = differing_fields(train_env, eval_env)
    if len(changed) > 1:
        logger.warning(f"学習環境と評価環境が複数のパラメータで異なります: {changed}")
    else:
        logger.info(f"汎化評価: {changed or '同一環境'}")
    return run_experiment(
        train_env, train_config,
        eval_env_config=None if eval_env == train_env else eval_env,
        max_workers=max_workers,
    )
