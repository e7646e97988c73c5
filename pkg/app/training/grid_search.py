# /app/training/grid_search.py
# title: グリッドサーチ
# role: 環境・学習パラメータの離散集合の直積を走査し、組み合わせごとに実験を実行して性能表を作る。

import itertools
import logging
from typing import Any, List, Mapping, Optional, Sequence, Tuple

from pydantic import ValidationError

from app.environment.models import EnvConfig
from app.exceptions import ConfigurationError
from app.training.models import GridRow, TrainConfig
from app.training.session import run_experiment

logger = logging.getLogger(__name__)


def apply_params(env_config: EnvConfig, train_config: TrainConfig, params: Mapping[str, Any]) -> Tuple[EnvConfig, TrainConfig]:
    """パラメータ名に応じて環境設定・学習設定のフィールドを置き換え、再検証する。"""
    env_updates = {key: value for key, value in params.items() if key in EnvConfig.model_fields}
    train_updates = {key: value for key, value in params.items() if key in TrainConfig.model_fields}
    unknown = set(params) - set(env_updates) - set(train_updates)
    if unknown:
        raise ConfigurationError(f"グリッドに未知のパラメータがあります: {sorted(unknown)}")
    try:
        env = env_config.with_updates(**env_updates)
        train = TrainConfig.model_validate({**train_config.model_dump(), **train_updates})
    except ValidationError as e:
        raise ConfigurationError(f"グリッドの組み合わせ {dict(params)} が不正です: {e}") from e
    return env, train


def grid_search(
    env_config: EnvConfig,
    train_config: TrainConfig,
    grids: Mapping[str, Sequence[Any]],
    *,
    max_workers: Optional[int] = None,
) -> List[GridRow]:
    """
    グリッドの直積の各組み合わせでrun_experimentを1回実行する。行数は各グリッドの大きさの積。

    Returns:
        List[GridRow]: パラメータ値と mean / std_error / best / config_hash を持つ行のリスト。
    """
    names = list(grids)
    combinations = list(itertools.product(*(grids[name] for name in names)))
    logger.info(f"グリッドサーチ: {names} の {len(combinations)} 通りを評価します。")
    rows: List[GridRow] = []
    for values in combinations:
        params = dict(zip(names, values))
        env, train = apply_params(env_config, train_config, params)
        result = run_experiment(env, train, max_workers=max_workers)
        rows.append({
            **params,
            "mean": result.mean,
            "std_error": result.std_error,
            "best": result.best,
            "config_hash": result.config_hash,
        })
    return rows
