# /app/persistence/config_loader.py
# title: 設定ファイル読み込み
# role: key=value形式の設定ファイルとCLIフラグを統合し、検証済みの EnvConfig / TrainConfig と実行マニフェストを作る。

import logging
import os
from datetime import datetime, timezone
from typing import Any, Dict, Mapping, Optional, Tuple

from dotenv import dotenv_values
from pydantic import BaseModel, Field, ValidationError

from app.config import settings
from app.environment.models import EnvConfig
from app.exceptions import ConfigurationError
from app.training.models import TrainConfig
from app.utils.hashing import config_hash

logger = logging.getLogger(__name__)

# CLIフラグ名・設定キーの別名
KEY_ALIASES = {
    "sdus": "sdus_per_ue",
    "start_buffer": "traffic_mode",
    "agent": "agent_kind",
}


def normalize_key(key: str) -> str:
    normalized = key.strip().lower().replace("-", "_")
    return KEY_ALIASES.get(normalized, normalized)


def _validation_message(error: ValidationError) -> str:
    details = []
    for item in error.errors():
        key = ".".join(str(part) for part in item["loc"]) or "(root)"
        details.append(f"'{key}': {item['msg']}")
    return "; ".join(details)


def _validate(model: type, values: Dict[str, Any]) -> Any:
    try:
        return model.model_validate(values)
    except ValidationError as e:
        raise ConfigurationError(f"設定が不正です: {_validation_message(e)}") from e


def parse_config(
    path: Optional[str] = None,
    overrides: Optional[Mapping[str, Any]] = None,
    defaults: Optional[Mapping[str, Any]] = None,
) -> Tuple[EnvConfig, TrainConfig]:
    """
    設定ファイル (任意) とフラグ値から検証済みの設定を作る。
    優先順位は フラグ値 > 設定ファイル > defaults > モデルの既定値。値がNoneのフラグは未指定として扱う。

    Raises:
        ConfigurationError: ファイルが存在しない、未知のキー、範囲外の値、必須キーの欠落。
    """
    raw: Dict[str, Any] = {normalize_key(key): value for key, value in (defaults or {}).items()}
    if path is not None:
        if not os.path.exists(path):
            raise ConfigurationError(f"設定ファイル '{path}' が見つかりません。")
        for key, value in dotenv_values(path).items():
            if value is None:
                raise ConfigurationError(f"設定キー '{key}' に値がありません (key=value 形式で指定してください)。")
            raw[normalize_key(key)] = value.strip()
    for key, value in (overrides or {}).items():
        if value is not None:
            raw[normalize_key(key)] = value

    env_fields = set(EnvConfig.model_fields)
    train_fields = set(TrainConfig.model_fields)
    unknown = sorted(set(raw) - env_fields - train_fields)
    if unknown:
        raise ConfigurationError(f"未知の設定キーです: {', '.join(repr(key) for key in unknown)}")

    env_config = _validate(EnvConfig, {key: value for key, value in raw.items() if key in env_fields})
    train_config = _validate(TrainConfig, {key: value for key, value in raw.items() if key in train_fields})
    logger.debug(f"設定を読み込みました: env={env_config}, train={train_config}")
    return env_config, train_config


class RunManifest(BaseModel):
    """
    実行マニフェスト。結果に影響するすべての設定項目とそのハッシュを記録する。
    extras はグリッド・スナップショットのチェックサム・oracleの走査値など、設定モデルの外の入力。
    """
    env_config: EnvConfig
    train_config: TrainConfig
    eval_env_config: Optional[EnvConfig] = None
    extras: Dict[str, Any] = Field(default_factory=dict)
    tool_version: str = Field(default=settings.TOOL_VERSION)
    config_hash: str
    master_seed: Optional[int]
    command: str
    created_at: str = Field(default_factory=lambda: datetime.now(timezone.utc).isoformat())

    @classmethod
    def create(
        cls,
        command: str,
        env_config: EnvConfig,
        train_config: TrainConfig,
        eval_env_config: Optional[EnvConfig] = None,
        extras: Optional[Mapping[str, Any]] = None,
    ) -> "RunManifest":
        extras = dict(extras or {})
        return cls(
            env_config=env_config,
            train_config=train_config,
            eval_env_config=eval_env_config,
            extras=extras,
            config_hash=config_hash(env_config, train_config, eval_env_config, extras),
            master_seed=train_config.seed,
            command=command,
        )
