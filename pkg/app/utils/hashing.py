# /app/utils/hashing.py
# title: 設定ハッシュ
# role: 結果に影響するすべての設定項目から安定した内容ハッシュを計算する。

import hashlib
import json
from typing import Any, Mapping, Optional

from pydantic import BaseModel


def config_hash(
    env_config: BaseModel,
    train_config: BaseModel,
    eval_env_config: Optional[BaseModel] = None,
    extras: Optional[Mapping[str, Any]] = None,
) -> str:
    """
    環境設定・学習設定 (と評価環境設定) の正規化JSONに対するSHA-256の先頭16桁。
    extras にはグリッド・スナップショットのチェックサムなど、設定モデルの外で結果に影響する入力を渡す。
    """
    payload = {
        "env": env_config.model_dump(mode="json"),
        "train": train_config.model_dump(mode="json"),
    }
    if eval_env_config is not None:
        payload["eval_env"] = eval_env_config.model_dump(mode="json")
    if extras:
        payload["extras"] = dict(extras)
    canonical = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:16]
