# /app/persistence/artifact_store.py
# title: 成果物ストア
# role: 実行結果 (CSV・JSON・テキスト・マニフェスト) を出力ディレクトリに書き出す。書き込みは調整側のプロセスからのみ行う。

import json
import logging
import os
from typing import Any, Dict, List

from app.persistence.config_loader import RunManifest

logger = logging.getLogger(__name__)


class ArtifactStore:
    """
    出力ディレクトリ配下に成果物ファイルを保存するクラス。
    """
    def __init__(self, output_dir: str):
        self.output_dir = output_dir
        self.written: List[str] = []

    def path(self, name: str) -> str:
        return os.path.join(self.output_dir, name)

    def write_text(self, name: str, content: str) -> str:
        """テキスト成果物を保存し、そのパスを返す。"""
        path = self.path(name)
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as f:
            f.write(content)
        self.written.append(path)
        logger.info(f"成果物を保存しました: {path}")
        return path

    def write_json(self, name: str, data: Dict[str, Any]) -> str:
        return self.write_text(name, json.dumps(data, ensure_ascii=False, indent=2, sort_keys=True) + "\n")

    def write_manifest(self, manifest: RunManifest, name: str = "manifest.json") -> str:
        return self.write_text(name, manifest.model_dump_json(indent=2) + "\n")
