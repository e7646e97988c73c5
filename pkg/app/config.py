# /app/config.py
# title: アプリケーション設定
# role: アプリケーション全体で使用される設定値を一元管理する。

import os
from dotenv import load_dotenv

load_dotenv()

class Config:
    # 出力・ログ関連の設定
    OUTPUT_DIR = os.getenv("MACSIM_OUTPUT_DIR", "results")
    LOG_LEVEL = os.getenv("MACSIM_LOG_LEVEL", "INFO")

    # セッションの並列実行数 (1 = 逐次実行)
    MAX_WORKERS = int(os.getenv("MACSIM_MAX_WORKERS", "1"))

    # 学習中の進捗ログを出力するエピソード間隔
    PROGRESS_EVERY_EPISODES = int(os.getenv("MACSIM_PROGRESS_EVERY", "1024"))

    # Qテーブルスナップショットのファイル形式バージョン
    SNAPSHOT_FORMAT_VERSION = 1

    # マニフェストに記録するツールのバージョン
    TOOL_VERSION = "0.1.0"

    # 成果物ファイル名
    ARTIFACT_NAMES = {
        "manifest": "manifest.json",
        "learning_curve": "learning_curve.csv",
        "summary": "summary.json",
        "q_snapshot": "q_tables.json",
        "grid": "grid.csv",
        "ic": "ic_vs_return.csv",
        "trace_json": "trace.json",
        "trace_msc": "trace.txt",
        "baseline": "baseline.csv",
        "oracle": "oracle.csv",
        "eval_returns": "eval_returns.csv",
    }

    # グリッドサーチの探索集合 (グリッド未指定時に使用)
    GRID_SEARCH_SETS = {
        "gamma": [0.0, 0.5, 1.0],
        "f_eps": [0.99991, 0.999991, 0.9999991],
        "alpha": [0.05, 0.06, 0.1, 0.2, 0.3, 0.4],
    }

    # oracleサブコマンドで評価する既定のt_max
    ORACLE_T_MAX_VALUES = [2, 4, 8, 16, 32]
    ORACLE_BLER_VALUES = [0.0, 0.25, 0.5]

settings = Config()
