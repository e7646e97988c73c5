# /app/main.py
# title: アプリケーションメインモジュール
# role: コマンドライン引数を解釈して検証済みのリクエストを組み立て、DIコンテナから注入されたエンジンで実行する。

import argparse
import json
import logging
import os
from typing import Any, Dict, List, Optional, Sequence

from dependency_injector.wiring import inject, Provide
from pydantic import ValidationError

from app.config import settings
from app.containers import Container
from app.engine import ExperimentEngine
from app.environment.models import EnvConfig
from app.exceptions import ConfigurationError, MacSimError
from app.models import CommandRequest, CommandResult
from app.persistence.config_loader import normalize_key, parse_config

logger = logging.getLogger(__name__)

COMMANDS = ("train", "eval", "baseline", "oracle", "ic", "generalize", "grid", "trace")

# フラグ名 (argparseの属性名) → 設定キー
ENV_FLAGS = ("num_ues", "sdus", "bler", "t_max", "buffer_capacity", "start_buffer", "arrival_prob")
TRAIN_FLAGS = (
    "alpha", "gamma", "f_eps", "eps_start", "eps_floor", "n_tr", "n_eval", "n_rep",
    "memory_len", "q_init", "seed", "agent",
)
EVAL_FLAGS = {
    "eval_num_ues": "num_ues",
    "eval_bler": "bler",
    "eval_sdus": "sdus_per_ue",
    "eval_t_max": "t_max",
    "eval_start_buffer": "traffic_mode",
}


def _common_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--config", help="key=value 形式の設定ファイル")
    parser.add_argument("--output-dir", help=f"成果物の出力先 (既定: {settings.OUTPUT_DIR}/<subcommand>)")
    parser.add_argument("--workers", type=int, help="セッションの並列実行数")
    parser.add_argument("--snapshot", help="Qテーブルのスナップショットファイル")

    env = parser.add_argument_group("environment")
    env.add_argument("--num-ues", type=int)
    env.add_argument("--sdus", type=int, help="UEあたりのSDU数 P")
    env.add_argument("--bler", type=float)
    env.add_argument("--t-max", type=int)
    env.add_argument("--buffer-capacity", type=int)
    env.add_argument("--start-buffer", choices=["full", "empty"])
    env.add_argument("--arrival-prob", type=float)

    train = parser.add_argument_group("training")
    train.add_argument("--alpha", type=float)
    train.add_argument("--gamma", type=float)
    train.add_argument("--f-eps", type=float)
    train.add_argument("--eps-start", type=float)
    train.add_argument("--eps-floor", type=float)
    train.add_argument("--n-tr", type=int)
    train.add_argument("--n-eval", type=int)
    train.add_argument("--n-rep", type=int)
    train.add_argument("--memory-len", type=int)
    train.add_argument("--q-init", type=float)
    train.add_argument("--seed", type=int)
    train.add_argument("--agent", choices=["learner", "expert", "pi1", "pi2"])

    evaluation = parser.add_argument_group("evaluation environment")
    evaluation.add_argument("--eval-num-ues", type=int)
    evaluation.add_argument("--eval-bler", type=float)
    evaluation.add_argument("--eval-sdus", type=int)
    evaluation.add_argument("--eval-t-max", type=int)
    evaluation.add_argument("--eval-start-buffer", choices=["full", "empty"])

    parser.add_argument(
        "--grid", action="append", default=[], metavar="KEY=v1,v2,...",
        help="グリッドサーチするパラメータと値の集合 (複数指定可)",
    )
    parser.add_argument("--simulate", action="store_true", help="oracle: π(1)/π(2)のモンテカルロ推定を並べる")
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="macsim", description="協調型MACプロトコル学習シミュレータ")
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()
    for command in COMMANDS:
        subparsers.add_parser(command, parents=[common])
    return parser


def _parse_scalar(text: str) -> Any:
    for cast in (int, float):
        try:
            return cast(text)
        except ValueError:
            pass
    return text


def parse_grids(specs: Sequence[str]) -> Dict[str, List[Any]]:
    """ "alpha=0.1,0.2" 形式の指定を {パラメータ名: 値のリスト} にする。"""
    grids: Dict[str, List[Any]] = {}
    for spec in specs:
        key, sep, values = spec.partition("=")
        if not sep or not key.strip() or not values.strip():
            raise ConfigurationError(f"--grid の形式が不正です: '{spec}' (KEY=v1,v2,... で指定してください)")
        grids[normalize_key(key)] = [_parse_scalar(value.strip()) for value in values.split(",")]
    return grids


def build_request(args: argparse.Namespace) -> CommandRequest:
    """引数から検証済みのリクエストを組み立てる。"""
    overrides = {name: getattr(args, name) for name in ENV_FLAGS + TRAIN_FLAGS}
    defaults: Dict[str, Any] = {}
    if args.command == "oracle":
        # oracleは単一UE・単一SDUの解析式のみを扱う
        defaults = {"num_ues": 1, "sdus_per_ue": 1, "t_max": max(settings.ORACLE_T_MAX_VALUES)}
    env_config, train_config = parse_config(args.config, overrides, defaults)

    eval_updates = {key: getattr(args, flag) for flag, key in EVAL_FLAGS.items() if getattr(args, flag) is not None}
    eval_env_config: Optional[EnvConfig] = None
    if eval_updates:
        try:
            eval_env_config = env_config.with_updates(**eval_updates)
        except ValidationError as e:
            raise ConfigurationError(f"評価環境の設定が不正です: {e}") from e

    return {
        "env_config": env_config,
        "train_config": train_config,
        "eval_env_config": eval_env_config,
        "grids": parse_grids(args.grid),
        "snapshot": args.snapshot,
        "output_dir": args.output_dir or os.path.join(settings.OUTPUT_DIR, args.command),
        "workers": args.workers,
        "blers": [args.bler] if args.bler is not None else list(settings.ORACLE_BLER_VALUES),
        "t_max_values": [args.t_max] if args.t_max is not None else list(settings.ORACLE_T_MAX_VALUES),
        "simulate": args.simulate,
    }


@inject
def execute(
    command: str,
    request: CommandRequest,
    engine: ExperimentEngine = Provide[Container.engine],
) -> CommandResult:
    """
    DIコンテナから注入されたエンジンでサブコマンドを実行する。
    """
    return engine.run(command, request)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    CLIのエントリーポイント。終了コードを返す (0: 成功, 2: 設定・入力の誤り, 1: その他のエラー)。
    """
    args = build_parser().parse_args(argv)
    try:
        result = execute(args.command, build_request(args))
    except MacSimError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 2
    except Exception as e:
        logger.error(f"サブコマンド '{args.command}' の実行中に予期しないエラーが発生しました: {e}", exc_info=True)
        return 1

    print(json.dumps(result["summary"], ensure_ascii=False, indent=2, default=str))
    for path in result["artifacts"]:
        print(f"  -> {path}")
    return 0
