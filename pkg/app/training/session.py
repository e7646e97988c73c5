# /app/training/session.py
# title: 学習セッションと実験
# role: 学習セッション (N_tr学習 + N_eval評価) の実行と、異なるシードでのN_rep回の繰り返し・集計を行う。

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

import numpy as np
from scipy import stats

from app.config import settings
from app.environment.models import EnvConfig
from app.exceptions import ConfigurationError
from app.learning.q_tables import QTables
from app.training.episode_runner import run_episode
from app.training.exploration import anneal_epsilon
from app.training.models import EpisodeMode, EpisodeTrace, ExperimentResult, SessionResult, TrainConfig
from app.utils.hashing import config_hash
from app.utils.seeding import derive_session_seed, episode_rng

logger = logging.getLogger(__name__)


def _require_seed(train_config: TrainConfig) -> int:
    if train_config.seed is None:
        raise ConfigurationError("seed が指定されていません。実験の再現性のため --seed は必須です。")
    return train_config.seed


def evaluate(
    env_config: EnvConfig,
    train_config: TrainConfig,
    q_tables: QTables,
    session_seed: int,
    config_digest: str = "",
) -> List[EpisodeTrace]:
    """凍結したテーブルでε=0の評価エピソードをn_eval回実行する。テーブルは変更しない。"""
    traces = []
    for index in range(train_config.n_eval):
        trace, _ = run_episode(
            env_config, train_config, q_tables, 0.0, EpisodeMode.EVAL,
            episode_rng(session_seed, EpisodeMode.EVAL.value, index),
            episode_index=index, seed=session_seed, config_hash=config_digest,
        )
        traces.append(trace)
    return traces


def run_session(
    env_config: EnvConfig,
    train_config: TrainConfig,
    *,
    session_id: int = 0,
    eval_env_config: Optional[EnvConfig] = None,
    q_tables: Optional[QTables] = None,
) -> SessionResult:
    """
    学習セッションを実行する。train_config.seed をこのセッションのシードとして使う。

    Args:
        env_config (EnvConfig): 学習環境。
        train_config (TrainConfig): 学習設定。
        session_id (int): 結果に付与するセッション番号。
        eval_env_config (Optional[EnvConfig]): 評価環境 (未指定時は学習環境)。
        q_tables (Optional[QTables]): 既存のテーブルから学習を続ける場合に指定する。

    Returns:
        SessionResult: 学習曲線、評価リターン、評価トレース、学習済みテーブル。
    """
    seed = _require_seed(train_config)
    eval_env = eval_env_config or env_config
    digest = config_hash(env_config, train_config, eval_env_config)
    q = q_tables if q_tables is not None else QTables(default_value=train_config.q_init)
    start_time = time.time()
    logger.info(f"--- Session {session_id} START (seed={seed}, agent={train_config.agent_kind.value}) ---")

    learning_curve: List[float] = []
    epsilons: List[float] = []
    epsilon = train_config.eps_start
    for e in range(1, train_config.n_tr + 1):
        trace, q = run_episode(
            env_config, train_config, q, epsilon, EpisodeMode.TRAIN,
            episode_rng(seed, EpisodeMode.TRAIN.value, e - 1),
            episode_index=e - 1, seed=seed, config_hash=digest, record_steps=False,
        )
        learning_curve.append(trace.total_reward)
        epsilons.append(epsilon)
        epsilon = anneal_epsilon(epsilon, train_config.f_eps, e, train_config.eps_floor)
        if e % settings.PROGRESS_EVERY_EPISODES == 0:
            recent = learning_curve[-settings.PROGRESS_EVERY_EPISODES:]
            logger.info(
                f"Session {session_id}: episode {e}/{train_config.n_tr}, epsilon={epsilon:.4f}, "
                f"mean return={np.mean(recent):.3f}, states={q.num_states}"
            )

    q.freeze()
    traces = evaluate(eval_env, train_config, q, seed, digest)
    eval_returns = [trace.total_reward for trace in traces]
    mean_eval = float(np.mean(eval_returns))
    logger.info(f"--- Session {session_id} END ({(time.time() - start_time):.2f} s), mean eval return={mean_eval:.4f} ---")
    return SessionResult(
        session_id=session_id,
        seed=seed,
        learning_curve=learning_curve,
        epsilons=epsilons,
        eval_returns=eval_returns,
        mean_eval=mean_eval,
        traces=traces,
        q_tables=q,
    )


def _session_for_rep(
    env_config: EnvConfig, train_config: TrainConfig, rep: int, eval_env_config: Optional[EnvConfig]
) -> SessionResult:
    session_config = train_config.model_copy(
        update={"seed": derive_session_seed(_require_seed(train_config), rep)}
    )
    return run_session(env_config, session_config, session_id=rep, eval_env_config=eval_env_config)


def run_experiment(
    env_config: EnvConfig,
    train_config: TrainConfig,
    *,
    eval_env_config: Optional[EnvConfig] = None,
    max_workers: Optional[int] = None,
) -> ExperimentResult:
    """
    マスターシードから導出したシードでn_rep回のセッションを実行し、平均・標準誤差・最良値を集計する。
    並列実行してもセッション番号順に結果を並べるため出力は変わらない。
    """
    _require_seed(train_config)
    workers = max_workers if max_workers is not None else settings.MAX_WORKERS
    reps = range(train_config.n_rep)
    if workers > 1 and train_config.n_rep > 1:
        with ProcessPoolExecutor(max_workers=min(workers, train_config.n_rep)) as executor:
            futures = [
                executor.submit(_session_for_rep, env_config, train_config, rep, eval_env_config) for rep in reps
            ]
            sessions = [future.result() for future in futures]
    else:
        sessions = [_session_for_rep(env_config, train_config, rep, eval_env_config) for rep in reps]

    means = np.array([session.mean_eval for session in sessions])
    std_error = float(stats.sem(means, ddof=1)) if len(means) > 1 else 0.0
    result = ExperimentResult(
        env_config=env_config,
        train_config=train_config,
        config_hash=config_hash(env_config, train_config, eval_env_config),
        sessions=sessions,
        mean=float(means.mean()),
        std_error=std_error,
        best=float(means.max()),
        eval_env_config=eval_env_config,
    )
    logger.info(
        f"Experiment {result.config_hash}: mean={result.mean:.4f}, std_error={result.std_error:.4f}, best={result.best:.4f}"
    )
    return result
