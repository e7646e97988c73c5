# /tests/test_session.py
# title: 学習セッション・実験のテスト
# role: 探索率の減衰、シード管理と決定性、実験の集計、汎化評価、グリッドサーチを検証する。

import numpy as np
import pytest
from scipy import stats

from app.environment.models import EnvConfig
from app.exceptions import ConfigurationError
from app.training import (
    AgentKind, TrainConfig, anneal_epsilon, differing_fields, grid_search, run_experiment,
    run_generalization, run_session,
)
from app.utils import derive_session_seed, episode_rng


def test_anneal_first_step():
    assert anneal_epsilon(1.0, 0.5, 1) == 0.5
    assert anneal_epsilon(0.5, 0.5, 2) == 0.125


def test_anneal_floor_and_monotone():
    eps, history = 1.0, []
    for e in range(1, 2000):
        eps = anneal_epsilon(eps, 0.999, e)
        history.append(eps)
    assert all(b <= a for a, b in zip(history, history[1:]))
    assert history[-1] == 0.01
    assert anneal_epsilon(1.0, 1.0, 5) == 1.0


def test_anneal_rejects_episode_zero():
    with pytest.raises(ValueError):
        anneal_epsilon(1.0, 0.9, 0)


def test_seed_splitting_is_stable_and_distinct():
    seeds = [derive_session_seed(42, rep) for rep in range(8)]
    assert seeds == [derive_session_seed(42, rep) for rep in range(8)]
    assert len(set(seeds)) == 8
    a = episode_rng(5, "train", 0).random(4)
    np.testing.assert_array_equal(a, episode_rng(5, "train", 0).random(4))
    assert not np.array_equal(a, episode_rng(5, "eval", 0).random(4))


def test_session_requires_seed(single_ue_env):
    with pytest.raises(ConfigurationError):
        run_session(single_ue_env, TrainConfig(n_tr=1, n_eval=1))


def test_session_shapes(two_ue_env, small_train):
    result = run_session(two_ue_env, small_train)
    assert len(result.learning_curve) == len(result.epsilons) == small_train.n_tr
    assert len(result.eval_returns) == len(result.traces) == small_train.n_eval
    assert all(-two_ue_env.t_max <= r <= -1 for r in result.learning_curve)
    assert all(b <= a for a, b in zip(result.epsilons, result.epsilons[1:]))
    assert result.epsilons[0] == small_train.eps_start
    assert result.mean_eval == pytest.approx(np.mean(result.eval_returns))
    assert result.q_tables.read_only


def test_session_is_deterministic(two_ue_env, small_train):
    first = run_session(two_ue_env, small_train)
    second = run_session(two_ue_env, small_train)
    assert first.learning_curve == second.learning_curve
    assert first.eval_returns == second.eval_returns
    assert first.traces == second.traces
    assert first.q_tables == second.q_tables


def test_expert_session_without_training(single_ue_env):
    result = run_session(single_ue_env, TrainConfig(n_tr=0, n_eval=5, seed=1, agent_kind=AgentKind.EXPERT_UE))
    assert result.learning_curve == []
    assert result.eval_returns == [-3.0] * 5


def test_experiment_aggregates_sessions(two_ue_env, small_train):
    train = small_train.model_copy(update={"n_rep": 3})
    result = run_experiment(two_ue_env, train, max_workers=1)
    means = [session.mean_eval for session in result.sessions]
    assert [session.session_id for session in result.sessions] == [0, 1, 2]
    assert len({session.seed for session in result.sessions}) == 3
    assert result.mean == pytest.approx(np.mean(means))
    assert result.std_error == pytest.approx(stats.sem(means, ddof=1))
    assert result.best == max(means)
    assert result.best_session.mean_eval == result.best
    assert result.summary()["n_rep"] == 3


def test_single_session_has_zero_std_error(single_ue_env):
    result = run_experiment(single_ue_env, TrainConfig(n_tr=5, n_eval=2, n_rep=1, seed=3), max_workers=1)
    assert result.std_error == 0.0


@pytest.mark.slow
def test_parallel_experiment_matches_sequential(two_ue_env, small_train):
    sequential = run_experiment(two_ue_env, small_train, max_workers=1)
    parallel = run_experiment(two_ue_env, small_train, max_workers=2)
    assert [s.eval_returns for s in sequential.sessions] == [s.eval_returns for s in parallel.sessions]
    assert sequential.mean == parallel.mean


def test_matched_generalization_equals_experiment(single_ue_env):
    train = TrainConfig(n_tr=40, n_eval=6, n_rep=2, seed=11, alpha=0.05)
    direct = run_experiment(single_ue_env, train, max_workers=1)
    matched = run_generalization(single_ue_env, single_ue_env, train, max_workers=1)
    assert matched.eval_env_config is None
    assert matched.config_hash == direct.config_hash
    assert [s.eval_returns for s in matched.sessions] == [s.eval_returns for s in direct.sessions]


@pytest.mark.parametrize("eval_updates", [{"num_ues": 2}, {"bler": 0.1}, {"sdus_per_ue": 2}])
def test_generalization_to_other_conditions(single_ue_env, eval_updates):
    eval_env = single_ue_env.with_updates(**eval_updates)
    train = TrainConfig(n_tr=40, n_eval=6, n_rep=2, seed=11)
    result = run_generalization(single_ue_env, eval_env, train, max_workers=1)
    assert result.eval_env_config == eval_env
    assert np.isfinite(result.mean)
    assert set(differing_fields(single_ue_env, eval_env)) >= set(eval_updates)
    assert all(trace.num_ues == eval_env.num_ues for trace in result.sessions[0].traces)


def test_with_updates_follows_default_capacity():
    env = EnvConfig(num_ues=1, sdus_per_ue=1, t_max=4)
    assert env.with_updates(sdus_per_ue=3).capacity == 3
    fixed = EnvConfig(num_ues=1, sdus_per_ue=1, t_max=4, buffer_capacity=5)
    assert fixed.with_updates(sdus_per_ue=3).capacity == 5


def test_grid_search_rows(single_ue_env):
    train = TrainConfig(n_tr=10, n_eval=2, n_rep=2, seed=4)
    rows = grid_search(single_ue_env, train, {"alpha": [0.1, 0.3], "t_max": [4, 6, 8]}, max_workers=1)
    assert len(rows) == 6
    assert {(row["alpha"], row["t_max"]) for row in rows} == {(a, t) for a in (0.1, 0.3) for t in (4, 6, 8)}
    assert len({row["config_hash"] for row in rows}) == 6
    assert all(row["mean"] >= -row["t_max"] for row in rows)


def test_grid_search_rejects_unknown_and_invalid(single_ue_env):
    train = TrainConfig(n_tr=1, n_eval=1, n_rep=1, seed=4)
    with pytest.raises(ConfigurationError):
        grid_search(single_ue_env, train, {"beta": [1]})
    with pytest.raises(ConfigurationError):
        grid_search(single_ue_env, train, {"bler": [2.0]})
