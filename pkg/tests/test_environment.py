# /tests/test_environment.py
# title: MAC環境のテスト
# role: 衝突・消失・削除・到着・終了判定・報酬の各規則を検証する。

import numpy as np
import pytest

from app.environment import BS_IDLE, ChannelAction, EnvConfig, MacEnvironment, STEP_REWARD, TrafficMode
from app.exceptions import EnvironmentContractError, EpisodeFinishedError

T, N, D = ChannelAction.TRANSMIT, ChannelAction.NOTHING, ChannelAction.DELETE


def test_reset_full_buffer(rng):
    env = MacEnvironment(EnvConfig(num_ues=3, sdus_per_ue=2, t_max=10))
    state, observations, bs_obs = env.reset(rng)
    assert observations == [2, 2, 2]
    assert bs_obs == BS_IDLE
    assert state.t == 0 and not state.done


def test_reset_empty_buffer(rng):
    env = MacEnvironment(EnvConfig(num_ues=2, sdus_per_ue=2, t_max=10, traffic_mode=TrafficMode.EMPTY_BUFFER_START))
    _, observations, _ = env.reset(rng)
    assert observations == [0, 0]


def test_single_transmission_is_received_and_kept_in_buffer(rng):
    env = MacEnvironment(EnvConfig(num_ues=2, sdus_per_ue=1, t_max=10))
    state, _, _ = env.reset(rng)
    outcome = env.step(state, [N, T], rng)
    assert outcome.bs_observation == 2
    assert outcome.ue_observations == [1, 1]
    assert state.delivered_flags == [[False], [True]]
    assert outcome.reward == STEP_REWARD


def test_collision_even_when_channel_is_perfect(rng):
    env = MacEnvironment(EnvConfig(num_ues=3, sdus_per_ue=1, t_max=10, bler=0.0))
    state, _, _ = env.reset(rng)
    outcome = env.step(state, [T, T, N], rng)
    assert outcome.bs_observation == 4
    assert state.delivered_flags == [[False], [False], [False]]


def test_collision_does_not_draw_erasure(rng):
    env = MacEnvironment(EnvConfig(num_ues=2, sdus_per_ue=1, t_max=10, bler=1.0))
    state, _, _ = env.reset(rng)
    # bler=1でも衝突はアイドルではなく衝突として観測される
    assert env.step(state, [T, T], rng).bs_observation == 3


def test_erased_transmission_looks_idle(rng):
    env = MacEnvironment(EnvConfig(num_ues=1, sdus_per_ue=1, t_max=10, bler=1.0))
    state, _, _ = env.reset(rng)
    outcome = env.step(state, [T], rng)
    assert outcome.bs_observation == BS_IDLE
    assert state.delivered_flags == [[False]]


def test_transmit_with_empty_buffer_is_not_a_transmission(rng):
    env = MacEnvironment(EnvConfig(num_ues=2, sdus_per_ue=1, t_max=10))
    state, _, _ = env.reset(rng)
    env.step(state, [D, N], rng)
    # UE0のバッファは空なので、UE1の単独送信として扱われる
    assert env.step(state, [T, T], rng).bs_observation == 2


def test_delete_pops_oldest_and_is_noop_on_empty(rng):
    env = MacEnvironment(EnvConfig(num_ues=1, sdus_per_ue=2, t_max=10))
    state, _, _ = env.reset(rng)
    env.step(state, [T], rng)
    outcome = env.step(state, [D], rng)
    assert outcome.ue_observations == [1]
    assert state.buffers[0][0].sdu_index == 1
    env.step(state, [D], rng)
    assert env.step(state, [D], rng).ue_observations == [0]


def test_single_sdu_transmit_then_delete_terminates(rng):
    env = MacEnvironment(EnvConfig(num_ues=1, sdus_per_ue=1, t_max=10))
    state, _, _ = env.reset(rng)
    assert not env.step(state, [T], rng).done
    outcome = env.step(state, [D], rng)
    assert outcome.done
    assert state.t == 2


def test_deleting_undelivered_sdu_runs_to_t_max(rng):
    env = MacEnvironment(EnvConfig(num_ues=1, sdus_per_ue=1, t_max=4))
    state, _, _ = env.reset(rng)
    outcomes = [env.step(state, [D], rng)]
    while not outcomes[-1].done:
        outcomes.append(env.step(state, [N], rng))
    assert len(outcomes) == 4
    assert sum(outcome.reward for outcome in outcomes) == -4.0


def test_t_max_truncates_and_further_steps_fail(rng):
    env = MacEnvironment(EnvConfig(num_ues=1, sdus_per_ue=1, t_max=1))
    state, _, _ = env.reset(rng)
    assert env.step(state, [N], rng).done
    with pytest.raises(EpisodeFinishedError):
        env.step(state, [N], rng)


def test_joint_action_length_must_match(rng):
    env = MacEnvironment(EnvConfig(num_ues=2, sdus_per_ue=1, t_max=4))
    state, _, _ = env.reset(rng)
    with pytest.raises(EnvironmentContractError):
        env.step(state, [T], rng)


def test_empty_start_arrivals_are_bounded():
    config = EnvConfig(num_ues=2, sdus_per_ue=3, t_max=50, traffic_mode=TrafficMode.EMPTY_BUFFER_START, arrival_prob=0.7)
    env = MacEnvironment(config)
    rng = np.random.default_rng(3)
    state, _, _ = env.reset(rng)
    previous = [0, 0]
    while not state.done:
        outcome = env.step(state, [N, N], rng)
        for u in range(2):
            # 削除しない限りバッファは単調非減少で容量を超えない
            assert previous[u] <= outcome.ue_observations[u] <= config.capacity
        assert all(count <= 3 for count in state.generated_counts)
        previous = outcome.ue_observations
    assert state.generated_counts == [3, 3]


def test_reward_is_constant(rng):
    env = MacEnvironment(EnvConfig(num_ues=2, sdus_per_ue=2, t_max=20, bler=0.5))
    state, _, _ = env.reset(rng)
    while not state.done:
        actions = [ChannelAction(int(a)) for a in rng.integers(3, size=2)]
        assert env.step(state, actions, rng).reward == -1.0


def test_buffer_capacity_must_hold_all_sdus():
    with pytest.raises(ValueError):
        EnvConfig(num_ues=1, sdus_per_ue=3, t_max=4, buffer_capacity=2)
    assert EnvConfig(num_ues=1, sdus_per_ue=3, t_max=4).capacity == 3


@pytest.mark.parametrize("bler", [0.1, 0.5])
def test_single_transmitter_delivery_rate_matches_bler(bler):
    steps = 100_000
    env = MacEnvironment(EnvConfig(num_ues=1, sdus_per_ue=1, t_max=steps, bler=bler))
    rng = np.random.default_rng(2048)
    state, _, _ = env.reset(rng)
    received = 0
    while not state.done:
        received += env.step(state, [T], rng).bs_observation == 1
    p = 1.0 - bler
    assert abs(received - steps * p) <= 3 * np.sqrt(steps * p * (1.0 - p))
