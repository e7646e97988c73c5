# /tests/test_agents.py
# title: UEエージェントのテスト
# role: エキスパートUEの規則、手書き方策 π(1)/π(2) のエピソード長、学習器の共有テーブル更新を検証する。

import numpy as np
import pytest

from app.agents import AckAwaitingAgent, FireAndDeleteAgent, LearnerAgent, expert_channel_access, expert_signaling
from app.environment.models import EnvConfig
from app.environment.signals import ChannelAction, DownlinkMessage, UplinkMessage
from app.learning import QTables
from app.training import AgentKind, EpisodeMode, TrainConfig, run_episode

NULL, SG, ACK = DownlinkMessage.NULL, DownlinkMessage.SCHEDULING_GRANT, DownlinkMessage.ACK


@pytest.mark.parametrize("o, m_prev, a_prev, expected", [
    (1, SG, ChannelAction.NOTHING, ChannelAction.TRANSMIT),
    (1, SG, ChannelAction.TRANSMIT, ChannelAction.NOTHING),
    (0, SG, ChannelAction.NOTHING, ChannelAction.NOTHING),
    (1, ACK, ChannelAction.TRANSMIT, ChannelAction.DELETE),
    (0, ACK, ChannelAction.TRANSMIT, ChannelAction.NOTHING),
    (2, NULL, ChannelAction.NOTHING, ChannelAction.NOTHING),
])
def test_expert_channel_access(o, m_prev, a_prev, expected):
    assert expert_channel_access(o, m_prev, a_prev) == expected


@pytest.mark.parametrize("o, m_prev, expected", [
    (1, NULL, UplinkMessage.SCHEDULING_REQUEST),
    (0, NULL, UplinkMessage.NULL),
    (1, SG, UplinkMessage.NULL),
    (1, ACK, UplinkMessage.NULL),
    (2, ACK, UplinkMessage.SCHEDULING_REQUEST),
])
def test_expert_signaling(o, m_prev, expected):
    assert expert_signaling(o, m_prev) == expected


def _episode(env_config: EnvConfig, kind: AgentKind, seed: int = 0):
    train = TrainConfig(agent_kind=kind, seed=seed)
    trace, _ = run_episode(env_config, train, QTables(), 0.0, EpisodeMode.EVAL, np.random.default_rng(seed))
    return trace


def test_expert_single_sdu_takes_three_steps(single_ue_env):
    trace = _episode(single_ue_env, AgentKind.EXPERT_UE)
    assert trace.total_reward == -3.0 and trace.length == 3
    first, second, third = trace.steps
    assert first.ul_messages == (UplinkMessage.SCHEDULING_REQUEST,)
    assert first.dl_messages == (SG,)
    assert second.channel_actions == (ChannelAction.TRANSMIT,)
    assert second.dl_messages == (ACK,)
    assert third.channel_actions == (ChannelAction.DELETE,)


def test_fire_and_delete_single_sdu(single_ue_env):
    trace = _episode(single_ue_env, AgentKind.HAND_CODED_PI1)
    assert trace.total_reward == -2.0
    assert [step.channel_actions[0] for step in trace.steps] == [ChannelAction.TRANSMIT, ChannelAction.DELETE]


def test_ack_awaiting_single_sdu(single_ue_env):
    trace = _episode(single_ue_env, AgentKind.HAND_CODED_PI2)
    assert trace.total_reward == -3.0
    assert [step.channel_actions[0] for step in trace.steps] == [
        ChannelAction.TRANSMIT, ChannelAction.NOTHING, ChannelAction.DELETE,
    ]


def test_ack_awaiting_retransmits_until_ack():
    env = EnvConfig(num_ues=1, sdus_per_ue=1, t_max=32, bler=0.5)
    for seed in range(20):
        trace = _episode(env, AgentKind.HAND_CODED_PI2, seed)
        actions = [step.channel_actions[0] for step in trace.steps]
        if trace.length < 32:
            assert actions[-2:] == [ChannelAction.NOTHING, ChannelAction.DELETE]
            assert set(actions[:-2]) == {ChannelAction.TRANSMIT}


def test_fire_and_delete_with_loss_idles_until_t_max():
    env = EnvConfig(num_ues=1, sdus_per_ue=1, t_max=5, bler=1.0)
    trace = _episode(env, AgentKind.HAND_CODED_PI1)
    assert trace.total_reward == -5.0
    assert [step.channel_actions[0] for step in trace.steps[2:]] == [ChannelAction.NOTHING] * 3


def test_expert_two_ues_never_collide():
    env = EnvConfig(num_ues=2, sdus_per_ue=2, t_max=32, bler=0.3)
    for seed in range(300):
        trace = _episode(env, AgentKind.EXPERT_UE, seed)
        assert all(step.bs_observation != 3 for step in trace.steps)


def test_learner_updates_shared_table_only_when_learning(rng):
    q = QTables()
    agent = LearnerAgent(q, memory_len=1, epsilon=1.0, alpha=0.5, gamma=1.0, learn=False)
    agent.reset(1)
    agent.act(rng)
    agent.observe(NULL, -1.0, 1, False)
    assert q.num_states == 0

    learner = LearnerAgent(q, memory_len=1, epsilon=1.0, alpha=0.5, gamma=1.0, learn=True)
    learner.reset(1)
    start = learner.state
    action, message = learner.act(rng)
    learner.observe(SG, -1.0, 1, False)
    assert q.values_p(start)[action] == -0.5
    assert q.values_s(start)[message] == -0.5
    assert learner.state == (1, int(SG), int(action), int(message), 1)


def test_fire_and_delete_agent_ignores_messages(rng):
    agent = FireAndDeleteAgent()
    agent.reset(1)
    assert agent.act(rng) == (ChannelAction.TRANSMIT, UplinkMessage.NULL)
    agent.observe(NULL, -1.0, 1, False)
    assert agent.act(rng)[0] == ChannelAction.DELETE


def test_ack_awaiting_agent_reset_clears_ack(rng):
    agent = AckAwaitingAgent()
    agent.reset(1)
    agent.act(rng)
    agent.observe(ACK, -1.0, 1, False)
    agent.reset(1)
    assert agent.act(rng)[0] == ChannelAction.TRANSMIT


@pytest.mark.parametrize("processing_steps, expected", [
    (0, [ChannelAction.TRANSMIT, ChannelAction.DELETE]),
    (1, [ChannelAction.TRANSMIT, ChannelAction.NOTHING, ChannelAction.DELETE]),
    (2, [ChannelAction.TRANSMIT, ChannelAction.NOTHING, ChannelAction.NOTHING, ChannelAction.DELETE]),
])
def test_ack_awaiting_agent_waits_processing_steps(rng, processing_steps, expected):
    agent = AckAwaitingAgent(processing_steps=processing_steps)
    agent.reset(1)
    actions = []
    for m in [ACK] + [NULL] * processing_steps:
        actions.append(agent.act(rng)[0])
        agent.observe(m, -1.0, 1, False)
    actions.append(agent.act(rng)[0])
    assert actions == expected


def test_ack_awaiting_agent_rejects_negative_processing():
    with pytest.raises(ValueError):
        AckAwaitingAgent(processing_steps=-1)
