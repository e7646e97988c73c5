# /app/training/episode_runner.py
# title: エピソード実行
# role: 行動選択 → 環境ステップ → BS応答 → メモリ更新 → Q更新 というタイミング契約に従って1エピソードを実行する。

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from app.agents.base import UeAgent
from app.agents.expert_ue_agent import ExpertUeAgent
from app.agents.hand_coded_agents import AckAwaitingAgent, FireAndDeleteAgent
from app.agents.learner_agent import LearnerAgent
from app.base_station.expert_scheduler import bs_policy
from app.environment.mac_environment import MacEnvironment
from app.environment.models import EnvConfig
from app.exceptions import EnvironmentContractError
from app.learning.q_tables import QTables
from app.training.models import AgentKind, EpisodeMode, EpisodeTrace, StepRecord, TrainConfig

logger = logging.getLogger(__name__)


def build_agents(
    train_config: TrainConfig, q_tables: QTables, num_ues: int, epsilon: float, learn: bool
) -> List[UeAgent]:
    """エージェント種別に応じて、全UEに同じ方策のエージェントを配置する。"""
    kind = train_config.agent_kind
    if kind is AgentKind.LEARNER:
        return [
            LearnerAgent(q_tables, train_config.memory_len, epsilon, train_config.alpha, train_config.gamma, learn)
            for _ in range(num_ues)
        ]
    if kind is AgentKind.EXPERT_UE:
        return [ExpertUeAgent() for _ in range(num_ues)]
    if kind is AgentKind.HAND_CODED_PI1:
        return [FireAndDeleteAgent() for _ in range(num_ues)]
    return [AckAwaitingAgent() for _ in range(num_ues)]


def run_episode(
    env_config: EnvConfig,
    train_config: TrainConfig,
    q_tables: QTables,
    epsilon: float,
    mode: EpisodeMode,
    rng: np.random.Generator,
    *,
    episode_index: int = 0,
    seed: int = 0,
    config_hash: str = "",
    record_steps: bool = True,
    agents: Optional[Sequence[UeAgent]] = None,
) -> Tuple[EpisodeTrace, QTables]:
    """
    1エピソードを終了まで実行する。

    各ステップで
    1. 各UEが (o_t, h_t) から (a_t, n_t) を選ぶ
    2. 環境が共同チャネル行動を実行する
    3. BSが (o_{t+1}^b, n_t) から UEごとの m_t を決める
    4. 各UEが (m_t, a_t, n_t, o_t) をメモリに積み、次の状態を作る
    5. 学習モードでは各UEの遷移で共有テーブルを更新する
    評価モードではεを0とし、テーブルは更新しない。
    agents を渡した場合は agent_kind から作らずにそのエージェントを使う (長さは |U|)。

    Returns:
        Tuple[EpisodeTrace, QTables]: トレースと (学習モードでは更新済みの) テーブル。
    """
    learn = mode is EpisodeMode.TRAIN
    if not learn:
        epsilon = 0.0
    env = MacEnvironment(env_config)
    state, observations, _ = env.reset(rng)
    if agents is None:
        agents = build_agents(train_config, q_tables, env_config.num_ues, epsilon, learn)
    elif len(agents) != env_config.num_ues:
        raise EnvironmentContractError(f"エージェント数 {len(agents)} がUE数 {env_config.num_ues} と一致しません。")
    for agent, observation in zip(agents, observations):
        agent.reset(observation)

    trace = EpisodeTrace(
        episode_index=episode_index, mode=mode, seed=seed, config_hash=config_hash, num_ues=env_config.num_ues
    )
    while not state.done:
        decisions = [agent.act(rng) for agent in agents]
        actions = [action for action, _ in decisions]
        messages = [message for _, message in decisions]
        outcome = env.step(state, actions, rng)
        dl_messages = bs_policy(outcome.bs_observation, messages, rng).dl_messages
        for agent, dl_message, next_observation in zip(agents, dl_messages, outcome.ue_observations):
            agent.observe(dl_message, outcome.reward, next_observation, outcome.done)

        if record_steps:
            trace.steps.append(StepRecord(
                t=trace.length,
                ue_observations=tuple(observations),
                channel_actions=tuple(actions),
                ul_messages=tuple(messages),
                dl_messages=dl_messages,
                bs_observation=outcome.bs_observation,
                reward=outcome.reward,
            ))
        trace.length += 1
        trace.total_reward += outcome.reward
        observations = outcome.ue_observations
    return trace, q_tables
