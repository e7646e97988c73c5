# /app/environment/mac_environment.py
# title: スロット同期MAC環境
# role: 共有ULパケット消失チャネル、UEごとの送信バッファ、報酬、終了判定からなる協調マルコフゲームを実行する。

import logging
from typing import List, Sequence, Tuple

import numpy as np

from app.environment.models import EnvConfig, EnvState, SduRecord, StepOutcome, TrafficMode
from app.environment.signals import BS_IDLE, BsObservation, ChannelAction, UeObservation, collision_observation
from app.exceptions import EnvironmentContractError, EpisodeFinishedError

logger = logging.getLogger(__name__)

STEP_REWARD = -1.0


class MacEnvironment:
    """
    全UEが共有するULデータチャネルをモデル化した環境。
    乱数はすべて呼び出し側から注入されたGeneratorから引くため、シード固定で再現可能。
    """
    def __init__(self, config: EnvConfig):
        self.config = config

    def reset(self, rng: np.random.Generator) -> Tuple[EnvState, List[UeObservation], BsObservation]:
        """
        新しいエピソードを開始する。

        Args:
            rng (np.random.Generator): エピソード用の乱数生成器 (現在のトラフィックモデルでは未使用)。

        Returns:
            Tuple[EnvState, List[UeObservation], BsObservation]: 初期状態、UEごとの観測、BS観測 (常にアイドル)。
        """
        cfg = self.config
        p = cfg.sdus_per_ue
        full = cfg.traffic_mode is TrafficMode.FULL_BUFFER_START
        state = EnvState(
            config=cfg,
            t=0,
            buffers=[[SduRecord(i) for i in range(p)] if full else [] for _ in range(cfg.num_ues)],
            generated_counts=[p if full else 0 for _ in range(cfg.num_ues)],
            delivered_flags=[[False] * p for _ in range(cfg.num_ues)],
            done=False,
        )
        return state, state.observations(), BS_IDLE

    def step(self, state: EnvState, joint_actions: Sequence[ChannelAction], rng: np.random.Generator) -> StepOutcome:
        """
        共同行動ベクトルを1スロット分実行する。

        送信は単一送信者の場合のみBernoulli(bler)で消失判定を行い、成功時は最古のSDUに配送済みフラグを立てる
        (送信によってSDUはバッファから取り除かれない)。2台以上の同時送信は衝突となり消失判定は行わない。
        削除は配送済みかどうかに関わらず最古のSDUを取り除く。空バッファ開始時は行動解決の後に到着を抽選する。
        """
        if state.done:
            raise EpisodeFinishedError(f"エピソードは t={state.t} で既に終了しています。reset() を呼び出してください。")
        cfg = self.config
        if len(joint_actions) != cfg.num_ues:
            raise EnvironmentContractError(
                f"共同行動の長さ {len(joint_actions)} がUE数 {cfg.num_ues} と一致しません。"
            )

        transmitters = [
            u for u, action in enumerate(joint_actions)
            if action == ChannelAction.TRANSMIT and state.buffers[u]
        ]
        if not transmitters:
            bs_observation = BS_IDLE
        elif len(transmitters) >= 2:
            bs_observation = collision_observation(cfg.num_ues)
        else:
            u = transmitters[0]
            if rng.random() < cfg.bler:
                # 消失した送信はBSからはアイドルに見える
                bs_observation = BS_IDLE
            else:
                sdu = state.buffers[u][0]
                sdu.delivered = True
                state.delivered_flags[u][sdu.sdu_index] = True
                bs_observation = u + 1

        for u, action in enumerate(joint_actions):
            if action == ChannelAction.DELETE and state.buffers[u]:
                state.buffers[u].pop(0)

        if cfg.traffic_mode is TrafficMode.EMPTY_BUFFER_START:
            for u in range(cfg.num_ues):
                if state.generated_counts[u] < cfg.sdus_per_ue and rng.random() < cfg.arrival_prob:
                    state.buffers[u].append(SduRecord(state.generated_counts[u]))
                    state.generated_counts[u] += 1

        state.t += 1
        state.done = state.t >= cfg.t_max or state.all_delivered_and_cleared()
        return StepOutcome(STEP_REWARD, state.observations(), bs_observation, state.done)
