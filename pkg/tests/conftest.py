# /tests/conftest.py
# title: テスト共通フィクスチャ
# role: 乱数生成器、小規模なシナリオ設定、トレース生成ヘルパー、ワイヤリング済みDIコンテナを提供する。

from typing import Sequence

import numpy as np
import pytest

from app.containers import Container
from app.environment.models import EnvConfig
from app.environment.signals import ChannelAction, DownlinkMessage, UplinkMessage
from app.training.models import EpisodeMode, EpisodeTrace, StepRecord, TrainConfig


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)


@pytest.fixture
def single_ue_env() -> EnvConfig:
    return EnvConfig(num_ues=1, sdus_per_ue=1, t_max=8, bler=0.0)


@pytest.fixture
def two_ue_env() -> EnvConfig:
    return EnvConfig(num_ues=2, sdus_per_ue=1, t_max=8, bler=0.0)


@pytest.fixture
def small_train() -> TrainConfig:
    return TrainConfig(alpha=0.3, n_tr=50, n_eval=8, n_rep=2, memory_len=1, seed=7)


def make_trace(dl: Sequence[DownlinkMessage], actions: Sequence[ChannelAction], num_ues: int = 1) -> EpisodeTrace:
    """UE 0 の m_t と a_t を指定した合成トレース。他のUEはすべてNull/Nothing。"""
    steps = []
    for t, (m, a) in enumerate(zip(dl, actions)):
        steps.append(StepRecord(
            t=t,
            ue_observations=(1,) * num_ues,
            channel_actions=(a,) + (ChannelAction.NOTHING,) * (num_ues - 1),
            ul_messages=(UplinkMessage.NULL,) * num_ues,
            dl_messages=(m,) + (DownlinkMessage.NULL,) * (num_ues - 1),
            bs_observation=0,
            reward=-1.0,
        ))
    return EpisodeTrace(
        episode_index=0, mode=EpisodeMode.EVAL, seed=0, config_hash="", num_ues=num_ues,
        steps=steps, length=len(steps), total_reward=-float(len(steps)),
    )


@pytest.fixture
def container():
    container = Container()
    container.wire(modules=["app.main"])
    yield container
    container.unwire()
