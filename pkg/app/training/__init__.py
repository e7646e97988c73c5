# /app/training/__init__.py
# title: 学習パッケージ
# role: エピソード・セッション・実験・汎化評価・グリッドサーチのAPIを公開する。

from .models import (
    AgentKind, EpisodeMode, TrainConfig, StepRecord, EpisodeTrace,
    SessionResult, ExperimentResult, ExperimentSummary, GridRow,
)
from .exploration import anneal_epsilon
from .episode_runner import run_episode, build_agents
from .session import run_session, run_experiment, evaluate
from .generalization import run_generalization, differing_fields
from .grid_search import grid_search, apply_params
