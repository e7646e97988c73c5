# /app/utils/seeding.py
# title: シード分割
# role: マスターシードからセッション・エピソードごとの独立した乱数生成器を導出する。

import numpy as np

# エピソード種別ごとのspawn_key接頭辞
_MODE_KEYS = {"train": 0, "eval": 1}


def derive_session_seed(master_seed: int, rep: int) -> int:
    """rep番目のセッションのシードを SeedSequence(master_seed, spawn_key=(rep,)) から導出する。"""
    sequence = np.random.SeedSequence(master_seed, spawn_key=(rep,))
    return int(sequence.generate_state(1, dtype=np.uint32)[0])


def episode_rng(session_seed: int, mode: str, episode_index: int) -> np.random.Generator:
    """セッション内の1エピソード用の乱数生成器。エピソード単位で個別に再現できる。"""
    sequence = np.random.SeedSequence(session_seed, spawn_key=(_MODE_KEYS[mode], episode_index))
    return np.random.default_rng(sequence)
