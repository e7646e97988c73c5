# /app/base_station/expert_scheduler.py
# title: BS MACエキスパート
# role: BS観測と全UEのULメッセージから、UEごとのDLメッセージ (ランダムスケジューリング + ACK例外) を決定する。

from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from app.environment.signals import BsObservation, DownlinkMessage, UplinkMessage, received_from
from app.exceptions import EnvironmentContractError


@dataclass(frozen=True)
class BsDecision:
    """1ステップ分のBSの判断。UEごとに1つのDLメッセージを持つ。"""
    dl_messages: Tuple[DownlinkMessage, ...]

    @property
    def granted_ue(self) -> int | None:
        for u, message in enumerate(self.dl_messages):
            if message == DownlinkMessage.SCHEDULING_GRANT:
                return u
        return None

    @property
    def acked_ue(self) -> int | None:
        for u, message in enumerate(self.dl_messages):
            if message == DownlinkMessage.ACK:
                return u
        return None


def bs_policy(bs_obs: BsObservation, ul_messages: Sequence[UplinkMessage], rng: np.random.Generator) -> BsDecision:
    """
    BSのシグナリング方策。ステップ間で状態を持たない純粋関数。

    衝突なし受信があれば送信元UEにACKを送る。SRを送ったUEのうち、ACKを受けるUEを除いた候補から
    一様ランダムに1台を選んでSGを送る。それ以外のUEにはNullを送る。

    Args:
        bs_obs (BsObservation): 直前のスロットのBS観測 [0, |U|+1]。
        ul_messages (Sequence[UplinkMessage]): UEごとのULメッセージ (長さ |U|)。
        rng (np.random.Generator): SG割り当てに使う乱数生成器。

    Returns:
        BsDecision: UEごとのDLメッセージ。
    """
    num_ues = len(ul_messages)
    if not 0 <= bs_obs <= num_ues + 1:
        raise EnvironmentContractError(f"BS観測値 {bs_obs} が範囲 [0, {num_ues + 1}] の外です。")

    messages = [DownlinkMessage.NULL] * num_ues
    acked = received_from(bs_obs, num_ues)
    if acked is not None:
        messages[acked] = DownlinkMessage.ACK

    candidates = [
        u for u, message in enumerate(ul_messages)
        if message == UplinkMessage.SCHEDULING_REQUEST and u != acked
    ]
    if candidates:
        chosen = candidates[0] if len(candidates) == 1 else candidates[int(rng.integers(len(candidates)))]
        messages[chosen] = DownlinkMessage.SCHEDULING_GRANT

    return BsDecision(tuple(messages))
