# /tests/test_base_station.py
# title: BS MACエキスパートのテスト
# role: ACKの優先、SG候補からのACK対象UEの除外、SG割り当ての一様性を検証する。

from collections import Counter

import numpy as np
import pytest

from app.base_station import bs_policy
from app.environment.signals import DownlinkMessage, UplinkMessage
from app.exceptions import EnvironmentContractError

SR, NULL = UplinkMessage.SCHEDULING_REQUEST, UplinkMessage.NULL


def test_idle_without_requests_sends_nothing(rng):
    decision = bs_policy(0, [NULL, NULL, NULL], rng)
    assert decision.dl_messages == (DownlinkMessage.NULL,) * 3
    assert decision.granted_ue is None and decision.acked_ue is None


def test_single_requester_gets_grant(rng):
    decision = bs_policy(0, [NULL, SR], rng)
    assert decision.dl_messages == (DownlinkMessage.NULL, DownlinkMessage.SCHEDULING_GRANT)


def test_received_ue_is_acked(rng):
    decision = bs_policy(2, [NULL, NULL, NULL], rng)
    assert decision.acked_ue == 1
    assert decision.dl_messages[1] == DownlinkMessage.ACK


def test_acked_ue_is_excluded_from_grant(rng):
    decision = bs_policy(1, [SR, SR], rng)
    assert decision.dl_messages == (DownlinkMessage.ACK, DownlinkMessage.SCHEDULING_GRANT)


def test_acked_sole_requester_gets_only_ack(rng):
    decision = bs_policy(1, [SR], rng)
    assert decision.dl_messages == (DownlinkMessage.ACK,)


def test_collision_is_not_acked(rng):
    decision = bs_policy(3, [SR, NULL], rng)
    assert decision.acked_ue is None
    assert decision.granted_ue == 0


def test_out_of_range_observation(rng):
    with pytest.raises(EnvironmentContractError):
        bs_policy(4, [NULL, NULL], rng)


def test_grant_is_uniform_among_requesters():
    rng = np.random.default_rng(2024)
    counts = Counter(bs_policy(0, [SR, SR, NULL, SR], rng).granted_ue for _ in range(6000))
    assert set(counts) == {0, 1, 3}
    for u in (0, 1, 3):
        assert abs(counts[u] - 2000) < 200


def test_at_most_one_grant_per_step():
    rng = np.random.default_rng(5)
    for _ in range(200):
        ul = [UplinkMessage(int(v)) for v in rng.integers(2, size=4)]
        decision = bs_policy(int(rng.integers(6)), ul, rng)
        assert sum(m == DownlinkMessage.SCHEDULING_GRANT for m in decision.dl_messages) <= 1
        assert sum(m == DownlinkMessage.ACK for m in decision.dl_messages) <= 1
