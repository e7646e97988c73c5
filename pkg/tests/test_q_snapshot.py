# /tests/test_q_snapshot.py
# title: Qテーブルスナップショットのテスト
# role: 空・大規模テーブルのビット単位の往復、メモリ長とバージョンの照合を検証する。

import json

import numpy as np
import pytest

from app.exceptions import SnapshotError
from app.learning import QTables
from app.persistence import dump_qtables, load_qtables, parse_qtables, snapshot_qtables


def test_empty_table_round_trip(tmp_path):
    path = str(tmp_path / "q.json")
    q = QTables(default_value=-0.75)
    snapshot_qtables(q, path, memory_len=1, config_hash="abc")
    loaded = load_qtables(path)
    assert loaded == q
    assert loaded.default_value == -0.75 and loaded.num_states == 0


def test_large_table_round_trip_is_bit_exact():
    rng = np.random.default_rng(0)
    q = QTables()
    for i in range(10_000):
        key = (int(i % 3), int(i // 3 % 3), int(i // 9 % 3), int(i // 27 % 2), int(i // 54))
        q.q_p[key] = rng.normal(size=3) * 10.0 ** rng.integers(-300, 300)
        q.q_s[key] = rng.normal(size=2)
    q.q_p[(9, 9, 9, 9, 9)] = np.array([-0.0, 5e-324, np.nextafter(1.0, 2.0)])
    loaded = parse_qtables(dump_qtables(q, 1, "h"), memory_len=1)
    assert loaded.checksum() == q.checksum()
    assert np.signbit(loaded.q_p[(9, 9, 9, 9, 9)][0])


def test_snapshot_carries_version_and_hash():
    data = json.loads(dump_qtables(QTables(), 2, "deadbeef"))
    assert data["format_version"] == 1
    assert data["config_hash"] == "deadbeef"
    assert data["memory_len"] == 2


def test_memory_length_mismatch_cites_both_values():
    text = dump_qtables(QTables(), 1, "h")
    with pytest.raises(SnapshotError, match=r"memory_len=1.*memory_len=3"):
        parse_qtables(text, memory_len=3)


def test_unsupported_version():
    data = json.loads(dump_qtables(QTables(), 1, "h"))
    data["format_version"] = 99
    with pytest.raises(SnapshotError, match="99"):
        parse_qtables(json.dumps(data))


def test_corrupt_snapshot(tmp_path):
    with pytest.raises(SnapshotError):
        parse_qtables("{not json")
    with pytest.raises(SnapshotError):
        load_qtables(str(tmp_path / "missing.json"))


@pytest.mark.parametrize("table,values", [
    ("q_p", ["0x0.0p+0", "0x0.0p+0"]),
    ("q_s", ["0x0.0p+0", "0x0.0p+0", "0x0.0p+0"]),
])
def test_wrong_value_vector_length_is_rejected(table, values):
    data = json.loads(dump_qtables(QTables(), 1, "h"))
    data[table] = [{"key": [0, 0, 0, 0, 0], "values": values}]
    with pytest.raises(SnapshotError, match=table):
        parse_qtables(json.dumps(data))


def test_malformed_hex_value_is_rejected():
    data = json.loads(dump_qtables(QTables(), 1, "h"))
    data["q_s"] = [{"key": [0, 0, 0, 0, 0], "values": ["zz", "0x0.0p+0"]}]
    with pytest.raises(SnapshotError):
        parse_qtables(json.dumps(data))
