# /app/analysis/oracles.py
# title: 解析的最適性能
# role: 単一UE・単一SDUシナリオにおける π(1) / π(2) の期待リターンと最適リターンを計算する。

from pydantic import BaseModel, ConfigDict, Field


class OracleInput(BaseModel):
    """解析式の入力。b はBLER、t_max はエピソードの最大長。"""
    model_config = ConfigDict(frozen=True)

    b: float = Field(..., ge=0.0, le=1.0)
    t_max: int = Field(..., ge=1)


def expected_r1(inp: OracleInput) -> float:
    """π(1) (送信直後に削除) の期待リターン b·(2−t_max)−2。"""
    return inp.b * (2 - inp.t_max) - 2


def expected_r2(inp: OracleInput) -> float:
    """
    π(2) (ACKを待ってから削除) の期待リターン。
    t_max<4 では −t_max、t_max=4 では −(b+3)、それ以上では成功までの再送回数で重み付けした和。
    """
    b, t_max = inp.b, inp.t_max
    if t_max < 4:
        return float(-t_max)
    if t_max == 4:
        return -(b + 3)
    if b == 0.0:
        return -3.0
    tail = 3.0
    for i in range(4, t_max):
        tail += i * b ** (i - 3)
    return (b - 1) * tail - t_max * b ** (t_max - 3)


def optimal_r(inp: OracleInput) -> float:
    """単一UE・単一SDUでの期待最適リターン max(R(1), R(2))。"""
    return max(expected_r1(inp), expected_r2(inp))


def optimal_branch(inp: OracleInput) -> str:
    """最適となる方策の枝 ("pi1" または "pi2")。同値の場合は "pi1"。"""
    return "pi1" if expected_r1(inp) >= expected_r2(inp) else "pi2"


def expected_r2_immediate(inp: OracleInput) -> float:
    """
    ACKを観測したステップで即座に削除する π(2) の期待リターン。

    ACKは送信の1ステップ後に観測されるため、初回成功がk回目の送信なら k+1 ステップで終わる。
    t_max−1回目までに成功しなければ t_max ステップ。学習器が到達できる最適値はこちらに対応する。
    """
    b, t_max = inp.b, inp.t_max
    success = sum((1 - b) * b ** (k - 1) * (k + 1) for k in range(1, t_max))
    return -(success + t_max * b ** (t_max - 1))


def optimal_r_immediate(inp: OracleInput) -> float:
    """ACKを即座に処理できるUEにとっての期待最適リターン max(R(1), 即時削除のR(2))。"""
    return max(expected_r1(inp), expected_r2_immediate(inp))
