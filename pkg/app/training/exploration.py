# /app/training/exploration.py
# title: 探索率アニーリング
# role: 学習エピソード境界ごとに ε_e = max(ε_{e-1}·F_ε^e, 下限) で探索率を減衰させる。

DEFAULT_EPS_FLOOR = 0.01


def anneal_epsilon(eps_prev: float, f_eps: float, e: int, eps_floor: float = DEFAULT_EPS_FLOOR) -> float:
    """
    e番目の学習エピソード境界での探索率を返す。指数がエピソード番号とともに増えるため、
    通常の指数減衰より速く減衰する。
    """
    if e < 1:
        raise ValueError(f"エピソード番号は1以上でなければなりません: {e}")
    return max(eps_prev * f_eps ** e, eps_floor)
