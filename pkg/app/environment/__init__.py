# /app/environment/__init__.py
# title: 環境パッケージ
# role: MAC環境の主要なAPIを公開する。

from .signals import ChannelAction, UplinkMessage, DownlinkMessage, BS_IDLE, collision_observation, received_from
from .models import EnvConfig, EnvState, SduRecord, StepOutcome, TrafficMode
from .mac_environment import MacEnvironment, STEP_REWARD
