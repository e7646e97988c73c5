# /app/agents/__init__.py
# title: エージェントパッケージ初期化ファイル
# role: このディレクトリをPythonのパッケージとして定義する。

from .base import UeAgent
from .learner_agent import LearnerAgent
from .expert_ue_agent import ExpertUeAgent, expert_channel_access, expert_signaling
from .hand_coded_agents import FireAndDeleteAgent, AckAwaitingAgent
