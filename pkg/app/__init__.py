# /app/__init__.py
# title: アプリケーションパッケージ
# role: 各サブパッケージをインポートし、appパッケージとして利用可能にする。

from app.config import settings

__version__ = settings.TOOL_VERSION

from . import environment
from . import base_station
from . import learning
from . import agents
from . import training
from . import analysis
from . import utils
from . import models
from . import persistence
from . import pipelines
from . import engine
from . import containers
