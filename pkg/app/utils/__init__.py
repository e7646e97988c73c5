# /app/utils/__init__.py
# title: Utils Package
# role: Defines this directory as a Python package.

from .hashing import config_hash
from .seeding import derive_session_seed, episode_rng
