# /app/base_station/__init__.py
# title: 基地局パッケージ
# role: Defines this directory as a Python package.

from .expert_scheduler import BsDecision, bs_policy
