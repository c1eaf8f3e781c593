import os
import sys

# 将 src 目录加入到 Python 搜索路径中，使得未安装时也可以直接 import beurling_lab
project_root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, os.path.join(project_root, "src"))

import pytest


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: 需要数秒以上的数值实验")


@pytest.fixture
def run_root(tmp_path, monkeypatch):
    """隔离的输出根目录，同时屏蔽外部环境变量"""
    monkeypatch.delenv("BEURLING_LAB_OUT", raising=False)
    monkeypatch.delenv("BEURLING_LAB_MAX_WORKERS", raising=False)
    return tmp_path / "runs"
