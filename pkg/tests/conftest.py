#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
测试公共设置：把项目根目录加入 sys.path，每个测试使用临时的引擎配置文件
"""

import os
import sys

import pytest

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
if ROOT not in sys.path:
    sys.path.insert(0, ROOT)

from jackkit import engine_config  # noqa: E402


@pytest.fixture(autouse=True)
def isolated_engine_config(tmp_path, monkeypatch):
    """避免测试在工作目录写出 engine_config.json，也避免读到本地修改过的配置"""
    monkeypatch.delenv(engine_config.CACHE_ENV, raising=False)
    engine_config.set_config_file(str(tmp_path / "engine_config.json"))
    yield engine_config.get_engine_config()
    engine_config.set_config_file(str(tmp_path / "engine_config.json"))


THETAS = ["1/2", "1", "2"]
