import os
import sys
from pathlib import Path

import pytest
from hypothesis import settings

project_root = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
sys.path.insert(0, os.path.join(project_root, "src"))

# exact arithmetic is slow on large draws; keep property runs reproducible
settings.register_profile("gl_tilt", derandomize=True, max_examples=40, deadline=None)
settings.load_profile("gl_tilt")

CONFIG_DIR = Path(project_root) / "configs"
DATA_DIR = Path(project_root) / "tests" / "data"


@pytest.fixture
def config_dir() -> Path:
    return CONFIG_DIR


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR
