import logging

import pytest

from gl_tilt.utils.logger import escape_markup, logger, set_logger_level
from gl_tilt.utils.settings import ToolkitSettings


class TestToolkitSettings:
    """Test packaged defaults and their environment overrides."""

    def test_packaged_defaults(self, monkeypatch):
        monkeypatch.delenv("GLTILT_MAX_TWIST", raising=False)
        assert ToolkitSettings.max_twist() == ToolkitSettings.defaults()["max_twist"]

    def test_environment_override(self, monkeypatch):
        monkeypatch.setenv("GLTILT_MAX_TWIST", "5")
        assert ToolkitSettings.max_twist() == 5

    @pytest.mark.parametrize("raw", ["many", "-3"])
    def test_bad_override_is_ignored(self, monkeypatch, raw):
        monkeypatch.setenv("GLTILT_SEED", raw)
        assert ToolkitSettings.random_seed() == ToolkitSettings.defaults()["random_seed"]

    def test_unknown_key(self):
        with pytest.raises(KeyError):
            ToolkitSettings.get("no_such_setting")


class TestLogger:
    def test_set_level(self):
        set_logger_level(logger, "debug")
        assert logger.level == logging.DEBUG
        set_logger_level(logger, "warning")
        assert logger.level == logging.WARNING

    def test_index_sets_are_escaped(self):
        assert escape_markup("T_[1, 2]") == "T_\\[1, 2]"
