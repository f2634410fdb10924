import json
import os
from pathlib import Path
from typing import Any, Dict

from .logger import logger


class ToolkitSettings:
    """Access to the packaged defaults in ``gl_tilt/presets/config.json``.

    Values are read lazily and cached. Environment variables take precedence:

    - ``GLTILT_MAX_TWIST`` overrides ``max_twist``
    - ``GLTILT_RESOLUTION_FACTOR`` overrides ``resolution_bound_factor``
    - ``GLTILT_SEED`` overrides ``random_seed``
    """

    _config_path = Path(__file__).parent.parent / "presets" / "config.json"
    _cache = None

    _env_overrides = {
        "max_twist": "GLTILT_MAX_TWIST",
        "resolution_bound_factor": "GLTILT_RESOLUTION_FACTOR",
        "random_seed": "GLTILT_SEED",
    }

    @classmethod
    def _load_config(cls) -> Dict[str, Any]:
        if cls._cache is None:
            with cls._config_path.open("r", encoding="utf-8") as f:
                cls._cache = json.load(f)
        return cls._cache

    @classmethod
    def defaults(cls) -> Dict[str, Any]:
        """Return the packaged defaults without environment overrides."""
        return dict(cls._load_config().get("defaults", {}))

    @classmethod
    def get(cls, key: str) -> Any:
        """Return a setting, honouring the matching GLTILT_* variable.

        Args:
            key: Setting name under "defaults"

        Returns:
            The environment value when set and well formed, else the packaged value.

        Raises:
            KeyError: If the key is unknown
        """
        defaults = cls._load_config().get("defaults", {})
        if key not in defaults:
            raise KeyError(f"Unknown setting '{key}'")
        value = defaults[key]

        env_name = cls._env_overrides.get(key)
        raw = os.environ.get(env_name) if env_name else None
        if raw is None or raw == "":
            return value
        try:
            parsed = int(raw)
        except ValueError:
            logger.warning(f"Ignoring {env_name}={raw!r}: not an integer, using {value}")
            return value
        if parsed < 0:
            logger.warning(f"Ignoring {env_name}={raw!r}: negative, using {value}")
            return value
        return parsed

    @classmethod
    def max_twist(cls) -> int:
        return cls.get("max_twist")

    @classmethod
    def resolution_bound_factor(cls) -> int:
        return cls.get("resolution_bound_factor")

    @classmethod
    def random_seed(cls) -> int:
        return cls.get("random_seed")

    @classmethod
    def iso_attempts(cls) -> int:
        return cls.get("iso_attempts")
