from .logger import get_logger, logger, set_logger_level
from .settings import ToolkitSettings

__all__ = ["get_logger", "logger", "set_logger_level", "ToolkitSettings"]
