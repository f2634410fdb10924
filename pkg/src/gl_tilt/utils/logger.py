import logging
import re
from datetime import datetime
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler
from rich.text import Text


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """Get the toolkit logger with a Rich handler on the root logger

    Args:
        name: Optional module name for the logger

    Returns:
        logging.Logger: Configured logger instance
    """
    # Log to stderr so JSON/DOT on stdout stays clean
    console = Console(highlight=False, stderr=True)

    def time_formatter():
        return Text(datetime.now().strftime("%H:%M:%S"), style="bold")

    rich_handler = RichHandler(
        console=console,
        show_time=False,
        show_level=True,
        show_path=False,
        enable_link_path=False,
        markup=True,
        rich_tracebacks=True,
        tracebacks_extra_lines=2,
        tracebacks_show_locals=False,
    )
    rich_handler.render_message = render_plain_message
    rich_handler.get_time = time_formatter

    # basicConfig is a no-op once the root logger has handlers
    logging.basicConfig(
        level=logging.NOTSET,
        format="%(message)s",
        handlers=[rich_handler],
    )

    return logging.getLogger(name if name else "gl_tilt")


def escape_markup(text: str) -> str:
    """Escape bracketed index sets such as [1, 2] so Rich does not read them as tags."""
    return re.sub(r"\[", r"\\[", text)


def render_plain_message(record: logging.LogRecord, message: str):
    return Text(escape_markup(str(message)))


def set_logger_level(logger: logging.Logger, level: str):
    """Set the level on the given logger, the root logger and every root handler."""
    # getLevelName maps a known name to its number, anything else to a string
    log_level = logging.getLevelName(level.upper())
    if not isinstance(log_level, int):
        log_level = logging.INFO
        logger.warning(f"Invalid log level '{level}', defaulting to INFO")

    logger.setLevel(log_level)
    logging.root.setLevel(log_level)

    for handler in logging.root.handlers:
        try:
            handler.setLevel(log_level)
        except (AttributeError, TypeError):
            pass


# Default logger
logger = get_logger()
