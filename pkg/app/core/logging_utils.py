"""
Logging
=======
Rich-backed logging for the library and the CLI.
"""

import logging
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

ROOT_LOGGER = 'fansheaf'

_configured = False


def configure_logging(level: Optional[str] = None, console: Optional[Console] = None) -> logging.Logger:
    """Attach a RichHandler writing to stderr; later calls only change the level."""
    global _configured
    logger = logging.getLogger(ROOT_LOGGER)
    if not _configured:
        handler = RichHandler(
            console=console or Console(stderr=True),
            show_path=False,
            markup=False,
            rich_tracebacks=False,
        )
        handler.setFormatter(logging.Formatter('%(message)s'))
        logger.addHandler(handler)
        logger.propagate = False
        _configured = True
    logger.setLevel((level or 'WARNING').upper())
    return logger


def get_logger(name: str) -> logging.Logger:
    """Child logger under the package root, e.g. get_logger('fan')."""
    return logging.getLogger(f"{ROOT_LOGGER}.{name}")
