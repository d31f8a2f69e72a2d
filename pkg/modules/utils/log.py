import logging
import os
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler


def setup_logging(level: Optional[str] = None) -> None:
    """Root logger on stderr through rich; stdout carries only command output."""
    level = (level or os.getenv("LOG_LEVEL", "INFO")).upper()
    handler = RichHandler(console=Console(stderr=True), show_path=False)
    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[handler],
        force=True,
    )
