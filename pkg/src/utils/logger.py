# src/utils/logger.py

import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import List, Optional

from src.config import get_settings

DETAILED_FORMAT = "%(asctime)s - %(processName)s - %(name)s - %(levelname)s - [%(pathname)s:%(lineno)d] - %(message)s"
PLAIN_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
CENSUS_LOG = Path("logs") / "census.log"


def _handlers(environment: str, log_format: str) -> List[logging.Handler]:
    # stdout is reserved for JSON and CSV payloads
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if environment != "development":
        CENSUS_LOG.parent.mkdir(exist_ok=True)
        rotating = RotatingFileHandler(CENSUS_LOG, maxBytes=10 * 1024 * 1024, backupCount=5, encoding="utf-8")
        rotating.setFormatter(logging.Formatter(log_format))
        handlers.append(rotating)
    return handlers


def configure_logging(level: Optional[str] = None) -> None:
    """
    Set up the root logger for a CLI run or the API server.

    The level comes from LOG_LEVEL unless `level` (the --log-level flag)
    overrides it; unknown names fall back to WARNING. Development runs log
    source locations and the worker process name, which tells census
    strata apart when --threads > 1. Other environments also append to
    logs/census.log.
    """
    settings = get_settings()
    level_name = (level or settings.log_level).upper()
    log_format = DETAILED_FORMAT if settings.environment == "development" else PLAIN_FORMAT

    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format=log_format,
        datefmt="%Y-%m-%d %H:%M:%S",
        handlers=_handlers(settings.environment, log_format),
        force=True,
    )
    logging.getLogger(__name__).info(f"Logging at {level_name} for the '{settings.environment}' environment")


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
