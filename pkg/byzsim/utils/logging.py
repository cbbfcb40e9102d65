"""
Console and per-run file logging
"""
import logging
from pathlib import Path

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(message)s"
DATE_FORMAT = "%H:%M:%S"


def setup_logging(level: int = logging.INFO):
    """Console logging for the CLI; replaces any handlers already installed."""
    logging.basicConfig(level=level, format=LOG_FORMAT, datefmt=DATE_FORMAT, force=True)


def attach_run_log(run_dir: Path) -> logging.Handler:
    """Mirror the ``byzsim`` loggers into ``run_dir/run.log`` until detached."""
    run_dir.mkdir(parents=True, exist_ok=True)
    handler = logging.FileHandler(run_dir / "run.log", mode="w", encoding="utf-8")
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))
    logging.getLogger("byzsim").addHandler(handler)
    return handler


def detach_run_log(handler: logging.Handler):
    logging.getLogger("byzsim").removeHandler(handler)
    handler.close()


def log_section(title: str, width: int = 60):
    """Separator block between pipeline stages and sweep phases."""
    logger = logging.getLogger("byzsim")
    rule = "─" * width
    logger.info("")
    logger.info(rule)
    logger.info(title)
    logger.info(rule)
