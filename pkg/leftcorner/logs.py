# leftcorner/logs.py
import logging
import sys
from typing import Union


def setup_logger(name: str, level: Union[int, str] = logging.INFO) -> logging.Logger:
    """Create a named logger writing to stderr"""
    logger = logging.getLogger(name)

    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        formatter = logging.Formatter(
            "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
        )
        handler.setFormatter(formatter)
        logger.addHandler(handler)
        logger.setLevel(level)
        logger.propagate = False

    return logger


def setup_logging(level: Union[int, str] = logging.WARNING) -> logging.Logger:
    """Configure root logging for the command-line entry point"""
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s - [%(levelname)s] - %(name)s - %(message)s",
    )
    return setup_logger("leftcorner.cli", level)
