"""
Helpers for configuring and formatting logging outputs
"""

import logging
import sys
from typing import Optional

LOG_FORMAT = "[%(levelname)s]: %(message)s"
_OWNED = "_hub_stability_handler"


def init_logging(
    file_name: Optional[str] = None,
    level: int = logging.INFO,
    console_level: int = logging.WARNING,
) -> None:
    """
    Configure a basic default logging setup. Logs to stderr, and optionally
    to a file, if a filename is passed. Stdout is left to the report.

    Calling it again replaces the handlers a previous call installed.
    """
    root = logging.getLogger()
    root.setLevel(level)
    for handler in list(root.handlers):
        if getattr(handler, _OWNED, False):
            root.removeHandler(handler)
            handler.close()

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(console_level)
    console_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    setattr(console_handler, _OWNED, True)
    root.addHandler(console_handler)

    if file_name:
        file_handler = logging.FileHandler(filename=file_name, mode="w")
        file_handler.setLevel(level)
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        setattr(file_handler, _OWNED, True)
        root.addHandler(file_handler)
