"""
    Utilities for file handling and checking
"""

from codecs import BOM_UTF8
from pathlib import Path
from typing import List

JSON_OPENING = b"{"


def looks_like_json(data: bytes) -> bool:
    """magic check for JSON documents: first non-blank byte is an opening brace

    A leading UTF-8 byte order mark is skipped.
    """
    return data.removeprefix(BOM_UTF8).lstrip()[:1] == JSON_OPENING


def write_text_files(directory: Path, contents: dict[str, str]) -> List[Path]:
    """Write each named text into directory, creating it if needed

    Returns:
        List[Path]: the written paths, in name order
    """
    directory.mkdir(parents=True, exist_ok=True)
    written: List[Path] = []
    for name in sorted(contents):
        path = directory / name
        path.write_text(contents[name], encoding="utf-8")
        written.append(path)
    return written
