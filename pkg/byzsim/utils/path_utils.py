"""
Config and grid document paths
"""
import logging
from pathlib import Path

logger = logging.getLogger(__name__)

DOCUMENT_SUFFIXES = {".json", ".yaml", ".yml"}


def resolve_document(input_path: str) -> Path:
    """Absolute path of an existing config or grid document.

    Unknown suffixes are accepted and read as JSON.
    """
    path = Path(input_path).resolve()
    if not path.exists():
        raise FileNotFoundError(f"Document does not exist: {input_path}")
    if not path.is_file():
        raise FileNotFoundError(f"Document is not a file: {input_path}")
    if path.suffix.lower() not in DOCUMENT_SUFFIXES:
        logger.warning(f"{path.name}: unrecognised suffix, reading as JSON")
    return path


def document_name(path: Path) -> str:
    """Run name derived from a document: its file stem."""
    return Path(path).stem
