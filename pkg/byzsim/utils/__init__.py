from .file_utils import save_json, load_json, save_csv, load_csv, format_cell
from .logging import setup_logging, attach_run_log, detach_run_log, log_section
from .path_utils import resolve_document, document_name

__all__ = [
    "save_json",
    "load_json",
    "save_csv",
    "load_csv",
    "format_cell",
    "setup_logging",
    "attach_run_log",
    "detach_run_log",
    "log_section",
    "resolve_document",
    "document_name",
]
