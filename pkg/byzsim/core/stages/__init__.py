"""
Pipeline stages for a single run
"""
from .setup_stage import run_setup_stage
from .train_stage import run_train_stage
from .report_stage import run_report_stage

__all__ = [
    "run_setup_stage",
    "run_train_stage",
    "run_report_stage",
]
