"""
Status records for runs (state.json) and sweeps (sweep_state.json)

These files report progress only; nothing is resumed from them.
"""
from datetime import datetime
from pathlib import Path
from typing import Dict, List, Optional

from .. import __version__
from ..utils import load_json, save_json

STAGES = ["setup", "train", "report"]


def _now() -> str:
    return datetime.now().isoformat()


def get_state_path(run_dir: Path) -> Path:
    return run_dir / "state.json"


def get_sweep_state_path(sweep_dir: Path) -> Path:
    return sweep_dir / "sweep_state.json"


def create_state(config: Dict) -> Dict:
    """Fresh run record: the config document and every stage pending."""
    return {
        "byzsim_version": __version__,
        "config": config,
        "created_at": _now(),
        "stages": {stage: "pending" for stage in STAGES},
    }


def save_state(run_dir: Path, state: Dict):
    state["updated_at"] = _now()
    save_json(get_state_path(run_dir), state)


def load_state(run_dir: Path) -> Optional[Dict]:
    """The run record, or None when the run never started."""
    return load_json(get_state_path(run_dir))


def create_sweep_state(cell_names: List[str]) -> Dict:
    return {
        "byzsim_version": __version__,
        "created_at": _now(),
        "cells": {name: {"status": "pending"} for name in cell_names},
    }


def save_sweep_state(sweep_dir: Path, state: Dict):
    state["updated_at"] = _now()
    save_json(get_sweep_state_path(sweep_dir), state)


def load_sweep_state(sweep_dir: Path) -> Optional[Dict]:
    return load_json(get_sweep_state_path(sweep_dir))
