"""
byzsim - Main Entry Point
"""

import logging
import argparse
from pathlib import Path

from byzsim.utils import document_name, resolve_document, setup_logging
from byzsim.errors import ByzsimError
from byzsim.core import (
    DEFAULT_OUTPUT_DIR,
    get_run_dir,
    parse_config,
    parse_grid,
    run_pipeline,
    run_selftest,
    run_sweep,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BAD_INPUT = 2


def _resolve_out(args, config_path: Path, cfg_out: str = None) -> Path:
    if args.out:
        return Path(args.out)
    if cfg_out:
        return Path(cfg_out)
    return get_run_dir(args.output_dir, document_name(config_path))


def cmd_run(args) -> int:
    config_path = resolve_document(args.config)
    cfg = parse_config(config_path)
    run_dir = _resolve_out(args, config_path, cfg.out_path)
    logger.info(f"Config: {config_path.name}")
    ok = run_pipeline(run_dir, cfg, workers=args.workers, progress=not args.no_progress)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_sweep(args) -> int:
    config_path = resolve_document(args.config)
    grid_path = resolve_document(args.grid)
    cfg = parse_config(config_path)
    grid = parse_grid(grid_path)
    if args.out:
        sweep_dir = Path(args.out)
    else:
        sweep_dir = Path(args.output_dir) / f"{document_name(config_path)}_{document_name(grid_path)}"
    logger.info(f"Config: {config_path.name}, grid: {grid_path.name}")
    result = run_sweep(cfg, grid, sweep_dir, workers=args.workers or 1, progress=not args.no_progress)
    if result.failed:
        logger.error(f"{len(result.failed)} of {len(result.results)} cells failed")
        return EXIT_FAILED
    return EXIT_OK


def cmd_selftest(args) -> int:
    return EXIT_OK if run_selftest() == 0 else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="byzsim",
        description="byzsim - Byzantine attacks and robust aggregation in federated learning",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--debug", action="store_true",
                        help="Enable debug logging")
    parser.add_argument("--output-dir", default=DEFAULT_OUTPUT_DIR,
                        help=f"Output directory when --out is not given (default: {DEFAULT_OUTPUT_DIR})")
    parser.add_argument("--no-progress", action="store_true",
                        help="Hide progress bars")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run one experiment")
    run.add_argument("--config", required=True, help="Config document (JSON or YAML)")
    run.add_argument("--out", help="Run directory (default: <output-dir>/<config name>)")
    run.add_argument("--workers", type=int, default=None,
                     help="Client worker threads (default: config, then BYZSIM_WORKERS)")
    run.set_defaults(func=cmd_run)

    sweep = sub.add_parser("sweep", help="Run a grid of experiments")
    sweep.add_argument("--config", required=True, help="Base config document")
    sweep.add_argument("--grid", required=True, help="Grid document: key -> list of values")
    sweep.add_argument("--out", help="Sweep directory (default: <output-dir>/<config>_<grid>)")
    sweep.add_argument("--workers", type=int, default=None,
                       help="Cells run in parallel (default: 1)")
    sweep.set_defaults(func=cmd_sweep)

    selftest = sub.add_parser("selftest", help="Run the oracle checks")
    selftest.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    """Main entry point for the byzsim CLI."""
    parser = build_parser()
    args = parser.parse_args(argv)

    setup_logging(level=logging.DEBUG if args.debug else logging.INFO)

    try:
        return args.func(args)
    except (ByzsimError, FileNotFoundError) as e:
        logger.error(f"Error: {e}")
        return EXIT_BAD_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
