import argparse
from typing import List, Optional

from app.commands import build, certify, convert, homology, verify
from app.core.config import settings


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spheretri",
        description="Build and certify triangulations of sphere products",
    )
    parser.add_argument("--out", default=None, help=f"output directory (default: {settings.OUTPUT_DIR})")
    parser.add_argument("--format", choices=("plain", "json"), default=None, help="file format for written complexes")
    parser.add_argument("--jobs", type=int, default=None, help="worker count for certify targets and link surveys")
    parser.add_argument("--log-level", default=None, help=f"root log level (default: {settings.LOG_LEVEL})")

    subparsers = parser.add_subparsers(dest="command", required=True)
    build.register(subparsers)
    certify.register(subparsers)
    convert.register(subparsers)
    homology.register(subparsers)
    verify.register(subparsers)
    return parser


def parse_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Parse and fill unset global flags from the settings"""
    args = build_parser().parse_args(argv)
    args.argv = list(argv) if argv is not None else None
    args.format_flag = args.format
    args.format = args.format or settings.DEFAULT_FORMAT
    args.out = args.out or settings.OUTPUT_DIR
    args.jobs = settings.JOBS if args.jobs is None else args.jobs
    args.log_level = args.log_level or settings.LOG_LEVEL
    return args
