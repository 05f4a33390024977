from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace
from typing import List, Optional

from catkit.config import AppConfig, load_env
from catkit.core.commands import COMMANDS, Flags, run
from catkit.core.corpus import build_corpus
from catkit.core.errors import CatkitError, ConfigError
from catkit.io.fileformat import FORMAT_VERSION, load
from catkit.io.report import FORMATS, render

LOG_LEVELS = {
    "debug": logging.DEBUG,
    "info": logging.INFO,
    "warning": logging.WARNING,
    "error": logging.ERROR,
}

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_STRUCTURAL = 2

try:
    from rich.console import Console
    from rich.logging import RichHandler
except Exception:
    Console = None
    RichHandler = None


def _split(s: Optional[str]) -> Optional[List[str]]:
    parts = [x.strip() for x in (s or "").split(",") if x.strip()]
    return parts or None


def _setup_logging(level_name: str) -> None:
    level = LOG_LEVELS.get(level_name.lower(), logging.INFO)
    if RichHandler:
        logging.basicConfig(
            level=level,
            format="%(message)s",
            datefmt="[%X]",
            handlers=[RichHandler(rich_tracebacks=True, show_path=False, console=Console(stderr=True))],
        )
    else:
        logging.basicConfig(
            level=level,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
            stream=sys.stderr,
        )


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="catkit",
        description="Finite categories, monads and monoidal structure: law checking, Kleisli/EM resolutions and lifts",
    )
    ap.add_argument("--version", action="version", version=FORMAT_VERSION)
    ap.add_argument("command", choices=COMMANDS, help="What to run")
    ap.add_argument("files", nargs="*", help="catkit-ff/1 input files (default: the built-in corpus)")

    # Selection
    ap.add_argument("--tuple", dest="tuples", action="append", default=[], help="Tuple name (repeatable)")
    ap.add_argument("--monad", dest="monads", action="append", default=[], help="Monad name (repeatable)")
    ap.add_argument("--braiding", default=None, help="Braiding name (lift-braided)")
    ap.add_argument("--oplax", action="store_true", help="Read selected tuples as oplax")

    # Output
    ap.add_argument("--report", default="text", choices=FORMATS, help="Report format")
    ap.add_argument("-o", "--output", default=None, help="Write constructed entities (catkit-ff/1) here")
    ap.add_argument("--profile", default=None, help="Write per-check timing summary (JSON)")
    ap.add_argument("--progress", action="store_true", help="Show a progress bar on stderr")

    # Tuning
    ap.add_argument("--max-objects", type=int, default=None, help="Object cap for isomorphism search")
    ap.add_argument("--workers", type=int, default=None, help="Parallel check workers")
    ap.add_argument("--min-corruptions", type=int, default=None, help="Corrupted variants per tuple (sweep)")
    ap.add_argument("--max-corruptions", type=int, default=0, help="Cap on corrupted variants per tuple (0 = no cap)")

    # Corpus
    ap.add_argument("--groups", default=None, help="Comma list of corpus groups (e.g. chains,tuples)")
    ap.add_argument("--limit", type=int, default=0, help="Entries per corpus group (0 = all)")
    ap.add_argument("--corpus-file", default=None, help="YAML corpus override")

    ap.add_argument("--log-level", default=None, help="Log level: debug, info, warning, error")
    return ap


def _config(args: argparse.Namespace) -> AppConfig:
    cfg = AppConfig.from_env()
    cfg = replace(
        cfg,
        max_objects=args.max_objects if args.max_objects is not None else cfg.max_objects,
        workers=args.workers if args.workers is not None else cfg.workers,
        log_level=(args.log_level or cfg.log_level).lower(),
        corpus_file=args.corpus_file or cfg.corpus_file,
        min_corruptions=args.min_corruptions if args.min_corruptions is not None else cfg.min_corruptions,
    )
    cfg.validate()
    if args.command == "corpus" and not args.output:
        raise ConfigError("corpus needs -o PATH")
    return cfg


def main(argv: Optional[List[str]] = None) -> int:
    logger = logging.getLogger(__name__)
    args = build_parser().parse_intermixed_args(argv)

    try:
        used = load_env(".env")
        cfg = _config(args)
        _setup_logging(cfg.log_level)
        if used:
            logger.debug("loaded .env: %s", used)

        expect_invalid = frozenset()
        if args.files and args.command != "corpus":
            ws = load(args.files)
        else:
            corpus = build_corpus(
                groups=_split(args.groups),
                limit=args.limit or None,
                corpus_file=cfg.corpus_file,
            )
            ws, expect_invalid = corpus.workspace, frozenset(corpus.invalid)

        flags = Flags(
            report=args.report,
            oplax=args.oplax,
            max_objects=cfg.max_objects,
            output=args.output,
            workers=cfg.workers,
            tuples=tuple(args.tuples),
            monads=tuple(args.monads),
            braiding=args.braiding,
            min_corruptions=cfg.min_corruptions,
            max_corruptions=args.max_corruptions or None,
            inputs=tuple(args.files),
            progress=args.progress,
            profile=args.profile,
            expect_invalid=expect_invalid,
        )
        report = run(args.command, ws, flags)
    except CatkitError as e:
        logger.debug("%s raised", type(e).__name__, exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_STRUCTURAL

    sys.stdout.write(render(report, args.report))
    sys.stdout.flush()
    logger.info("%s: exit %s", args.command, report.exit_code)
    return EXIT_OK if report.passed else EXIT_VIOLATIONS
