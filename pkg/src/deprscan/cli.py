"""deprscan command line interface.

Subcommands: extract, scan, eval, serve. Machine-readable output goes to
stdout; logging goes to stderr, level controlled by DEPRSCAN_LOG.
"""

from __future__ import annotations

import argparse
import functools
import logging
import os
import sys
from pathlib import Path

from . import __version__
from .clientscan import scan_file
from .depdb import DeprecationDb, FormatError, SchemaError, load_db, merge, save_db
from .extractor import (
    DEFAULT_EXCLUDE_DIRS,
    ExtractorConfig,
    SkippedFile,
    build_alias_table,
    count_module_files,
    extract_library,
)
from .formats import OutputFormat, render
from .sourcetree import ParseError, read_source

log = logging.getLogger("deprscan")

EXIT_OK = 0
EXIT_HITS = 1
EXIT_ERROR = 2

_LOG_LEVELS = {"error": logging.ERROR, "warn": logging.WARNING,
               "info": logging.INFO, "debug": logging.DEBUG}


def _setup_logging() -> None:
    level = _LOG_LEVELS.get(os.environ.get("DEPRSCAN_LOG", "warn").lower(), logging.WARNING)
    logging.basicConfig(stream=sys.stderr, level=level,
                        format="%(levelname)s %(name)s: %(message)s")


def _config_from_args(args) -> ExtractorConfig:
    kwargs = {}
    if getattr(args, "decorator_pattern", None):
        kwargs["decorator_pattern"] = args.decorator_pattern
    if getattr(args, "include_pending", False):
        kwargs["include_pending"] = True
    if getattr(args, "exclude_dirs", None):
        kwargs["exclude_dirs"] = tuple(args.exclude_dirs.split(","))
    return ExtractorConfig(**kwargs)


def cmd_extract(args) -> int:
    root = Path(args.library_root)
    if not root.is_dir():
        print(f"error: library root not found: {root}", file=sys.stderr)
        return EXIT_ERROR
    library = args.library or root.name
    cfg = _config_from_args(args)

    skipped: list[SkippedFile] = []
    try:
        records = extract_library(root, library, args.version, cfg, skipped=skipped)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    aliases = build_alias_table(root, records)
    version = records[0].library_version if records else args.version
    db = DeprecationDb.from_records(records, library, version, aliases)
    try:
        save_db(db, args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_ERROR

    if args.skipped_report:
        with open(args.skipped_report, "w", encoding="utf-8") as fh:
            for s in skipped:
                fh.write(f"{s.path}\t{s.error}\n")

    n_files = count_module_files(root, cfg)
    print(f"extracted {len(records)} records from {n_files} files ({len(skipped)} skipped)")
    return EXIT_OK


def _load_dbs(paths) -> DeprecationDb:
    dbs = [load_db(p) for p in paths]
    return functools.reduce(merge, dbs)


def cmd_scan(args) -> int:
    try:
        db = _load_dbs(args.db)
    except (OSError, SchemaError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    target = Path(args.project_path)
    if target.is_file():
        files = [target]
    elif target.is_dir():
        files = sorted(target.rglob("*.py"))
    else:
        print(f"error: project path not found: {target}", file=sys.stderr)
        return EXIT_ERROR

    diagnostics = []
    for path in files:
        try:
            diagnostics.extend(scan_file(str(path), read_source(path), db))
        except ParseError as exc:
            log.warning("skipping unparseable file: %s", exc)
        except OSError as exc:
            print(f"error: cannot read {path}: {exc}", file=sys.stderr)
            return EXIT_ERROR

    sys.stdout.write(render(diagnostics, OutputFormat(args.format)))
    if diagnostics and args.fail_on_hit:
        return EXIT_HITS
    return EXIT_OK


def cmd_eval(args) -> int:
    from .evalharness import load_manifest, plot_rows, render_table, run_eval

    try:
        entries = load_manifest(args.libraries)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR

    rows = run_eval(entries, db_dir=args.db_dir)
    sys.stdout.write(render_table(rows))
    if args.plot:
        plot_rows(rows, args.plot)
        log.info("wrote comparison chart to %s", args.plot)
    return EXIT_OK


def cmd_serve(args) -> int:
    from .lspserver import LspServer

    try:
        db = _load_dbs(args.db)
    except (OSError, SchemaError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return LspServer(db).serve_forever()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deprscan",
                                     description="Deprecated API detection for Python libraries")
    parser.add_argument("--version", action="version", version=f"deprscan {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="mine deprecated APIs from a library source tree")
    p.add_argument("library_root")
    p.add_argument("--library", help="library name (default: root directory name)")
    p.add_argument("--version", dest="version", help="library version stamp")
    p.add_argument("--out", required=True, help="output database file")
    p.add_argument("--include-pending", action="store_true",
                   help="also match PendingDeprecationWarning")
    p.add_argument("--decorator-pattern", help="regex over the decorator's terminal name segment")
    p.add_argument("--exclude-dirs", help="comma-separated directory names to skip "
                   f"(default: {','.join(DEFAULT_EXCLUDE_DIRS)})")
    p.add_argument("--skipped-report", help="write unparseable-file report here")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("scan", help="flag deprecated API usages in a client project")
    p.add_argument("project_path")
    p.add_argument("--db", action="append", required=True, help="deprecation database (repeatable)")
    p.add_argument("--format", choices=[f.value for f in OutputFormat], default="text")
    p.add_argument("--fail-on-hit", action="store_true",
                   help="exit 1 when any diagnostic is produced")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("eval", help="compare extraction counts against published results")
    p.add_argument("--libraries", required=True, help="JSON manifest of libraries")
    p.add_argument("--db-dir", help="write per-library databases here")
    p.add_argument("--plot", help="write a detected-vs-published bar chart (PNG/SVG/PDF)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("serve", help="run the editor diagnostic service over stdio")
    p.add_argument("--db", action="append", required=True, help="deprecation database (repeatable)")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    _setup_logging()
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
