"""Command-line driver: ingest, enrich, classify, measure, report.

Exit codes: 0 success, 2 unreadable or malformed input, 3 unusable
dataset, 4 invalid flags or configuration.
"""
from __future__ import annotations

import argparse
import logging
import os
import shutil
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .enrichment import DEFAULT_FUZZY_THRESHOLD, DatasetError, enrich_profile, load_quartile_table, load_retraction_db
from .ingest import LineParseError, MalformedDocument, infer_format, load_profile
from .model import ConfigError, WeightConfig
from .report import build_snapshot, emit_report_json, emit_report_markdown
from .svg import emit_svg_charts
from .weights import classify_profile

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DATASET = 3
EXIT_CONFIG = 4

FORMATS = ("json", "md", "svg")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class RunConfig:
    input: str
    format: str
    owners: tuple = ()
    retractions: Optional[str] = None
    quartiles: Optional[str] = None
    weights: Optional[str] = None
    year_from: Optional[int] = None
    year_to: Optional[int] = None
    as_of: Optional[int] = None
    fuzzy: float = DEFAULT_FUZZY_THRESHOLD
    exclude_retracted: bool = False
    emit: tuple = FORMATS
    out: str = "."
    timestamp: Optional[str] = None
    weight_overrides: dict = field(default_factory=dict)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError(EXIT_CONFIG, f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="shindex", description="Authorship-weighted citation analysis of a scholar profile.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    a = sub.add_parser("analyze", help="analyse one profile and write reports")
    a.add_argument("--input", required=True, help="saved profile page, JSON-lines or CSV records")
    a.add_argument("--format", choices=("html", "jsonl", "csv"), help="input format (default: from extension)")
    a.add_argument("--owner", action="append", default=[], help="owner name as printed in bylines (repeatable)")
    a.add_argument("--retractions", help="retraction dataset CSV (Title, RetractionNature columns)")
    a.add_argument("--quartiles", help="journal quartile CSV (venue, quartile columns)")
    a.add_argument("--weights", help="JSON file overriding contribution weights")
    a.add_argument(
        "--weight", action="append", default=[], metavar="KEY=VALUE", help="override one weight setting (repeatable)"
    )
    a.add_argument("--from", dest="year_from", type=int, help="first year of the analysis window")
    a.add_argument("--to", dest="year_to", type=int, help="last year of the analysis window")
    a.add_argument("--as-of-year", dest="as_of", type=int, help="last year of the ten-year publication bars")
    a.add_argument("--fuzzy", type=float, default=DEFAULT_FUZZY_THRESHOLD, help="title similarity threshold (1 = exact only)")
    a.add_argument("--exclude-retracted", action="store_true", help="drop retracted publications from all metrics")
    a.add_argument("--emit", action="append", choices=FORMATS, help="output format (repeatable; default all)")
    a.add_argument("--out", default=".", help="output directory")
    a.add_argument("--timestamp", help="timestamp text to embed in the reports")
    return parser


def _parse_override(item: str):
    if "=" not in item:
        raise CliError(EXIT_CONFIG, f"--weight {item!r}: expected KEY=VALUE")
    key, value = (s.strip() for s in item.split("=", 1))
    try:
        number = int(value) if key == "small_team_max" else float(value)
    except ValueError:
        raise CliError(EXIT_CONFIG, f"--weight {key}: {value!r} is not a number") from None
    return key, number


def resolve_config(args: argparse.Namespace):
    """Merge defaults, the weights file and command-line overrides."""
    if args.year_from is not None and args.year_to is not None and args.year_from > args.year_to:
        raise CliError(EXIT_CONFIG, f"--from {args.year_from} is after --to {args.year_to}")
    if not 0.0 <= args.fuzzy <= 1.0:
        raise CliError(EXIT_CONFIG, f"--fuzzy must lie in [0, 1], got {args.fuzzy}")
    try:
        fmt = args.format or infer_format(args.input)
    except ValueError as exc:
        raise CliError(EXIT_CONFIG, f"--input: {exc}") from None

    weights = WeightConfig()
    if args.weights:
        try:
            text = Path(args.weights).read_text(encoding="utf-8")
        except OSError as exc:
            raise CliError(EXIT_CONFIG, f"--weights {args.weights}: {exc.strerror or exc}") from None
        try:
            weights = WeightConfig.from_json(text)
        except ConfigError as exc:
            raise CliError(EXIT_CONFIG, f"--weights {args.weights}: {exc}") from None
    overrides = dict(_parse_override(item) for item in args.weight)
    if overrides:
        try:
            weights = WeightConfig.from_mapping(overrides, weights)
        except ConfigError as exc:
            raise CliError(EXIT_CONFIG, f"--weight: {exc}") from None

    run_config = RunConfig(
        input=args.input,
        format=fmt,
        owners=tuple(args.owner),
        retractions=args.retractions,
        quartiles=args.quartiles,
        weights=args.weights,
        year_from=args.year_from,
        year_to=args.year_to,
        as_of=args.as_of,
        fuzzy=args.fuzzy,
        exclude_retracted=args.exclude_retracted,
        emit=tuple(dict.fromkeys(args.emit)) if args.emit else FORMATS,
        out=args.out,
        timestamp=args.timestamp,
        weight_overrides=overrides,
    )
    return run_config, weights


def _load_input(cfg: RunConfig):
    if not os.path.isfile(cfg.input):
        raise CliError(EXIT_INPUT, f"input file not found: {cfg.input}")
    if cfg.format != "html" and not cfg.owners:
        raise CliError(EXIT_CONFIG, f"--owner is required for {cfg.format} input")
    try:
        return load_profile(cfg.input, cfg.format, cfg.owners)
    except (MalformedDocument, LineParseError, UnicodeDecodeError) as exc:
        raise CliError(EXIT_INPUT, f"{cfg.input}: {exc}") from None
    except ValueError as exc:
        # only a page without a profile name and no --owner lands here
        raise CliError(EXIT_CONFIG, f"{cfg.input}: {exc}; pass --owner") from None
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"{cfg.input}: {exc.strerror or exc}") from None


def _load_dataset(path: str, loader):
    try:
        with open(path, encoding="utf-8-sig", newline="") as fh:
            return loader(fh)
    except OSError as exc:
        raise CliError(EXIT_DATASET, f"{path}: {exc.strerror or exc}") from None
    except (DatasetError, UnicodeDecodeError) as exc:
        raise CliError(EXIT_DATASET, f"{path}: {exc}") from None


def _write_outputs(out_dir: str, files: dict):
    """Write every file or none: stage in a temp dir, then rename into place."""
    os.makedirs(out_dir, exist_ok=True)
    staging = tempfile.mkdtemp(prefix=".shindex-", dir=out_dir)
    try:
        for name, text in files.items():
            with open(os.path.join(staging, name), "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        for name in files:
            os.replace(os.path.join(staging, name), os.path.join(out_dir, name))
    finally:
        shutil.rmtree(staging, ignore_errors=True)


def analyze(cfg: RunConfig, weights: WeightConfig) -> str:
    profile = _load_input(cfg)
    retractions = _load_dataset(cfg.retractions, load_retraction_db) if cfg.retractions else None
    quartiles = _load_dataset(cfg.quartiles, load_quartile_table) if cfg.quartiles else None

    notes = []
    if retractions is None:
        notes.append("no retraction dataset supplied; retraction counts are 0")
    else:
        notes.extend(retractions.warnings)
    if quartiles is None:
        notes.append("no quartile table supplied; all venues are NA")
    else:
        notes.extend(quartiles.warnings)

    profile, notices = enrich_profile(profile, retractions, quartiles, weights, cfg.fuzzy)
    notes.extend(notices)
    profile, unmatched = classify_profile(profile, weights)
    notes.extend(f"owner not found in byline: {title}" for title in unmatched)
    if cfg.exclude_retracted:
        dropped = [p for p in profile.publications if p.retracted]
        profile = profile.with_publications(p for p in profile.publications if not p.retracted)
        if dropped:
            notes.append(f"excluded {len(dropped)} retracted publication(s)")

    snap = build_snapshot(profile, (cfg.year_from, cfg.year_to), weights, cfg.as_of, notes)
    files = {}
    if "json" in cfg.emit:
        files["report.json"] = emit_report_json(snap, cfg.timestamp)
    if "md" in cfg.emit:
        files["report.md"] = emit_report_markdown(snap, cfg.timestamp)
    if "svg" in cfg.emit:
        files.update(emit_svg_charts(snap))
    _write_outputs(cfg.out, files)
    return (
        f"pubs={snap.counters.pubs} sh={snap.sh_index} h={snap.h_index_raw} "
        f"retractions={snap.counters.retractions}"
    )


def run(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        try:
            args = build_parser().parse_args(argv)
        except SystemExit as exc:  # --help
            return int(exc.code or 0)
        cfg, weights = resolve_config(args)
        print(analyze(cfg, weights))
        return EXIT_OK
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


def main():
    logging.basicConfig(level=logging.ERROR, format="%(levelname)s %(name)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
