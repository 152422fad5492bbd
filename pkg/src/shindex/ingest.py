"""Turn saved Scholar profile pages and record files into a :class:`Profile`.

Three input forms are understood:

* a saved profile page (the publications table expanded before saving),
* newline-delimited JSON records with keys ``title, authors, venue, year,
  citations``,
* CSV with the same five columns and a header row.
"""
from __future__ import annotations

import csv
import io
import json
import logging
import re
from dataclasses import dataclass
from html.parser import HTMLParser
from typing import Iterable, Optional

from .enrichment import normalize_text
from .model import (
    CORRESPONDING_STAR,
    FIRST_CARET,
    YEAR_MAX,
    YEAR_MIN,
    AuthorList,
    AuthorName,
    Profile,
    Publication,
)

log = logging.getLogger(__name__)

RECORD_KEYS = ("title", "authors", "venue", "year", "citations")
_ELLIPSES = ("...", "\u2026")
_BLANK_CITATIONS = ("", "—", "–", "-")


class MalformedDocument(ValueError):
    """The saved page has no publications table."""


class RowParseError(ValueError):
    pass


class LineParseError(ValueError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


@dataclass(frozen=True)
class RawRecord:
    title: str
    author_field: str = ""
    venue_field: str = ""
    year_field: str = ""
    citations_field: str = ""
    owner_hint: Optional[int] = None


def parse_author_string(author_field: str) -> AuthorList:
    parts = [p.strip() for p in author_field.split(",")]
    parts = [p for p in parts if p]
    truncated = False
    if parts and parts[-1] in _ELLIPSES:
        truncated = True
        parts = parts[:-1]
    names = []
    for part in parts:
        markers = set()
        if CORRESPONDING_STAR in part:
            markers.add(CORRESPONDING_STAR)
        if FIRST_CARET in part:
            markers.add(FIRST_CARET)
        display = " ".join(part.replace(CORRESPONDING_STAR, " ").replace(FIRST_CARET, " ").split())
        if display:
            names.append(AuthorName(display, frozenset(markers)))
    return AuthorList(tuple(names), truncated)


def _name_tokens(display: str):
    """Split a printed name into (given-name tokens, surname), normalized.

    Scholar prints given names as run-together initials ("GK Sharma"), so
    short all-caps tokens are expanded one letter per initial.
    """
    raw_tokens = display.replace(".", " ").split()
    tokens = []
    for i, tok in enumerate(raw_tokens):
        is_last = i == len(raw_tokens) - 1
        letters = tok.replace("-", "")
        if not is_last and letters.isalpha() and letters.isupper() and len(letters) <= 3:
            tokens.extend(ch.lower() for ch in letters)
        else:
            tokens.extend(normalize_text(tok).split())
    if not tokens:
        return [], ""
    return tokens[:-1], tokens[-1]


def _initials_compatible(given_a, given_b) -> bool:
    # "g" matches "gaurav"; an initial may sit on either side
    return all(a.startswith(b) or b.startswith(a) for a, b in zip(given_a, given_b))


def match_owner(authors: AuthorList, owner_aliases: Iterable[str]) -> Optional[int]:
    """1-based position of the profile owner in ``authors``, or None."""
    aliases = [a for a in owner_aliases if normalize_text(a)]
    normalized = {normalize_text(a) for a in aliases}
    for pos, name in enumerate(authors, start=1):
        if normalize_text(name.display) in normalized:
            return pos
    alias_tokens = [_name_tokens(a) for a in aliases]
    for pos, name in enumerate(authors, start=1):
        given, surname = _name_tokens(name.display)
        if not surname:
            continue
        for a_given, a_surname in alias_tokens:
            if a_surname == surname and _initials_compatible(given, a_given):
                return pos
    return None


_DIGIT_RUN = re.compile(r"\d")


def extract_venue_name(venue_field: str) -> str:
    field = venue_field.strip()
    m = _DIGIT_RUN.search(field)
    if m is None:
        return field
    prefix = field[: m.start()].rstrip(" \t,.;:-–—([")
    if len(prefix) >= 3:
        return prefix
    return field


def _parse_year(text, where: str, warnings: list) -> Optional[int]:
    if text is None:
        return None
    if isinstance(text, bool):
        raise RowParseError(f"{where}: year {text!r} is not a number")
    if isinstance(text, int):
        year = text
    else:
        s = str(text).strip()
        if not s:
            return None
        if not re.fullmatch(r"-?\d+", s):
            raise RowParseError(f"{where}: year {s!r} is not a number")
        year = int(s)
    if not (YEAR_MIN <= year <= YEAR_MAX):
        warnings.append(f"{where}: year {year} outside [{YEAR_MIN}, {YEAR_MAX}], treated as unknown")
        return None
    return year


def _parse_citations(text, where: str) -> int:
    if text is None:
        return 0
    if isinstance(text, bool):
        raise RowParseError(f"{where}: citations {text!r} is not a number")
    if isinstance(text, int):
        value = text
    elif isinstance(text, float) and text.is_integer():
        value = int(text)
    else:
        s = str(text).strip().replace(",", "")
        if s in _BLANK_CITATIONS:
            return 0
        # Scholar marks merged counts with a trailing asterisk
        s = s.rstrip("*").strip()
        if not re.fullmatch(r"-?\d+", s):
            raise RowParseError(f"{where}: citations {text!r} is not a number")
        value = int(s)
    if value < 0:
        raise RowParseError(f"{where}: citations must be non-negative, got {value}")
    return value


def publication_from_raw(raw: RawRecord, where: str, warnings: list) -> Publication:
    title = " ".join(raw.title.split())
    if not title:
        raise RowParseError(f"{where}: empty title")
    venue_raw = " ".join(raw.venue_field.split())
    return Publication(
        title=title,
        authors=parse_author_string(raw.author_field),
        venue_raw=venue_raw,
        venue_name=extract_venue_name(venue_raw),
        year=_parse_year(raw.year_field, where, warnings),
        citations_raw=_parse_citations(raw.citations_field, where),
        owner_hint=raw.owner_hint,
    )


# -- saved profile pages ------------------------------------------------------


def _classes(attrs) -> set:
    for k, v in attrs:
        if k == "class" and v:
            return set(v.split())
    return set()


def _attr(attrs, name):
    for k, v in attrs:
        if k == name:
            return v
    return None


class _ScholarPageParser(HTMLParser):
    """Event-driven reader for the profile markup.

    Rows are ``tr.gsc_a_tr`` inside ``table#gsc_a_t``; the title cell holds
    the title link and two ``div.gs_gray`` blocks (byline, then venue).
    The ``table#gsc_rsb_st`` sidebar carries Scholar's own totals.
    """

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.found_table = False
        self.rows = []
        self.stats = []
        self.profile_name = None
        self._row = None
        self._capture = None
        self._buf = []
        self._gray_index = 0
        self._tag_stack = []
        self._in_stats = False
        self._stats_row = None

    # capture helpers
    def _start_capture(self, key, tag):
        self._capture = (key, tag, len(self._tag_stack))
        self._buf = []

    def handle_starttag(self, tag, attrs):
        cls = _classes(attrs)
        elem_id = _attr(attrs, "id")
        if tag in ("br", "img", "meta", "link", "input", "hr"):
            return
        self._tag_stack.append(tag)
        if tag == "table" and elem_id == "gsc_a_t":
            self.found_table = True
        elif tag == "table" and elem_id == "gsc_rsb_st":
            self._in_stats = True
        elif elem_id == "gsc_prf_in":
            self._start_capture("profile_name", tag)
        elif tag == "tr" and "gsc_a_tr" in cls:
            self._row = {"title": "", "authors": "", "venue": "", "citations": "", "year": "", "bold": []}
            self._gray_index = 0
        elif self._row is not None and self._capture is None:
            if tag == "a" and "gsc_a_at" in cls:
                self._start_capture("title", tag)
            elif tag == "div" and "gs_gray" in cls:
                key = "authors" if self._gray_index == 0 else "venue" if self._gray_index == 1 else None
                self._gray_index += 1
                if key:
                    self._start_capture(key, tag)
            elif tag == "a" and "gsc_a_ac" in cls:
                self._start_capture("citations", tag)
            elif tag == "span" and "gsc_a_h" in cls:
                self._start_capture("year", tag)
        elif self._in_stats:
            if tag == "tr":
                self._stats_row = []
            elif tag == "td" and self._stats_row is not None and self._capture is None:
                self._start_capture("stat", tag)
        if self._capture is not None and self._capture[0] == "authors" and tag == "b":
            # owner highlight: remember the comma-index where bold text starts
            self._buf.append("\x00")

    def handle_endtag(self, tag):
        if tag in ("br", "img", "meta", "link", "input", "hr"):
            return
        # tolerate unbalanced markup: pop up to the matching tag
        if tag in self._tag_stack:
            while self._tag_stack:
                top = self._tag_stack.pop()
                if self._capture is not None and len(self._tag_stack) == self._capture[2] - 1:
                    self._finish_capture()
                if top == tag:
                    break
        if tag == "tr" and self._row is not None:
            self.rows.append(self._row)
            self._row = None
        elif tag == "tr" and self._in_stats and self._stats_row is not None:
            if self._stats_row:
                self.stats.append(self._stats_row)
            self._stats_row = None
        elif tag == "table" and self._in_stats:
            self._in_stats = False

    def _finish_capture(self):
        key, _, _ = self._capture
        text = "".join(self._buf)
        self._capture = None
        self._buf = []
        if key == "profile_name":
            self.profile_name = " ".join(text.split()) or None
        elif key == "stat":
            if self._stats_row is not None:
                self._stats_row.append(" ".join(text.split()))
        elif self._row is not None:
            if key == "authors" and "\x00" in text:
                before = text.split("\x00", 1)[0]
                self._row["bold"].append(len([p for p in before.split(",") if p.strip()]) + 1)
                text = text.replace("\x00", "")
            self._row[key] = text

    def handle_data(self, data):
        if self._capture is not None:
            self._buf.append(data)


def _stat_value(stats, label: str) -> Optional[int]:
    for row in stats:
        if row and row[0].strip().lower() == label and len(row) > 1:
            s = row[1].replace(",", "").strip()
            if s.isdigit():
                return int(s)
    return None


def parse_profile_html(document: str, owner_aliases: Optional[Iterable[str]] = None) -> Profile:
    """Parse a saved profile page.

    ``owner_aliases`` defaults to the profile's display name when the page
    carries one. Rows that cannot be parsed are dropped and reported in
    ``Profile.warnings``.
    """
    parser = _ScholarPageParser()
    parser.feed(document)
    parser.close()
    if not parser.found_table:
        raise MalformedDocument("no publications table (table#gsc_a_t) in document")
    aliases = tuple(a for a in (owner_aliases or ()) if a.strip())
    if not aliases and parser.profile_name:
        aliases = (parser.profile_name,)
    if not aliases:
        raise ValueError("no owner alias given and the page has no profile name")

    warnings = []
    pubs = []
    for n, row in enumerate(parser.rows, start=1):
        where = f"row {n}"
        hint = row["bold"][0] if len(row["bold"]) == 1 else None
        raw = RawRecord(row["title"], row["authors"], row["venue"], row["year"], row["citations"], hint)
        try:
            pubs.append(publication_from_raw(raw, where, warnings))
        except RowParseError as exc:
            warnings.append(str(exc))
    for w in warnings:
        log.warning(w)
    return Profile(
        owner_aliases=aliases,
        publications=tuple(pubs),
        google_reported_total_citations=_stat_value(parser.stats, "citations"),
        google_reported_h=_stat_value(parser.stats, "h-index"),
        warnings=tuple(warnings),
    )


# -- record files ---------------------------------------------------------------


def _authors_field(value, where: str) -> str:
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    if isinstance(value, list) and all(isinstance(v, str) for v in value):
        return ", ".join(value)
    raise RowParseError(f"{where}: authors must be a string or a list of strings")


def parse_records_json(stream, owner_aliases: Iterable[str] = ("owner",)) -> Profile:
    """Parse newline-delimited JSON records. Any malformed line is fatal."""
    text = stream if isinstance(stream, str) else stream.read()
    warnings = []
    pubs = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise LineParseError(lineno, f"invalid JSON ({exc.msg})") from exc
        if not isinstance(obj, dict):
            raise LineParseError(lineno, "record is not a JSON object")
        where = f"line {lineno}"
        try:
            if not isinstance(obj.get("title"), str):
                raise RowParseError(f"{where}: missing or non-string title")
            raw = RawRecord(
                title=obj["title"],
                author_field=_authors_field(obj.get("authors"), where),
                venue_field=obj.get("venue") or "",
                year_field=obj.get("year"),
                citations_field=obj.get("citations"),
            )
            pubs.append(publication_from_raw(raw, where, warnings))
        except RowParseError as exc:
            raise LineParseError(lineno, str(exc).split(": ", 1)[-1]) from exc
    return Profile(tuple(owner_aliases), tuple(pubs), warnings=tuple(warnings))


def parse_records_csv(stream, owner_aliases: Iterable[str] = ("owner",)) -> Profile:
    text = stream if isinstance(stream, str) else stream.read()
    reader = csv.DictReader(io.StringIO(text))
    header = [h.strip().lower() for h in (reader.fieldnames or [])]
    missing = [k for k in RECORD_KEYS if k not in header]
    if missing:
        raise LineParseError(1, f"CSV header lacks column(s): {', '.join(missing)}")
    col = {h.strip().lower(): h for h in reader.fieldnames}
    warnings = []
    pubs = []
    try:
        for lineno, row in enumerate(reader, start=2):
            where = f"line {lineno}"
            raw = RawRecord(*(row.get(col[k]) or "" for k in RECORD_KEYS))
            try:
                pubs.append(publication_from_raw(raw, where, warnings))
            except RowParseError as exc:
                raise LineParseError(lineno, str(exc).split(": ", 1)[-1]) from exc
    except csv.Error as exc:
        raise LineParseError(reader.line_num, f"invalid CSV ({exc})") from exc
    return Profile(tuple(owner_aliases), tuple(pubs), warnings=tuple(warnings))


def to_records_json(profile: Profile) -> str:
    """Serialize the ingested fields back to the canonical JSON-lines form."""
    lines = []
    for p in profile.publications:
        rec = {
            "title": p.title,
            "authors": p.authors.byline(),
            "venue": p.venue_raw,
            "year": p.year,
            "citations": p.citations_raw,
        }
        lines.append(json.dumps(rec, ensure_ascii=False))
    return "\n".join(lines) + ("\n" if lines else "")


def load_profile(path, fmt: Optional[str] = None, owner_aliases: Iterable[str] = ()) -> Profile:
    """Read ``path`` in the given or extension-inferred format."""
    path = str(path)
    fmt = fmt or infer_format(path)
    with open(path, encoding="utf-8-sig") as fh:
        text = fh.read()
    aliases = tuple(owner_aliases)
    if fmt == "html":
        return parse_profile_html(text, aliases)
    if not aliases:
        raise ValueError(f"{fmt} input needs at least one owner alias")
    if fmt == "jsonl":
        return parse_records_json(text, aliases)
    if fmt == "csv":
        return parse_records_csv(text, aliases)
    raise ValueError(f"unknown input format {fmt!r}")


def infer_format(path: str) -> str:
    lower = path.lower()
    if lower.endswith((".html", ".htm")):
        return "html"
    if lower.endswith((".jsonl", ".ndjson", ".json")):
        return "jsonl"
    if lower.endswith(".csv"):
        return "csv"
    raise ValueError(f"cannot infer input format from {path!r}; pass --format")
