"""Retraction, quartile and preprint flags for publications.

Titles are joined against a retraction dataset (Retraction Watch CSV
layout by default) first by normalized equality and then by bounded
Levenshtein similarity. Venues are joined against a ``venue,quartile``
table by normalized equality only.
"""
from __future__ import annotations

import bisect
import csv
import io
import logging
import math
import unicodedata
from dataclasses import dataclass, field, replace
from typing import Optional, TextIO, Union

from .model import Profile, Publication, Quartile, WeightConfig

log = logging.getLogger(__name__)

DEFAULT_FUZZY_THRESHOLD = 0.95
# Candidate records may differ in normalized length by at most this fraction.
LENGTH_TOLERANCE = 0.10

DEFAULT_RETRACTION_COLUMNS = {"title": "Title", "nature": "RetractionNature"}


class DatasetError(Exception):
    """A dataset file cannot be used at all (e.g. a required column is missing)."""


def normalize_text(s: str) -> str:
    decomposed = unicodedata.normalize("NFKD", s)
    stripped = "".join(ch for ch in decomposed if not unicodedata.combining(ch))
    out = []
    pending_space = False
    for ch in stripped.lower():
        if ch.isalnum():
            if pending_space and out:
                out.append(" ")
            pending_space = False
            out.append(ch)
        else:
            pending_space = True
    return "".join(out)


def levenshtein_distance(a: str, b: str, max_dist: Optional[int] = None) -> int:
    """Unit-cost edit distance.

    With ``max_dist`` set, any distance above it is reported as
    ``max_dist + 1``; only a diagonal band of the table is filled.
    """
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    la, lb = len(a), len(b)
    if max_dist is not None and la - lb > max_dist:
        return max_dist + 1
    if lb == 0:
        return la
    if max_dist is None:
        prev = list(range(lb + 1))
        for i in range(1, la + 1):
            ca = a[i - 1]
            cur = [i] + [0] * lb
            for j in range(1, lb + 1):
                cost = 0 if ca == b[j - 1] else 1
                cur[j] = min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost)
            prev = cur
        return prev[lb]

    big = max_dist + 1
    prev = [j if j <= max_dist else big for j in range(lb + 1)]
    for i in range(1, la + 1):
        ca = a[i - 1]
        lo = max(1, i - max_dist)
        hi = min(lb, i + max_dist)
        cur = [big] * (lb + 1)
        cur[0] = i if i <= max_dist else big
        row_min = cur[0]
        for j in range(lo, hi + 1):
            cost = 0 if ca == b[j - 1] else 1
            v = prev[j - 1] + cost
            if prev[j] + 1 < v:
                v = prev[j] + 1
            if cur[j - 1] + 1 < v:
                v = cur[j - 1] + 1
            if v > big:
                v = big
            cur[j] = v
            if v < row_min:
                row_min = v
        if row_min > max_dist:
            return big
        prev = cur
    return min(prev[lb], big)


def levenshtein_similarity(a: str, b: str) -> float:
    longest = max(len(a), len(b))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein_distance(a, b) / longest


def _max_distance(threshold: float, longest: int) -> int:
    # Largest edit distance d with 1 - d/longest >= threshold.
    return int(math.floor((1.0 - threshold) * longest + 1e-9))


def _within_length_tolerance(la: int, lb: int) -> bool:
    return abs(la - lb) <= LENGTH_TOLERANCE * max(la, lb) + 1e-9


@dataclass(frozen=True)
class RetractionRecord:
    title_normalized: str
    nature: str
    original_title: str

    @property
    def is_retraction(self) -> bool:
        return self.nature.strip().lower() == "retraction"


class _PieceIndex:
    """Lossless candidate filter for one similarity threshold.

    Each record is cut into ``k + 1`` pieces, ``k`` being the largest edit
    distance any admissible query may have from it. A query within ``k``
    edits must contain one of the pieces verbatim, shifted by at most ``k``.
    """

    def __init__(self, records, threshold):
        self.pieces = {}
        self.k = []
        self.lengths_by_size = {}
        for idx, rec in enumerate(records):
            text = rec.title_normalized
            size = len(text)
            # the length tolerance and the threshold both cap the longer side
            longest = size / max(threshold, 1.0 - LENGTH_TOLERANCE)
            k = int(math.floor((1.0 - threshold) * longest + 1e-9))
            k = max(min(k, size - 1), 0)
            self.k.append(k)
            cuts = [round(i * size / (k + 1)) for i in range(k + 2)]
            piece_sizes = self.lengths_by_size.setdefault(size, set())
            for start, stop in zip(cuts, cuts[1:]):
                if stop <= start:
                    continue
                self.pieces.setdefault(text[start:stop], []).append((idx, start))
                piece_sizes.add(stop - start)

    def candidates(self, query: str, sizes_sorted):
        lq = len(query)
        lo = bisect.bisect_left(sizes_sorted, math.ceil((1.0 - LENGTH_TOLERANCE) * lq - 1e-9))
        hi = bisect.bisect_right(sizes_sorted, math.floor(lq / (1.0 - LENGTH_TOLERANCE) + 1e-9))
        widths = set()
        for size in sizes_sorted[lo:hi]:
            widths |= self.lengths_by_size.get(size, set())
        found = set()
        pieces = self.pieces
        k = self.k
        for w in widths:
            for i in range(lq - w + 1):
                hits = pieces.get(query[i:i + w])
                if hits:
                    for idx, offset in hits:
                        if abs(offset - i) <= k[idx]:
                            found.add(idx)
        return found


class RetractionIndex:
    """Exact lookup plus a fuzzy scan over the same records."""

    def __init__(self, records=(), warnings=()):
        self.all_records = list(records)
        self.exact = {}
        for rec in self.all_records:
            self.exact[rec.title_normalized] = rec
        self.warnings = tuple(warnings)
        self._sizes = sorted({len(r.title_normalized) for r in self.all_records})
        self._by_size = {}
        for idx, rec in enumerate(self.all_records):
            self._by_size.setdefault(len(rec.title_normalized), []).append(idx)
        self._piece_indices = {}

    def __len__(self):
        return len(self.all_records)

    def _candidates(self, query: str, threshold: float):
        if threshold >= 1.0 - LENGTH_TOLERANCE:
            pidx = self._piece_indices.get(threshold)
            if pidx is None:
                pidx = self._piece_indices[threshold] = _PieceIndex(self.all_records, threshold)
            return sorted(pidx.candidates(query, self._sizes))
        # low thresholds make pieces too short to be selective; scan the length window
        lq = len(query)
        lo = bisect.bisect_left(self._sizes, math.ceil((1.0 - LENGTH_TOLERANCE) * lq - 1e-9))
        hi = bisect.bisect_right(self._sizes, math.floor(lq / (1.0 - LENGTH_TOLERANCE) + 1e-9))
        out = []
        for size in self._sizes[lo:hi]:
            out.extend(self._by_size[size])
        return sorted(out)

    def best_fuzzy(self, query: str, threshold: float) -> Optional[RetractionRecord]:
        best = None
        best_sim = -1.0
        lq = len(query)
        for idx in self._candidates(query, threshold):
            rec = self.all_records[idx]
            lr = len(rec.title_normalized)
            if not _within_length_tolerance(lq, lr):
                continue
            longest = max(lq, lr)
            limit = _max_distance(threshold, longest)
            dist = levenshtein_distance(query, rec.title_normalized, max_dist=limit)
            if dist > limit:
                continue
            sim = 1.0 - dist / longest
            if sim >= threshold and sim > best_sim:
                best, best_sim = rec, sim
        return best


def _open_text(csv_source: Union[str, TextIO]) -> TextIO:
    if isinstance(csv_source, str):
        return io.StringIO(csv_source)
    return csv_source


def _header_lookup(fieldnames, wanted: str) -> Optional[str]:
    if not fieldnames:
        return None
    for name in fieldnames:
        if name is not None and name.strip() == wanted:
            return name
    for name in fieldnames:
        if name is not None and name.strip().lower() == wanted.lower():
            return name
    return None


def load_retraction_db(csv_source, column_map: Optional[dict] = None) -> RetractionIndex:
    """Build a :class:`RetractionIndex` from CSV text or an open text stream.

    ``column_map`` may rename the ``title`` and ``nature`` columns. Rows
    with an empty title are skipped; when the nature column is missing
    every row is taken to be a retraction. Duplicate normalized titles keep
    the last row.
    """
    cols = dict(DEFAULT_RETRACTION_COLUMNS)
    cols.update(column_map or {})
    reader = csv.DictReader(_open_text(csv_source))
    try:
        fieldnames = reader.fieldnames
    except csv.Error as exc:
        raise DatasetError(f"retraction dataset is not valid CSV: {exc}") from exc
    title_col = _header_lookup(fieldnames, cols["title"])
    if title_col is None:
        raise DatasetError(f"retraction dataset has no {cols['title']!r} column")
    nature_col = _header_lookup(fieldnames, cols["nature"])

    records = {}
    warnings = []
    skipped = 0
    try:
        for lineno, row in enumerate(reader, start=2):
            title = (row.get(title_col) or "").strip()
            norm = normalize_text(title)
            if not norm:
                skipped += 1
                continue
            nature = (row.get(nature_col) or "").strip() if nature_col else ""
            if norm in records:
                warnings.append(f"retraction dataset line {lineno}: duplicate title {title!r}, keeping last row")
                del records[norm]
            records[norm] = RetractionRecord(norm, nature or "Retraction", title)
    except csv.Error as exc:
        raise DatasetError(f"retraction dataset is not valid CSV: {exc}") from exc
    if skipped:
        warnings.append(f"retraction dataset: skipped {skipped} row(s) without a title")
    for w in warnings:
        log.warning(w)
    return RetractionIndex(records.values(), warnings)


def match_retraction(
    title: str, index: RetractionIndex, fuzzy_threshold: float = DEFAULT_FUZZY_THRESHOLD
) -> Optional[RetractionRecord]:
    norm = normalize_text(title)
    if not norm or not index.all_records:
        return None
    hit = index.exact.get(norm)
    if hit is not None:
        return hit
    if fuzzy_threshold >= 1.0:
        return None
    return index.best_fuzzy(norm, fuzzy_threshold)


@dataclass(frozen=True)
class QuartileIndex:
    table: dict = field(default_factory=dict)
    warnings: tuple = ()

    def __len__(self):
        return len(self.table)


def load_quartile_table(csv_source) -> QuartileIndex:
    reader = csv.DictReader(_open_text(csv_source))
    try:
        fieldnames = reader.fieldnames
    except csv.Error as exc:
        raise DatasetError(f"quartile table is not valid CSV: {exc}") from exc
    venue_col = _header_lookup(fieldnames, "venue")
    quart_col = _header_lookup(fieldnames, "quartile")
    missing = [name for name, col in (("venue", venue_col), ("quartile", quart_col)) if col is None]
    if missing:
        raise DatasetError(f"quartile table is missing column(s): {', '.join(missing)}")
    table = {}
    warnings = []
    try:
        for lineno, row in enumerate(reader, start=2):
            venue = normalize_text(row.get(venue_col) or "")
            raw_q = (row.get(quart_col) or "").strip().upper()
            if not venue:
                warnings.append(f"quartile table line {lineno}: empty venue, row skipped")
                continue
            if raw_q not in ("Q1", "Q2", "Q3", "Q4"):
                warnings.append(f"quartile table line {lineno}: invalid quartile {raw_q!r}, row skipped")
                continue
            table[venue] = Quartile(raw_q)
    except csv.Error as exc:
        raise DatasetError(f"quartile table is not valid CSV: {exc}") from exc
    for w in warnings:
        log.warning(w)
    return QuartileIndex(table, tuple(warnings))


def venue_quartile(venue_name: str, index: QuartileIndex) -> Quartile:
    norm = normalize_text(venue_name)
    if not norm:
        return Quartile.NA
    return index.table.get(norm, Quartile.NA)


def is_preprint(venue_name: str, config: WeightConfig = WeightConfig()) -> bool:
    norm = normalize_text(venue_name)
    if not norm:
        return False
    for fragment in config.preprint_venues:
        frag = normalize_text(fragment)
        if frag and frag in norm:
            return True
    return False


def enrich_profile(
    profile: Profile,
    retractions: Optional[RetractionIndex] = None,
    quartiles: Optional[QuartileIndex] = None,
    config: WeightConfig = WeightConfig(),
    fuzzy_threshold: float = DEFAULT_FUZZY_THRESHOLD,
):
    """Set quartile, preprint and retraction flags on every publication.

    Returns ``(profile, notices)``; notices list matches whose nature is
    not a retraction (corrections, expressions of concern), which are
    reported but never flagged.
    """
    notices = []
    pubs = []
    for pub in profile.publications:
        quartile = venue_quartile(pub.venue_name, quartiles) if quartiles is not None else Quartile.NA
        retracted = False
        if retractions is not None:
            rec = match_retraction(pub.title, retractions, fuzzy_threshold)
            if rec is not None:
                if rec.is_retraction:
                    retracted = True
                else:
                    notices.append(f"{rec.nature}: {pub.title}")
        pubs.append(
            replace(
                pub,
                quartile=quartile,
                retracted=retracted,
                preprint=is_preprint(pub.venue_name, config) or is_preprint(pub.venue_raw, config),
            )
        )
    return profile.with_publications(pubs), notices
