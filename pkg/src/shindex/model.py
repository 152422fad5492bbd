"""Shared domain types for profile analysis.

Everything here is plain immutable data. Derived fields on
:class:`Publication` (role, weight, quartile, flags) are filled in by the
later pipeline stages through :func:`dataclasses.replace`, so a value built
by ingestion can be shared freely between workers.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field, fields
from typing import Iterable, Optional

YEAR_MIN = 1500
YEAR_MAX = 2200

CORRESPONDING_STAR = "*"
FIRST_CARET = "^"
MARKERS = frozenset({CORRESPONDING_STAR, FIRST_CARET})

DEFAULT_PREPRINT_VENUES = (
    "arxiv",
    "biorxiv",
    "medrxiv",
    "chemrxiv",
    "psyarxiv",
    "ssrn",
    "research square",
    "preprints org",
    "osf preprints",
)


class Role(enum.Enum):
    CORRESPONDING = "corresponding"
    FIRST = "first"
    SECOND = "second"
    COAUTHOR = "coauthor"


# Fixed reporting order, highest weight first.
ROLES = (Role.CORRESPONDING, Role.FIRST, Role.SECOND, Role.COAUTHOR)


class TeamKind(enum.Enum):
    SMALL = "small"
    LARGE = "large"
    UNKNOWN = "unknown"


class Quartile(enum.Enum):
    Q1 = "Q1"
    Q2 = "Q2"
    Q3 = "Q3"
    Q4 = "Q4"
    NA = "NA"


QUARTILES = (Quartile.Q1, Quartile.Q2, Quartile.Q3, Quartile.Q4, Quartile.NA)


class ConfigError(ValueError):
    """Invalid weight configuration or run configuration."""


@dataclass(frozen=True)
class AuthorName:
    display: str
    markers: frozenset = frozenset()

    def __post_init__(self):
        if not self.display.strip():
            raise ValueError("author display name is empty")
        if not set(self.markers) <= MARKERS:
            raise ValueError(f"unknown author markers: {set(self.markers) - MARKERS}")

    @property
    def is_corresponding(self) -> bool:
        return CORRESPONDING_STAR in self.markers

    @property
    def is_first(self) -> bool:
        return FIRST_CARET in self.markers

    def byline_form(self) -> str:
        """The name as it would be printed, markers re-attached."""
        suffix = ""
        if self.is_first:
            suffix += FIRST_CARET
        if self.is_corresponding:
            suffix += CORRESPONDING_STAR
        return self.display + suffix


@dataclass(frozen=True)
class AuthorList:
    names: tuple = ()
    truncated: bool = False

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __getitem__(self, i):
        return self.names[i]

    def byline(self) -> str:
        parts = [n.byline_form() for n in self.names]
        if self.truncated:
            parts.append("...")
        return ", ".join(parts)


@dataclass(frozen=True)
class TeamSizeClass:
    kind: TeamKind
    observed_count: int


@dataclass(frozen=True)
class Publication:
    title: str
    authors: AuthorList = AuthorList()
    venue_raw: str = ""
    venue_name: str = ""
    year: Optional[int] = None
    citations_raw: int = 0
    role: Optional[Role] = None
    team: Optional[TeamSizeClass] = None
    weight: Optional[float] = None
    citations_adjusted: Optional[float] = None
    quartile: Quartile = Quartile.NA
    retracted: bool = False
    preprint: bool = False
    # 1-based byline position the source page highlighted as the owner, if any.
    owner_hint: Optional[int] = None


@dataclass(frozen=True)
class Profile:
    owner_aliases: tuple
    publications: tuple = ()
    google_reported_total_citations: Optional[int] = None
    google_reported_h: Optional[int] = None
    warnings: tuple = ()

    def __post_init__(self):
        if not self.owner_aliases:
            raise ValueError("a profile needs at least one owner alias")

    def with_publications(self, pubs: Iterable[Publication]) -> "Profile":
        return Profile(
            owner_aliases=self.owner_aliases,
            publications=tuple(pubs),
            google_reported_total_citations=self.google_reported_total_citations,
            google_reported_h=self.google_reported_h,
            warnings=self.warnings,
        )


_WEIGHT_KEYS = ("corresponding", "first", "second", "coauthor_small", "coauthor_large")


@dataclass(frozen=True)
class WeightConfig:
    """Contribution weights per authorship role.

    Defaults follow the usual heuristic: corresponding 100%, first 90%,
    second 50%, co-authors 25% on teams of up to six and 10% beyond.
    """

    corresponding: float = 1.0
    first: float = 0.9
    second: float = 0.5
    coauthor_small: float = 0.25
    coauthor_large: float = 0.10
    small_team_max: int = 6
    preprint_venues: tuple = DEFAULT_PREPRINT_VENUES

    def __post_init__(self):
        for key in _WEIGHT_KEYS:
            value = getattr(self, key)
            if isinstance(value, bool) or not isinstance(value, (int, float)):
                raise ConfigError(f"weight {key!r} must be a number, got {value!r}")
            if not (0.0 <= value <= 1.0) or math.isnan(value):
                raise ConfigError(f"weight {key!r} must lie in [0, 1], got {value!r}")
        stm = self.small_team_max
        if isinstance(stm, bool) or not isinstance(stm, int) or stm < 1:
            raise ConfigError(f"small_team_max must be a positive integer, got {stm!r}")
        if isinstance(self.preprint_venues, str):
            raise ConfigError("preprint_venues must be a list of strings")

    @classmethod
    def from_mapping(cls, data: dict, base: Optional["WeightConfig"] = None) -> "WeightConfig":
        """Overlay ``data`` onto ``base`` (defaults when omitted)."""
        base = base or cls()
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown weight config keys: {', '.join(sorted(unknown))}")
        merged = {f.name: getattr(base, f.name) for f in fields(cls)}
        for key, value in data.items():
            if key == "preprint_venues":
                if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
                    raise ConfigError("preprint_venues must be a list of strings")
                value = tuple(value)
            elif key != "small_team_max" and isinstance(value, int) and not isinstance(value, bool):
                value = float(value)
            merged[key] = value
        return cls(**merged)

    @classmethod
    def from_json(cls, text: str, base: Optional["WeightConfig"] = None) -> "WeightConfig":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"weight config is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("weight config must be a JSON object")
        return cls.from_mapping(data, base)


@dataclass(frozen=True)
class ViolinStats:
    n: int
    median: Optional[float] = None
    mean: Optional[float] = None
    min: Optional[float] = None
    max: Optional[float] = None
    q25: Optional[float] = None
    q75: Optional[float] = None
    density: tuple = ()


@dataclass(frozen=True)
class Counters:
    pubs: int = 0
    citations_raw: int = 0
    citations_adjusted: float = 0.0
    median_raw: Optional[float] = None
    median_adjusted: Optional[float] = None
    zero_citations: int = 0
    retractions: int = 0
    preprints: int = 0


@dataclass(frozen=True)
class AnalysisSnapshot:
    owner_aliases: tuple
    window: tuple
    career_start: Optional[int]
    sh_index: int
    h_index_raw: int
    per_category_h: dict
    counters: Counters
    # role -> quartile -> (pubs, citations); quartile None holds the role total
    category_matrix: dict
    contribution_pct: dict
    pubs_per_year: dict
    violin: dict
    publications: tuple = ()
    google_reported_total_citations: Optional[int] = None
    google_reported_h: Optional[int] = None
    unmatched_owner_count: int = 0
    warnings: tuple = ()


def career_start(profile: Profile) -> Optional[int]:
    years = [p.year for p in profile.publications if p.year is not None]
    return min(years) if years else None


def validate_publication(p: Publication) -> list:
    """Return a list of human-readable invariant violations (empty if valid)."""
    problems = []
    if not p.title.strip():
        problems.append("title: empty")
    if p.citations_raw < 0:
        problems.append(f"citations_raw: negative ({p.citations_raw})")
    if p.year is not None and not (YEAR_MIN <= p.year <= YEAR_MAX):
        problems.append(f"year: {p.year} outside [{YEAR_MIN}, {YEAR_MAX}]")
    if p.weight is not None and not (0.0 <= p.weight <= 1.0):
        problems.append(f"weight: {p.weight} outside [0, 1]")
    adj = p.citations_adjusted
    if adj is not None:
        if adj < 0:
            problems.append(f"citations_adjusted: negative ({adj})")
        elif adj > p.citations_raw:
            problems.append(f"citations_adjusted: {adj} exceeds citations_raw {p.citations_raw}")
        elif p.weight is not None and not math.isclose(adj, p.weight * p.citations_raw, abs_tol=1e-9):
            problems.append(f"citations_adjusted: {adj} != weight x citations_raw")
    if not isinstance(p.quartile, Quartile):
        problems.append(f"quartile: {p.quartile!r} is not a quartile")
    return problems
