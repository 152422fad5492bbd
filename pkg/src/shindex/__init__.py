"""Authorship-weighted citation metrics (Sh-index) for scholar profiles."""
from .enrichment import (
    DatasetError,
    QuartileIndex,
    RetractionIndex,
    RetractionRecord,
    enrich_profile,
    is_preprint,
    levenshtein_similarity,
    load_quartile_table,
    load_retraction_db,
    match_retraction,
    normalize_text,
    venue_quartile,
)
from .ingest import (
    LineParseError,
    MalformedDocument,
    extract_venue_name,
    load_profile,
    match_owner,
    parse_author_string,
    parse_profile_html,
    parse_records_csv,
    parse_records_json,
    to_records_json,
)
from .metrics import (
    InvalidWindow,
    category_h_indices,
    contribution_percentages,
    filter_by_years,
    h_index,
    pubs_per_year,
    raw_h_index,
    sh_index,
    summary_counters,
)
from .model import (
    AnalysisSnapshot,
    AuthorList,
    AuthorName,
    ConfigError,
    Profile,
    Publication,
    Quartile,
    Role,
    TeamKind,
    TeamSizeClass,
    ViolinStats,
    WeightConfig,
    career_start,
    validate_publication,
)
from .report import build_snapshot, emit_report_json, emit_report_markdown
from .stats import DensityCurve, kde_density, violin_stats
from .svg import emit_svg_charts
from .weights import adjusted_citations, author_weight, classify_profile, classify_role, team_size_class

__version__ = "0.1.0"
