"""Assemble an :class:`AnalysisSnapshot` and render it as JSON or Markdown.

JSON key order is part of the output contract::

    owner, window, career_start, indices, counters, categories,
    quartile_matrix, pubs_per_year, violin, publications, diagnostics

Floats are rounded to six decimal places; nothing time-dependent is
written unless a timestamp is passed explicitly.
"""
from __future__ import annotations

import json
from typing import Optional

from .metrics import (
    category_h_indices,
    contribution_percentages,
    filter_by_years,
    included,
    pubs_per_year,
    raw_h_index,
    sh_index,
    summary_counters,
)
from .model import QUARTILES, ROLES, AnalysisSnapshot, Profile, WeightConfig, career_start
from .stats import violin_stats

FLOAT_DIGITS = 6


def resolve_window(profile: Profile, window=None):
    """Fill missing window ends from the profile's dated publications."""
    years = [p.year for p in profile.publications if p.year is not None]
    first = min(years) if years else None
    last = max(years) if years else None
    start, end = window if window is not None else (None, None)
    start = first if start is None else start
    end = last if end is None else end
    if start is not None and end is None:
        end = start
    if end is not None and start is None:
        start = end
    return start, end


def build_snapshot(
    profile: Profile,
    window=None,
    config: Optional[WeightConfig] = None,
    as_of: Optional[int] = None,
    warnings=(),
) -> AnalysisSnapshot:
    """Compute every reported metric for ``profile`` within ``window``.

    ``profile`` must already be enriched and classified. ``window`` is a
    ``(start, end)`` pair where either side may be None (taken from the
    dated career); the whole career is used when it is omitted.
    """
    start, end = resolve_window(profile, window)
    windowed = filter_by_years(profile, start, end) if start is not None else profile
    inc = windowed.with_publications(included(windowed))
    unmatched = len(windowed.publications) - len(inc.publications)
    if as_of is None and window is not None and window[1] is not None:
        as_of = window[1]

    matrix = {}
    for role in ROLES:
        cells = {q: [0, 0] for q in QUARTILES}
        total = [0, 0]
        for p in inc.publications:
            if p.role is role:
                cells[p.quartile][0] += 1
                cells[p.quartile][1] += p.citations_raw
                total[0] += 1
                total[1] += p.citations_raw
        row = {q: tuple(v) for q, v in cells.items()}
        row[None] = tuple(total)
        matrix[role] = row

    violins = {
        role: violin_stats([p.citations_raw for p in inc.publications if p.role is role]) for role in ROLES
    }
    return AnalysisSnapshot(
        owner_aliases=tuple(profile.owner_aliases),
        window=(start, end),
        career_start=career_start(profile),
        sh_index=sh_index(inc, config),
        h_index_raw=raw_h_index(inc),
        per_category_h=category_h_indices(inc),
        counters=summary_counters(inc),
        category_matrix=matrix,
        contribution_pct=contribution_percentages(inc),
        pubs_per_year=pubs_per_year(inc, as_of),
        violin=violins,
        publications=windowed.publications,
        google_reported_total_citations=profile.google_reported_total_citations,
        google_reported_h=profile.google_reported_h,
        unmatched_owner_count=unmatched,
        warnings=tuple(profile.warnings) + tuple(warnings),
    )


def _num(x):
    if x is None or isinstance(x, bool) or isinstance(x, int):
        return x
    r = round(float(x), FLOAT_DIGITS)
    return 0.0 if r == 0 else r


def snapshot_to_dict(snap: AnalysisSnapshot, timestamp: Optional[str] = None) -> dict:
    c = snap.counters
    categories = {}
    for role in ROLES:
        pubs, cites = snap.category_matrix[role][None]
        pub_pct, cit_pct = snap.contribution_pct[role]
        categories[role.value] = {
            "pubs": pubs,
            "citations": cites,
            "pub_pct": _num(pub_pct),
            "cit_pct": _num(cit_pct),
            "h": snap.per_category_h[role],
        }
    quartile_matrix = {
        role.value: {
            q.value: {"pubs": snap.category_matrix[role][q][0], "citations": snap.category_matrix[role][q][1]}
            for q in QUARTILES
        }
        for role in ROLES
    }
    violin = {}
    for role in ROLES:
        v = snap.violin[role]
        violin[role.value] = {
            "n": v.n,
            "median": _num(v.median),
            "mean": _num(v.mean),
            "min": _num(v.min),
            "max": _num(v.max),
            "q25": _num(v.q25),
            "q75": _num(v.q75),
            "density": [[_num(pos), _num(d)] for pos, d in v.density],
        }
    publications = [
        {
            "title": p.title,
            "year": p.year,
            "role": p.role.value if p.role is not None else None,
            "weight": _num(p.weight),
            "citations_raw": p.citations_raw,
            "citations_adjusted": _num(p.citations_adjusted),
            "quartile": p.quartile.value,
            "retracted": p.retracted,
            "preprint": p.preprint,
        }
        for p in snap.publications
    ]
    doc = {
        "owner": {
            "aliases": list(snap.owner_aliases),
            "google_reported": {
                "citations": snap.google_reported_total_citations,
                "h_index": snap.google_reported_h,
            },
        },
        "window": {"start": snap.window[0], "end": snap.window[1]},
        "career_start": snap.career_start,
        "indices": {
            "h_raw": snap.h_index_raw,
            "sh": snap.sh_index,
            "per_category": {role.value: snap.per_category_h[role] for role in ROLES},
        },
        "counters": {
            "pubs": c.pubs,
            "citations_raw": c.citations_raw,
            "citations_adjusted": _num(c.citations_adjusted),
            "median_raw": _num(c.median_raw),
            "median_adjusted": _num(c.median_adjusted),
            "zero_citations": c.zero_citations,
            "retractions": c.retractions,
            "preprints": c.preprints,
        },
        "categories": categories,
        "quartile_matrix": quartile_matrix,
        "pubs_per_year": {str(y): n for y, n in sorted(snap.pubs_per_year.items())},
        "violin": violin,
        "publications": publications,
        "diagnostics": {
            "unmatched_owner_count": snap.unmatched_owner_count,
            "warnings": list(snap.warnings),
        },
    }
    if timestamp is not None:
        doc["generated_at"] = timestamp
    return doc


def emit_report_json(snap: AnalysisSnapshot, timestamp: Optional[str] = None) -> str:
    return json.dumps(snapshot_to_dict(snap, timestamp), indent=2, ensure_ascii=False) + "\n"


def _fmt_pct(x) -> str:
    return "n/a" if x is None else f"{x:.1f}"


def _fmt_num(x) -> str:
    if x is None:
        return "n/a"
    if isinstance(x, int):
        return str(x)
    return f"{x:.2f}"


def _table(header, rows) -> list:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return lines


def emit_report_markdown(snap: AnalysisSnapshot, timestamp: Optional[str] = None) -> str:
    c = snap.counters
    start, end = snap.window
    title_owner = snap.owner_aliases[0] if snap.owner_aliases else "unknown"
    out = [f"# Citation report: {title_owner}", ""]
    if start is not None:
        out.append(f"Window: {start}-{end} (career start {snap.career_start})")
    else:
        out.append("Window: no dated publications")
    if timestamp is not None:
        out.append(f"Generated: {timestamp}")
    out += ["", "## Indices", ""]
    rows = [("Sh-index", snap.sh_index), ("h-index (raw citations)", snap.h_index_raw)]
    rows.append(("h-index (reported by Scholar)", _fmt_num(snap.google_reported_h)))
    rows.append(("Total citations (reported by Scholar)", _fmt_num(snap.google_reported_total_citations)))
    out += _table(("Index", "Value"), rows)

    out += ["", "## Summary", ""]
    out += _table(
        ("Statistic", "Value"),
        [
            ("Publications", c.pubs),
            ("Raw citations", c.citations_raw),
            ("Adjusted citations", _fmt_num(c.citations_adjusted)),
            ("Median raw citations", _fmt_num(c.median_raw)),
            ("Median adjusted citations", _fmt_num(c.median_adjusted)),
            ("Zero-citation publications", c.zero_citations),
            ("Retractions", c.retractions),
            ("Preprints", c.preprints),
            ("Publications without owner match", snap.unmatched_owner_count),
        ],
    )

    out += ["", "## Authorship categories", ""]
    rows = []
    for role in ROLES:
        pubs, cites = snap.category_matrix[role][None]
        pub_pct, cit_pct = snap.contribution_pct[role]
        rows.append((role.value, pubs, cites, _fmt_pct(pub_pct), _fmt_pct(cit_pct), snap.per_category_h[role]))
    out += _table(("Role", "Pubs", "Citations", "Pubs %", "Citations %", "h"), rows)

    out += ["", "## Role by journal quartile (pubs / citations)", ""]
    rows = []
    for role in ROLES:
        cells = snap.category_matrix[role]
        rows.append([role.value] + [f"{cells[q][0]} / {cells[q][1]}" for q in QUARTILES])
    out += _table(["Role"] + [q.value for q in QUARTILES], rows)

    out += ["", "## Citation distribution, log10(citations + 1)", ""]
    rows = []
    for role in ROLES:
        v = snap.violin[role]
        rows.append(
            (role.value, v.n, _fmt_num(v.min), _fmt_num(v.q25), _fmt_num(v.median),
             _fmt_num(v.mean), _fmt_num(v.q75), _fmt_num(v.max))
        )
    out += _table(("Role", "n", "min", "q25", "median", "mean", "q75", "max"), rows)

    out += ["", "## Publications per year", ""]
    out += _table(("Year", "Publications"), sorted(snap.pubs_per_year.items()))

    retracted = [p for p in snap.publications if p.retracted]
    if retracted:
        out += ["", "## Retracted publications", ""]
        out += [f"- RETRACTED: {p.title} ({p.year if p.year is not None else 'n.d.'})" for p in retracted]
    if snap.warnings:
        out += ["", "## Diagnostics", ""]
        out += [f"- {w}" for w in snap.warnings]
    return "\n".join(out) + "\n"
