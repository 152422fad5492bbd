"""Citation indices and summary statistics over a classified profile.

Only *included* publications count: those whose owner was located in the
byline and therefore carry a role.
"""
from __future__ import annotations

import statistics
from typing import Iterable, Optional

from .model import ROLES, Counters, Profile, Publication, Role, WeightConfig, career_start
from .weights import author_weight


class InvalidWindow(ValueError):
    pass


def included(profile: Profile) -> list:
    return [p for p in profile.publications if p.role is not None]


def h_index(values: Iterable[float]) -> int:
    ranked = sorted(values, reverse=True)
    h = 0
    for i, v in enumerate(ranked, start=1):
        if v >= i:
            h = i
        else:
            break
    return h


def _adjusted(pub: Publication, config: Optional[WeightConfig]) -> float:
    if config is None or pub.team is None:
        return pub.citations_adjusted or 0.0
    return author_weight(pub.role, pub.team, config) * pub.citations_raw


def sh_index(profile: Profile, config: Optional[WeightConfig] = None) -> int:
    """h-index over authorship-weighted citations.

    With ``config`` the weights are re-derived from each publication's role
    and team class; otherwise the stored adjusted counts are used.
    """
    return h_index(_adjusted(p, config) for p in included(profile))


def raw_h_index(profile: Profile) -> int:
    return h_index(p.citations_raw for p in included(profile))


def category_h_indices(profile: Profile) -> dict:
    by_role = {role: [] for role in ROLES}
    for p in included(profile):
        by_role[p.role].append(p.citations_raw)
    return {role: h_index(cites) for role, cites in by_role.items()}


def summary_counters(profile: Profile) -> Counters:
    pubs = included(profile)
    if not pubs:
        return Counters()
    raw = [p.citations_raw for p in pubs]
    adj = [p.citations_adjusted or 0.0 for p in pubs]
    return Counters(
        pubs=len(pubs),
        citations_raw=sum(raw),
        citations_adjusted=sum(adj),
        median_raw=statistics.median(raw),
        median_adjusted=statistics.median(adj),
        zero_citations=sum(1 for c in raw if c == 0),
        retractions=sum(1 for p in pubs if p.retracted),
        preprints=sum(1 for p in pubs if p.preprint),
    )


def contribution_percentages(profile: Profile) -> dict:
    """Per role: (share of publications, share of raw citations), in percent.

    A share is None when its denominator is zero.
    """
    pubs = included(profile)
    n = len(pubs)
    total_cites = sum(p.citations_raw for p in pubs)
    out = {}
    for role in ROLES:
        mine = [p for p in pubs if p.role is role]
        pub_pct = 100.0 * len(mine) / n if n else None
        cit_pct = 100.0 * sum(p.citations_raw for p in mine) / total_cites if total_cites else None
        out[role] = (pub_pct, cit_pct)
    return out


def filter_by_years(profile: Profile, start: int, end: int) -> Profile:
    """Publications dated within ``[start, end]``.

    Undated publications are kept only when the window covers the whole
    dated career, i.e. when it is not really a window.
    """
    if start > end:
        raise InvalidWindow(f"window start {start} is after end {end}")
    years = [p.year for p in profile.publications if p.year is not None]
    spans_career = not years or (start <= min(years) and end >= max(years))
    kept = [
        p
        for p in profile.publications
        if (p.year is not None and start <= p.year <= end) or (p.year is None and spans_career)
    ]
    return profile.with_publications(kept)


def pubs_per_year(profile: Profile, as_of: Optional[int] = None, span: int = 10) -> dict:
    """Publication counts for the ``span`` years ending at ``as_of``.

    ``as_of`` defaults to the latest publication year; with no dated
    publications and no ``as_of`` the result is empty.
    """
    if as_of is None:
        years = [p.year for p in profile.publications if p.year is not None]
        if not years:
            return {}
        as_of = max(years)
    counts = {y: 0 for y in range(as_of - span + 1, as_of + 1)}
    for p in profile.publications:
        if p.year in counts:
            counts[p.year] += 1
    return counts


__all__ = [
    "InvalidWindow",
    "career_start",
    "category_h_indices",
    "contribution_percentages",
    "filter_by_years",
    "h_index",
    "included",
    "pubs_per_year",
    "raw_h_index",
    "sh_index",
    "summary_counters",
]
