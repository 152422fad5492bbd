"""Authorship role classification and contribution weighting."""
from __future__ import annotations

from dataclasses import replace
from typing import Optional

from .ingest import match_owner
from .model import AuthorList, Profile, Role, TeamKind, TeamSizeClass, WeightConfig


def team_size_class(authors: AuthorList, config: WeightConfig = WeightConfig()) -> TeamSizeClass:
    n = len(authors)
    if n > config.small_team_max:
        return TeamSizeClass(TeamKind.LARGE, n)
    if authors.truncated:
        # the printed count is only a lower bound
        return TeamSizeClass(TeamKind.UNKNOWN, n)
    return TeamSizeClass(TeamKind.SMALL, n)


def classify_role(authors: AuthorList, owner_pos: int, config: WeightConfig = WeightConfig()) -> Role:
    """Role of the author at 1-based ``owner_pos``.

    Markers win over position: ``*`` makes a corresponding author and ``^``
    a first author. Without any ``*`` in the byline the last author is taken
    as corresponding; position 1 is first. On overlap the heavier role wins.
    """
    if not 1 <= owner_pos <= len(authors):
        raise IndexError(f"owner position {owner_pos} outside byline of {len(authors)}")
    owner = authors[owner_pos - 1]
    any_star = any(name.is_corresponding for name in authors)
    # a truncated byline hides the real last author
    is_last = owner_pos == len(authors) and not authors.truncated
    if owner.is_corresponding or (not any_star and is_last):
        return Role.CORRESPONDING
    if owner.is_first or owner_pos == 1:
        return Role.FIRST
    if owner_pos == 2:
        return Role.SECOND
    return Role.COAUTHOR


def author_weight(role: Role, team: TeamSizeClass, config: WeightConfig = WeightConfig()) -> float:
    if role is Role.CORRESPONDING:
        return config.corresponding
    if role is Role.FIRST:
        return config.first
    if role is Role.SECOND:
        return config.second
    if team.kind is TeamKind.SMALL:
        return config.coauthor_small
    return config.coauthor_large


def adjusted_citations(citations_raw: int, weight: float) -> float:
    return weight * citations_raw


def classify_profile(profile: Profile, config: WeightConfig = WeightConfig()):
    """Assign role, team class, weight and adjusted citations to each publication.

    Publications where the owner cannot be found in the byline (and the page
    gave no owner highlight) keep ``role=None`` and are left out of every
    metric. Returns ``(profile, unmatched_titles)``.
    """
    pubs = []
    unmatched = []
    for pub in profile.publications:
        pos: Optional[int] = match_owner(pub.authors, profile.owner_aliases)
        if pos is None and pub.owner_hint is not None and 1 <= pub.owner_hint <= len(pub.authors):
            pos = pub.owner_hint
        if pos is None:
            unmatched.append(pub.title)
            pubs.append(replace(pub, role=None, team=None, weight=None, citations_adjusted=None))
            continue
        team = team_size_class(pub.authors, config)
        role = classify_role(pub.authors, pos, config)
        weight = author_weight(role, team, config)
        pubs.append(
            replace(
                pub,
                role=role,
                team=team,
                weight=weight,
                citations_adjusted=adjusted_citations(pub.citations_raw, weight),
            )
        )
    return profile.with_publications(pubs), unmatched
