"""Builders for classified publications and profiles."""
from shindex.model import (
    AuthorList,
    AuthorName,
    Profile,
    Publication,
    Quartile,
    Role,
    TeamKind,
    TeamSizeClass,
    WeightConfig,
)
from shindex.weights import author_weight


def byline(*names, truncated=False):
    return AuthorList(tuple(AuthorName(n) for n in names), truncated)


def make_pub(role=Role.CORRESPONDING, cites=0, year=None, team=TeamKind.SMALL, quartile=Quartile.NA,
             retracted=False, preprint=False, title="t", config=WeightConfig()):
    """A publication already through classification."""
    team_cls = TeamSizeClass(team, 3)
    if role is None:
        return Publication(title=title, year=year, citations_raw=cites, quartile=quartile,
                           retracted=retracted, preprint=preprint)
    w = author_weight(role, team_cls, config)
    return Publication(
        title=title, year=year, citations_raw=cites, role=role, team=team_cls, weight=w,
        citations_adjusted=w * cites, quartile=quartile, retracted=retracted, preprint=preprint,
    )


def make_profile(pubs, **kw):
    return Profile(owner_aliases=("G Sharma",), publications=tuple(pubs), **kw)
