import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shindex.ingest import parse_author_string
from shindex.model import AuthorList, AuthorName, Profile, Publication, Role, TeamKind, TeamSizeClass, WeightConfig
from shindex.weights import (
    adjusted_citations,
    author_weight,
    classify_profile,
    classify_role,
    team_size_class,
)

from .helpers import byline


@pytest.mark.parametrize(
    "n, truncated, kind",
    [
        (6, False, TeamKind.SMALL),
        (7, False, TeamKind.LARGE),
        (4, True, TeamKind.UNKNOWN),
        (7, True, TeamKind.LARGE),
        (1, False, TeamKind.SMALL),
    ],
)
def test_team_size_class(n, truncated, kind):
    authors = byline(*(f"A{i} B" for i in range(n)), truncated=truncated)
    t = team_size_class(authors)
    assert t.kind is kind and t.observed_count == n


class TestClassifyRole:
    def test_markers(self):
        al = parse_author_string("V Karthik^, IS Anand, U Mahanta, G Sharma*")
        assert classify_role(al, 4) is Role.CORRESPONDING
        assert classify_role(al, 1) is Role.FIRST
        assert classify_role(al, 2) is Role.SECOND
        assert classify_role(al, 3) is Role.COAUTHOR

    def test_positional_defaults(self):
        al = parse_author_string("A One, B Two, C Three")
        assert classify_role(al, 1) is Role.FIRST
        assert classify_role(al, 3) is Role.CORRESPONDING

    def test_single_author(self):
        assert classify_role(parse_author_string("A One"), 1) is Role.CORRESPONDING

    def test_star_elsewhere_disables_last_author_rule(self):
        al = parse_author_string("A One, B Two*, C Three")
        assert classify_role(al, 3) is Role.COAUTHOR

    def test_caret_at_position_two_counts_first(self):
        al = parse_author_string("A One^, B Two^, C Three")
        assert classify_role(al, 2) is Role.FIRST

    def test_truncated_last_is_not_corresponding(self):
        al = parse_author_string("A One, B Two, C Three, ...")
        assert classify_role(al, 3) is Role.COAUTHOR

    def test_bad_position(self):
        with pytest.raises(IndexError):
            classify_role(parse_author_string("A One"), 2)

    @given(st.lists(st.sampled_from(["", "^", "*", "^*"]), min_size=1, max_size=10), st.data())
    def test_renaming_invariance(self, marks, data):
        pos = data.draw(st.integers(1, len(marks)))
        a = AuthorList(tuple(AuthorName(f"Name{i} X", frozenset(m)) for i, m in enumerate(marks)))
        b = AuthorList(tuple(AuthorName(f"Other{i * 7} Y", frozenset(m)) for i, m in enumerate(marks)))
        assert classify_role(a, pos) is classify_role(b, pos)


class TestAuthorWeight:
    def test_table(self):
        small, large, unknown = (TeamSizeClass(k, 3) for k in (TeamKind.SMALL, TeamKind.LARGE, TeamKind.UNKNOWN))
        for team in (small, large, unknown):
            assert author_weight(Role.CORRESPONDING, team) == 1.0
            assert author_weight(Role.FIRST, team) == 0.9
            assert author_weight(Role.SECOND, team) == 0.5
        assert author_weight(Role.COAUTHOR, small) == 0.25
        assert author_weight(Role.COAUTHOR, large) == 0.10
        assert author_weight(Role.COAUTHOR, unknown) == 0.10

    def test_exhaustive_image(self):
        image = {
            author_weight(r, TeamSizeClass(k, 1)) for r, k in itertools.product(Role, TeamKind)
        }
        assert image == {1.0, 0.9, 0.5, 0.25, 0.10}

    def test_monotone_dominance(self):
        order = [Role.COAUTHOR, Role.SECOND, Role.FIRST, Role.CORRESPONDING]
        for kind in TeamKind:
            ws = [author_weight(r, TeamSizeClass(kind, 1)) for r in order]
            assert ws == sorted(ws)

    def test_custom_config(self):
        cfg = WeightConfig(coauthor_small=0.3)
        assert author_weight(Role.COAUTHOR, TeamSizeClass(TeamKind.SMALL, 4), cfg) == 0.3


@pytest.mark.parametrize("raw, w, expected", [(10, 0.9, 9.0), (0, 1.0, 0.0), (7, 0.25, 1.75)])
def test_adjusted_citations(raw, w, expected):
    assert adjusted_citations(raw, w) == expected


def test_classify_profile_unmatched():
    pubs = (
        Publication(title="mine", authors=parse_author_string("A Rao, G Sharma"), citations_raw=10),
        Publication(title="not mine", authors=parse_author_string("A Rao, B Mehta"), citations_raw=3),
        Publication(title="hinted", authors=parse_author_string("A Rao, Gaurav S., C Iyer"), citations_raw=2,
                    owner_hint=2),
    )
    prof, unmatched = classify_profile(Profile(("G Sharma",), pubs))
    assert unmatched == ["not mine"]
    mine, other, hinted = prof.publications
    assert mine.role is Role.CORRESPONDING and mine.citations_adjusted == 10.0
    assert other.role is None and other.citations_adjusted is None
    assert hinted.role is Role.SECOND and hinted.weight == 0.5


@given(st.integers(1, 12), st.booleans(), st.integers(0, 10_000), st.data())
def test_adjusted_never_exceeds_raw(n, truncated, cites, data):
    marks = data.draw(st.lists(st.sampled_from(["", "^", "*"]), min_size=n, max_size=n))
    text = ", ".join(f"N{i} X{m}" for i, m in enumerate(marks)) + (", ..." if truncated else "")
    owner = data.draw(st.integers(1, n))
    pub = Publication(title="p", authors=parse_author_string(text), citations_raw=cites)
    prof, _ = classify_profile(Profile((f"N{owner - 1} X",), (pub,)))
    out = prof.publications[0]
    assert out.citations_adjusted <= out.citations_raw
    assert out.citations_adjusted == out.weight * out.citations_raw
