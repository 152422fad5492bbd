import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shindex.metrics import (
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
from shindex.model import Role, TeamKind, WeightConfig, career_start

from .helpers import make_profile, make_pub
from .oracles import brute_h


class TestHIndex:
    def test_empty(self):
        assert h_index([]) == 0

    def test_derived_values(self):
        # frozen from brute_h
        assert brute_h([10, 10, 10]) == 3
        assert brute_h([4.5, 3.6, 2.5, 0.9]) == 2
        assert h_index([10, 10, 10]) == 3
        assert h_index([4.5, 3.6, 2.5, 0.9]) == 2

    @given(st.lists(st.one_of(st.integers(0, 60), st.floats(0, 60, allow_nan=False)), max_size=50))
    def test_matches_brute_force(self, values):
        assert h_index(values) == brute_h(values)

    @given(st.lists(st.integers(0, 100), max_size=30), st.integers(0, 100))
    def test_append_monotone(self, values, extra):
        assert h_index(values + [extra]) >= h_index(values)


class TestShIndex:
    def test_identity_when_all_corresponding(self):
        prof = make_profile([make_pub(Role.CORRESPONDING, c) for c in (10, 10, 10)])
        assert sh_index(prof) == 3 == raw_h_index(prof)

    def test_weighted(self):
        prof = make_profile([
            make_pub(Role.FIRST, 10),
            make_pub(Role.FIRST, 4),
            make_pub(Role.COAUTHOR, 30, team=TeamKind.LARGE),
        ])
        assert [p.citations_adjusted for p in prof.publications] == pytest.approx([9.0, 3.6, 3.0])
        # all three adjusted values reach 3
        assert brute_h([9.0, 3.6, 3.0]) == 3
        assert sh_index(prof) == 3
        assert raw_h_index(prof) == 3

    def test_empty(self):
        assert sh_index(make_profile([])) == 0

    def test_config_rederives_weights(self):
        prof = make_profile([make_pub(Role.COAUTHOR, 8, team=TeamKind.SMALL) for _ in range(4)])
        assert sh_index(prof) == 2  # 8 * 0.25
        assert sh_index(prof, WeightConfig(coauthor_small=1.0)) == 4

    def test_unmatched_excluded(self):
        prof = make_profile([make_pub(None, 100), make_pub(Role.FIRST, 2)])
        assert sh_index(prof) == 1
        assert raw_h_index(prof) == 1
        assert summary_counters(prof).pubs == 1


def test_category_h():
    prof = make_profile(
        [make_pub(Role.CORRESPONDING, c) for c in (5, 4, 4, 1)] + [make_pub(Role.SECOND, 100)]
    )
    assert brute_h([5, 4, 4, 1]) == 3
    h = category_h_indices(prof)
    assert h[Role.CORRESPONDING] == 3
    assert h[Role.FIRST] == 0
    assert h[Role.SECOND] == 1


class TestCounters:
    def test_odd(self):
        c = summary_counters(make_profile([make_pub(cites=x) for x in (0, 3, 7)]))
        assert c.median_raw == 3 and c.zero_citations == 1

    def test_even(self):
        assert summary_counters(make_profile([make_pub(cites=x) for x in (2, 4)])).median_raw == 3.0

    def test_empty(self):
        c = summary_counters(make_profile([]))
        assert c.pubs == 0 and c.citations_raw == 0 and c.retractions == 0 and c.preprints == 0
        assert c.median_raw is None and c.median_adjusted is None

    def test_flags(self):
        c = summary_counters(make_profile([
            make_pub(cites=1, retracted=True), make_pub(cites=2, preprint=True), make_pub(cites=3, preprint=True)
        ]))
        assert (c.retractions, c.preprints) == (1, 2)

    def test_adjusted(self):
        c = summary_counters(make_profile([make_pub(Role.FIRST, 10), make_pub(Role.SECOND, 4)]))
        assert c.citations_adjusted == pytest.approx(11.0)
        assert c.median_adjusted == pytest.approx(5.5)


class TestPercentages:
    def test_pub_symmetry(self):
        prof = make_profile([make_pub(Role.FIRST, 1)] * 2 + [make_pub(Role.CORRESPONDING, 1)] * 2)
        pct = contribution_percentages(prof)
        assert pct[Role.FIRST][0] == 50.0 and pct[Role.CORRESPONDING][0] == 50.0
        assert pct[Role.SECOND][0] == 0.0

    def test_citation_split(self):
        prof = make_profile([make_pub(Role.FIRST, 30), make_pub(Role.CORRESPONDING, 70)])
        pct = contribution_percentages(prof)
        assert pct[Role.FIRST][1] == pytest.approx(30.0)
        assert pct[Role.CORRESPONDING][1] == pytest.approx(70.0)

    def test_zero_citations(self):
        pct = contribution_percentages(make_profile([make_pub(Role.FIRST, 0)]))
        assert all(c is None for _, c in pct.values())
        assert pct[Role.FIRST][0] == 100.0

    def test_empty(self):
        assert all(v == (None, None) for v in contribution_percentages(make_profile([])).values())


class TestWindows:
    prof = make_profile([make_pub(year=y) for y in (2015, 2018, 2021)] + [make_pub(year=None)])

    def test_membership(self):
        assert len(filter_by_years(self.prof, 2016, 2021).publications) == 2

    def test_cumulative(self):
        assert len(filter_by_years(self.prof, career_start(self.prof), 2018).publications) == 2

    def test_full_career_keeps_undated(self):
        assert len(filter_by_years(self.prof, 2015, 2021).publications) == 4

    def test_inverted(self):
        with pytest.raises(InvalidWindow):
            filter_by_years(self.prof, 2021, 2015)


class TestPubsPerYear:
    def test_counts(self):
        prof = make_profile([make_pub(year=2020)] * 3 + [make_pub(year=2024)])
        got = pubs_per_year(prof, 2024)
        assert list(got) == list(range(2015, 2025))
        assert got[2020] == 3 and got[2024] == 1
        assert sum(got.values()) == 4
        assert pubs_per_year(prof) == got

    def test_empty(self):
        assert pubs_per_year(make_profile([]), 2024) == {y: 0 for y in range(2015, 2025)}
        assert pubs_per_year(make_profile([])) == {}

    def test_edge(self):
        prof = make_profile([make_pub(year=2020), make_pub(year=2024)])
        got = pubs_per_year(prof, 2020)
        assert 2024 not in got and sum(got.values()) == 1


profiles = st.lists(
    st.tuples(
        st.sampled_from(list(Role)),
        st.sampled_from(list(TeamKind)),
        st.integers(0, 200),
        st.one_of(st.none(), st.integers(2000, 2024)),
    ),
    max_size=40,
).map(lambda rows: make_profile([make_pub(r, c, year=y, team=t) for r, t, c, y in rows]))


@settings(max_examples=200)
@given(profiles)
def test_sh_dominance_and_bound(prof):
    sh = sh_index(prof)
    assert sh <= raw_h_index(prof)
    assert sh <= len(prof.publications)


@given(profiles, st.integers(2000, 2024))
def test_window_monotone(prof, start):
    prev = None
    for end in range(start, 2026):
        sub = filter_by_years(prof, start, end)
        cur = (len(sub.publications), summary_counters(sub).citations_raw, raw_h_index(sub), sh_index(sub))
        if prev is not None:
            assert all(c >= p for c, p in zip(cur, prev))
        prev = cur


@given(profiles.filter(lambda p: len(p.publications) > 0))
def test_percentage_closure(prof):
    pct = contribution_percentages(prof)
    assert abs(sum(p for p, _ in pct.values()) - 100.0) <= 0.1
    if sum(p.citations_raw for p in prof.publications):
        assert abs(sum(c for _, c in pct.values()) - 100.0) <= 0.1
