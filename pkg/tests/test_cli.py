import json

import pytest

from shindex.cli import EXIT_CONFIG, EXIT_DATASET, EXIT_INPUT, build_parser, resolve_config, run
from shindex.model import WeightConfig


def _args(fixtures, out, *extra):
    return [
        "analyze",
        "--input", str(fixtures / "profile.html"),
        "--retractions", str(fixtures / "retractions.csv"),
        "--quartiles", str(fixtures / "quartiles.csv"),
        "--out", str(out),
        *extra,
    ]


def test_happy_path(fixtures, tmp_path, capsys):
    assert run(_args(fixtures, tmp_path)) == 0
    assert sorted(p.name for p in tmp_path.iterdir()) == [
        "pubs_per_year.svg", "report.json", "report.md", "violins.svg",
    ]
    assert capsys.readouterr().out.strip() == "pubs=7 sh=4 h=5 retractions=1"
    assert (tmp_path / "report.json").read_text() == (fixtures / "expected_report.json").read_text()


def test_emit_subset(fixtures, tmp_path):
    assert run(_args(fixtures, tmp_path, "--emit", "md")) == 0
    assert [p.name for p in tmp_path.iterdir()] == ["report.md"]


def test_missing_input(tmp_path, capsys):
    missing = tmp_path / "nope.html"
    assert run(["analyze", "--input", str(missing), "--out", str(tmp_path / "o")]) == EXIT_INPUT
    assert str(missing) in capsys.readouterr().err
    assert not (tmp_path / "o").exists()


def test_malformed_input(tmp_path, capsys):
    bad = tmp_path / "bad.jsonl"
    bad.write_text('{"title": "a"}\nnot json\n')
    assert run(["analyze", "--input", str(bad), "--owner", "A", "--out", str(tmp_path)]) == EXIT_INPUT
    err = capsys.readouterr().err
    assert str(bad) in err and "line 2" in err


def test_page_without_table(tmp_path):
    page = tmp_path / "p.html"
    page.write_text("<html><body>nothing</body></html>")
    assert run(["analyze", "--input", str(page), "--owner", "A", "--out", str(tmp_path)]) == EXIT_INPUT


def test_malformed_dataset(fixtures, tmp_path, capsys):
    bad = tmp_path / "rw.csv"
    bad.write_text("Name,Kind\nx,y\n")
    args = ["analyze", "--input", str(fixtures / "profile.html"), "--retractions", str(bad), "--out", str(tmp_path / "o")]
    assert run(args) == EXIT_DATASET
    assert str(bad) in capsys.readouterr().err
    assert not (tmp_path / "o").exists()


def test_missing_dataset(fixtures, tmp_path):
    args = ["analyze", "--input", str(fixtures / "profile.html"), "--quartiles", str(tmp_path / "q.csv")]
    assert run(args + ["--out", str(tmp_path)]) == EXIT_DATASET


def test_inverted_window(fixtures, tmp_path, capsys):
    assert run(_args(fixtures, tmp_path, "--from", "2021", "--to", "2015")) == EXIT_CONFIG
    assert "--from" in capsys.readouterr().err


def test_weight_out_of_range(fixtures, tmp_path, capsys):
    wfile = tmp_path / "w.json"
    wfile.write_text('{"first": 1.5}')
    assert run(_args(fixtures, tmp_path / "o", "--weights", str(wfile))) == EXIT_CONFIG
    assert str(wfile) in capsys.readouterr().err
    assert run(_args(fixtures, tmp_path / "o", "--weight", "second=2")) == EXIT_CONFIG


def test_unknown_flag(fixtures, tmp_path):
    assert run(_args(fixtures, tmp_path, "--bogus")) == EXIT_CONFIG


def test_owner_required_for_records(tmp_path):
    recs = tmp_path / "r.jsonl"
    recs.write_text('{"title": "a", "authors": "A B"}\n')
    assert run(["analyze", "--input", str(recs), "--out", str(tmp_path)]) == EXIT_CONFIG


def test_jsonl_run_with_window(tmp_path):
    recs = tmp_path / "r.jsonl"
    lines = [
        {"title": f"P{i}", "authors": "A B, C D", "venue": "X", "year": 2010 + i, "citations": 10 * i}
        for i in range(6)
    ]
    recs.write_text("\n".join(json.dumps(x) for x in lines))
    out = tmp_path / "o"
    code = run(["analyze", "--input", str(recs), "--owner", "C D", "--from", "2012", "--to", "2014",
                "--emit", "json", "--out", str(out)])
    assert code == 0
    doc = json.loads((out / "report.json").read_text())
    assert doc["counters"]["pubs"] == 3
    assert doc["window"] == {"start": 2012, "end": 2014}
    assert list(doc["pubs_per_year"])[-1] == "2014"
    assert any("no retraction dataset" in w for w in doc["diagnostics"]["warnings"])


def test_exclude_retracted(fixtures, tmp_path):
    assert run(_args(fixtures, tmp_path, "--exclude-retracted", "--emit", "json")) == 0
    doc = json.loads((tmp_path / "report.json").read_text())
    assert doc["counters"]["retractions"] == 0
    assert doc["counters"]["pubs"] == 6


class TestResolveConfig:
    def _resolve(self, *argv):
        return resolve_config(build_parser().parse_args(["analyze", "--input", "x.html", *argv]))

    def test_defaults(self):
        _, weights = self._resolve()
        assert weights == WeightConfig()

    def test_file_merge(self, tmp_path):
        wfile = tmp_path / "w.json"
        wfile.write_text('{"coauthor_small": 0.3}')
        _, weights = self._resolve("--weights", str(wfile))
        assert weights.coauthor_small == 0.3 and weights.first == 0.9

    def test_flag_beats_file(self, tmp_path):
        wfile = tmp_path / "w.json"
        wfile.write_text('{"coauthor_small": 0.3, "small_team_max": 8}')
        _, weights = self._resolve("--weights", str(wfile), "--weight", "coauthor_small=0.2")
        assert weights.coauthor_small == 0.2 and weights.small_team_max == 8

    def test_bad_file(self, tmp_path):
        from shindex.cli import CliError

        wfile = tmp_path / "w.json"
        wfile.write_text('{"first": 1.5}')
        with pytest.raises(CliError) as err:
            self._resolve("--weights", str(wfile))
        assert err.value.code == EXIT_CONFIG
