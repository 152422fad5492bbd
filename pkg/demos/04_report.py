"""End to end: page in, report and charts out.

Runs the same pipeline as the command line tool and writes the outputs
into a temporary directory, then prints the Markdown summary.
"""
import tempfile
from pathlib import Path

from shindex.cli import run

FIX = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

with tempfile.TemporaryDirectory() as out:
    code = run([
        "analyze",
        "--input", str(FIX / "profile.html"),
        "--retractions", str(FIX / "retractions.csv"),
        "--quartiles", str(FIX / "quartiles.csv"),
        "--from", "2019",
        "--out", out,
    ])
    print("exit code", code)
    for f in sorted(Path(out).iterdir()):
        print(f"{f.name:<18} {f.stat().st_size:>6} bytes")
    print()
    print((Path(out) / "report.md").read_text())
