"""Reading a saved profile page and reconciling the owner's name in each byline.

Uses the small fixture page shipped with the tests. Scholar's own totals
are read from the stats box so they can be compared with our recount.
"""
from pathlib import Path

from shindex import load_profile, match_owner, parse_author_string, to_records_json

PAGE = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "profile.html"

prof = load_profile(PAGE, owner_aliases=["G Sharma"])
print(f"{len(prof.publications)} rows; Scholar reports {prof.google_reported_total_citations} citations, "
      f"h = {prof.google_reported_h}")
for p in prof.publications:
    pos = match_owner(p.authors, prof.owner_aliases)
    where = f"position {pos}" if pos is not None else "not found"
    print(f"  [{where:>11}] {p.year}  {p.citations_raw:>3}  {p.title[:50]}")

# Names are matched loosely: initials, diacritics and case are forgiven.
byline = parse_author_string("J Müller, GK Sharma, P Ortiz")
for alias in ("Gaurav Sharma", "G. K. Sharma", "R Sharma"):
    print(f"{alias!r:>16} -> {match_owner(byline, [alias])}")

# Round trip through the neutral records format.
print(to_records_json(prof).splitlines()[0][:100], "...")
