"""How authorship position changes the citation credit a paper contributes.

Two researchers with the same raw citation record can end up with very
different weighted indices once their role on each paper is taken into account.
"""
from shindex import (
    Profile,
    Publication,
    WeightConfig,
    classify_profile,
    parse_author_string,
    raw_h_index,
    sh_index,
)

BYLINES = {
    "lead": [
        ("A Rao*, B Lee, C Diaz", 50),
        ("A Rao, B Lee", 30),
        ("B Lee, A Rao, C Diaz*", 22),
        ("A Rao, D Kim, E Wu, F Ho*", 12),
        ("C Diaz, A Rao", 8),
    ],
    "member": [
        ("B Lee, C Diaz, A Rao, D Kim, E Wu, F Ho, G Po*", 50),
        ("B Lee, C Diaz, D Kim, A Rao, E Wu*", 30),
        ("B Lee, C Diaz, D Kim, E Wu, A Rao, F Ho, G Po, ...", 22),
        ("B Lee, C Diaz, A Rao, D Kim*", 12),
        ("B Lee, C Diaz, D Kim, A Rao*", 8),
    ],
}


def build(rows):
    pubs = tuple(
        Publication(title=f"paper {i}", authors=parse_author_string(byline), citations_raw=c, year=2015 + i)
        for i, (byline, c) in enumerate(rows)
    )
    prof, _ = classify_profile(Profile(owner_aliases=("A Rao",), publications=pubs))
    return prof


for label, rows in BYLINES.items():
    prof = build(rows)
    print(f"== {label} ==")
    for p in prof.publications:
        print(f"  {p.citations_raw:>3} cites  {p.role.value:<13} weight {p.weight:.2f}  -> {p.citations_adjusted:5.1f}")
    print(f"  h = {raw_h_index(prof)}, Sh = {sh_index(prof)}\n")

# A stricter policy that gives large-team co-authors no credit at all.
strict = WeightConfig(coauthor_large=0.0, coauthor_small=0.1)
member = build(BYLINES["member"])
print(f"member under a stricter policy: Sh = {sh_index(member, strict)}")
