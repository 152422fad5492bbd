"""Flagging retracted work by fuzzy title lookup.

Titles on a profile rarely match a database character for character, so
lookups tolerate casing, punctuation, accents and small typos.
"""
import io

from shindex import load_retraction_db, match_retraction

DB = io.StringIO(
    "Title,RetractionNature\n"
    "Oncogenic signalling in zebrafish fin regeneration,Retraction\n"
    "Protein dynamics of the nuclear pore complex,Expression of concern\n"
    "A survey of graph neural networks for molecules,Retraction\n"
)
index = load_retraction_db(DB)

queries = [
    "ONCOGENIC SIGNALLING IN ZEBRAFISH FIN REGENERATION.",
    "Oncogénic signalling in zebrafish fin-regeneration",
    "A survey of graph neural netwroks for molecules",
    "A survey of graph neural networks for proteins",
    "Protein dynamics of the nuclear pore complex",
]
for q in queries:
    rec = match_retraction(q, index)
    verdict = "no match" if rec is None else f"{rec.nature} ({'flag' if rec.is_retraction else 'notice only'})"
    print(f"{q[:52]:<52} -> {verdict}")

# A lower threshold widens the net and lets the last near-miss through.
print(match_retraction(queries[3], index, fuzzy_threshold=0.8))
